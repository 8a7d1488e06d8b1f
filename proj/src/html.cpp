#include "tablesense/html.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "tablesense/errors.hpp"
#include "unicode.hpp"

namespace tablesense {

namespace {

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

// The named entities that actually show up in table markup; numeric
// references cover the rest. Unknown names are kept literally.
const std::map<std::string, char32_t>& named_entities() {
    static const std::map<std::string, char32_t> table = {
        {"amp", '&'},      {"lt", '<'},       {"gt", '>'},      {"quot", '"'},
        {"apos", '\''},    {"nbsp", 0xA0},    {"copy", 0xA9},   {"reg", 0xAE},
        {"trade", 0x2122}, {"deg", 0xB0},     {"middot", 0xB7}, {"bull", 0x2022},
        {"ndash", 0x2013}, {"mdash", 0x2014}, {"hellip", 0x2026},
        {"laquo", 0xAB},   {"raquo", 0xBB},   {"lsquo", 0x2018}, {"rsquo", 0x2019},
        {"ldquo", 0x201C}, {"rdquo", 0x201D}, {"times", 0xD7},  {"divide", 0xF7},
        {"plusmn", 0xB1},  {"sect", 0xA7},    {"para", 0xB6},   {"euro", 0x20AC},
        {"pound", 0xA3},   {"yen", 0xA5},     {"cent", 0xA2},   {"frac12", 0xBD},
        {"frac14", 0xBC},  {"sup2", 0xB2},    {"sup3", 0xB3},   {"eacute", 0xE9},
        {"egrave", 0xE8},  {"agrave", 0xE0},  {"ccedil", 0xE7}, {"uuml", 0xFC},
        {"ouml", 0xF6},    {"auml", 0xE4},    {"szlig", 0xDF},  {"ntilde", 0xF1},
        {"aring", 0xE5},   {"oslash", 0xF8},  {"shy", 0xAD},
    };
    return table;
}

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out.push_back(text[i++]);
            continue;
        }
        const size_t semi = text.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back(text[i++]);
            continue;
        }
        const std::string_view name = text.substr(i + 1, semi - i - 1);
        char32_t cp = 0;
        if (!name.empty() && name[0] == '#') {
            const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
            const std::string digits(name.substr(hex ? 2 : 1));
            char* end = nullptr;
            const unsigned long v = std::strtoul(digits.c_str(), &end, hex ? 16 : 10);
            if (end && *end == '\0' && !digits.empty()) cp = static_cast<char32_t>(v);
        } else {
            const auto it = named_entities().find(to_lower_ascii(name));
            if (it != named_entities().end()) cp = it->second;
        }
        if (cp != 0) {
            unicode::append_utf8(out, cp);
            i = semi + 1;
        } else {
            out.push_back(text[i++]);
        }
    }
    return out;
}

struct Tag {
    std::string name;                          // lowercase
    bool closing = false;
    std::map<std::string, std::string> attrs;  // lowercase keys, decoded values
};

// Tolerant tag scanner. Returns the position one past '>' (or EOF) and fills
// *tag; returns npos-style failure by leaving tag->name empty for markup that
// is not a tag at all.
size_t scan_tag(std::string_view html, size_t pos, Tag* tag) {
    size_t i = pos + 1;  // past '<'
    tag->closing = false;
    tag->name.clear();
    tag->attrs.clear();

    if (i < html.size() && html[i] == '/') {
        tag->closing = true;
        ++i;
    }
    const size_t name_start = i;
    while (i < html.size() &&
           (std::isalnum(static_cast<unsigned char>(html[i])) || html[i] == ':' || html[i] == '-'))
        ++i;
    if (i == name_start) return pos + 1;  // stray '<'
    tag->name = to_lower_ascii(html.substr(name_start, i - name_start));

    // attributes
    while (i < html.size() && html[i] != '>') {
        while (i < html.size() && (std::isspace(static_cast<unsigned char>(html[i])) || html[i] == '/'))
            ++i;
        if (i >= html.size() || html[i] == '>') break;
        const size_t key_start = i;
        while (i < html.size() && html[i] != '=' && html[i] != '>' && html[i] != '/' &&
               !std::isspace(static_cast<unsigned char>(html[i])))
            ++i;
        std::string key = to_lower_ascii(html.substr(key_start, i - key_start));
        std::string value;
        while (i < html.size() && std::isspace(static_cast<unsigned char>(html[i]))) ++i;
        if (i < html.size() && html[i] == '=') {
            ++i;
            while (i < html.size() && std::isspace(static_cast<unsigned char>(html[i]))) ++i;
            if (i < html.size() && (html[i] == '"' || html[i] == '\'')) {
                const char quote = html[i++];
                const size_t value_start = i;
                while (i < html.size() && html[i] != quote) ++i;
                value = std::string(html.substr(value_start, i - value_start));
                if (i < html.size()) ++i;
            } else {
                const size_t value_start = i;
                while (i < html.size() && html[i] != '>' &&
                       !std::isspace(static_cast<unsigned char>(html[i])))
                    ++i;
                value = std::string(html.substr(value_start, i - value_start));
            }
        }
        if (!key.empty()) tag->attrs[key] = decode_entities(value);
    }
    return i < html.size() ? i + 1 : html.size();
}

int span_attr(const Tag& tag, const char* key) {
    const auto it = tag.attrs.find(key);
    if (it == tag.attrs.end()) return 1;
    char* end = nullptr;
    const long v = std::strtol(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || v < 1) return 1;
    return static_cast<int>(std::min(v, 1000L));  // browser-style cap
}

// One <table> element being assembled.
struct TableBuild {
    std::vector<std::vector<RawCell>> rows;
    bool has_nested = false;
    bool in_row = false;
    bool in_cell = false;
    RawCell cell;
    size_t order = 0;

    void open_row() {
        close_cell();
        rows.emplace_back();
        in_row = true;
    }
    void close_row() {
        close_cell();
        in_row = false;
    }
    void open_cell(const Tag& tag) {
        if (!in_row) open_row();
        close_cell();
        cell = RawCell{};
        cell.row_span = span_attr(tag, "rowspan");
        cell.col_span = span_attr(tag, "colspan");
        in_cell = true;
    }
    void close_cell() {
        if (!in_cell) return;
        rows.back().push_back(std::move(cell));
        cell = RawCell{};
        in_cell = false;
    }
};

} // namespace

std::string detect_meta_charset(std::string_view head) {
    // look at the first 1024 bytes the way browsers do
    const std::string haystack = to_lower_ascii(head.substr(0, std::min<size_t>(head.size(), 1024)));
    size_t pos = 0;
    while ((pos = haystack.find("<meta", pos)) != std::string::npos) {
        const size_t end = haystack.find('>', pos);
        const std::string_view meta(haystack.data() + pos,
                                    (end == std::string::npos ? haystack.size() : end) - pos);
        size_t cs = meta.find("charset");
        if (cs != std::string_view::npos) {
            cs += 7;
            while (cs < meta.size() && (meta[cs] == ' ' || meta[cs] == '=' || meta[cs] == '"' ||
                                        meta[cs] == '\''))
                ++cs;
            size_t stop = cs;
            while (stop < meta.size() && meta[stop] != '"' && meta[stop] != '\'' &&
                   meta[stop] != ' ' && meta[stop] != ';' && meta[stop] != '/' && meta[stop] != '>')
                ++stop;
            if (stop > cs) return unicode::normalize_charset_name(meta.substr(cs, stop - cs));
        }
        pos = end == std::string::npos ? haystack.size() : end;
    }
    return {};
}

std::vector<RawTable> parse_document(const SourceDocument& doc) {
    if (doc.body.empty()) throw EmptyDocument("document body is empty: " + doc.uri);

    std::string html;
    if (!unicode::transcode_to_utf8(doc.body, doc.charset, &html)) {
        throw DecodeError("cannot decode '" + doc.uri + "' as " +
                          (doc.charset.empty() ? std::string("utf-8") : doc.charset));
    }

    std::vector<TableBuild> stack;
    std::vector<TableBuild> finished;
    size_t next_order = 0;
    bool saw_element = false;

    const auto append_text = [&](std::string_view text) {
        if (stack.empty() || !stack.back().in_cell) return;  // stray text is dropped
        stack.back().cell.text += decode_entities(text);
    };
    const auto finish_table = [&](TableBuild&& t) {
        t.close_row();
        finished.push_back(std::move(t));
    };

    size_t i = 0;
    while (i < html.size()) {
        if (html[i] != '<') {
            const size_t next = html.find('<', i);
            append_text(html.substr(i, (next == std::string::npos ? html.size() : next) - i));
            i = next == std::string::npos ? html.size() : next;
            continue;
        }
        // comments, doctype, processing instructions
        if (html.compare(i, 4, "<!--") == 0) {
            const size_t end = html.find("-->", i + 4);
            i = end == std::string::npos ? html.size() : end + 3;
            continue;
        }
        if (i + 1 < html.size() && (html[i + 1] == '!' || html[i + 1] == '?')) {
            const size_t end = html.find('>', i);
            i = end == std::string::npos ? html.size() : end + 1;
            continue;
        }

        Tag tag;
        const size_t after = scan_tag(html, i, &tag);
        if (tag.name.empty()) {  // lone '<' treated as text
            append_text(html.substr(i, 1));
            i = after;
            continue;
        }
        i = after;
        saw_element = true;

        // raw-text elements: skip to the closing tag
        if (!tag.closing && (tag.name == "script" || tag.name == "style" || tag.name == "textarea")) {
            const std::string close = "</" + tag.name;
            size_t end = i;
            while (end < html.size()) {
                end = html.find('<', end);
                if (end == std::string::npos) break;
                if (html.size() - end >= close.size() &&
                    iequals(std::string_view(html).substr(end, close.size()), close))
                    break;
                ++end;
            }
            if (end == std::string::npos || end >= html.size()) {
                i = html.size();
            } else {
                const size_t gt = html.find('>', end);
                i = gt == std::string::npos ? html.size() : gt + 1;
            }
            continue;
        }

        if (tag.name == "table") {
            if (!tag.closing) {
                for (auto& open : stack) open.has_nested = true;
                TableBuild t;
                t.order = next_order++;
                stack.push_back(std::move(t));
            } else if (!stack.empty()) {
                TableBuild t = std::move(stack.back());
                stack.pop_back();
                finish_table(std::move(t));
            }
        } else if (tag.name == "tr") {
            if (!stack.empty()) {
                if (!tag.closing)
                    stack.back().open_row();
                else
                    stack.back().close_row();
            }
        } else if (tag.name == "td" || tag.name == "th") {
            if (!stack.empty()) {
                if (!tag.closing)
                    stack.back().open_cell(tag);
                else
                    stack.back().close_cell();
            }
        } else if (tag.name == "br" || tag.name == "p" || tag.name == "div" || tag.name == "li") {
            append_text(" ");  // block-ish breaks keep words apart
        }
        // everything else (caption, thead, tbody, a, b, span, ...) carries no
        // grid structure; its tags vanish and its text flows through
    }
    while (!stack.empty()) {  // auto-close at EOF
        TableBuild t = std::move(stack.back());
        stack.pop_back();
        finish_table(std::move(t));
    }

    if (!saw_element) throw EmptyDocument("no element content in: " + doc.uri);

    std::sort(finished.begin(), finished.end(),
              [](const TableBuild& a, const TableBuild& b) { return a.order < b.order; });

    std::vector<RawTable> leaves;
    for (auto& t : finished) {
        if (t.has_nested) continue;
        RawTable raw;
        raw.document_uri = doc.uri;
        raw.index = leaves.size();
        raw.rows = std::move(t.rows);
        leaves.push_back(std::move(raw));
    }
    return leaves;
}

CellGrid normalize_grid(const RawTable& raw) {
    const size_t n = raw.rows.size();

    // place cells honoring spans; rowspan overhang past the last row is cut
    std::vector<std::vector<std::optional<std::string>>> grid(n);
    for (size_t r = 0; r < n; ++r) {
        size_t col = 0;
        for (const RawCell& cell : raw.rows[r]) {
            while (col < grid[r].size() && grid[r][col].has_value()) ++col;
            const size_t rs = std::min<size_t>(static_cast<size_t>(cell.row_span), n - r);
            const size_t cs = static_cast<size_t>(cell.col_span);
            for (size_t dr = 0; dr < rs; ++dr) {
                auto& row = grid[r + dr];
                if (row.size() < col + cs) row.resize(col + cs);
                for (size_t dc = 0; dc < cs; ++dc) row[col + dc] = cell.text;
            }
            col += cs;
        }
    }

    size_t m = 0;
    for (const auto& row : grid) m = std::max(m, row.size());
    if (n < 2 || m < 2) {
        throw DegenerateTable("table " + raw.document_uri + "#" + std::to_string(raw.index) +
                              " expands to " + std::to_string(n) + "x" + std::to_string(m) +
                              ", need at least 2x2");
    }

    CellGrid out;
    out.source = TableSource{raw.document_uri, raw.index};
    out.cells.resize(n, std::vector<std::string>(m));
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < grid[r].size(); ++c) {
            if (grid[r][c]) out.cells[r][c] = unicode::collapse_whitespace(*grid[r][c]);
        }
    }
    return out;
}

} // namespace tablesense
