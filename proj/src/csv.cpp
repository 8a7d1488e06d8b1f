#include "tablesense/csv.hpp"

#include "tablesense/errors.hpp"

namespace tablesense {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\r\n") != std::string::npos;
}

void append_field(std::string& out, const std::string& field) {
    if (!needs_quoting(field)) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

} // namespace

std::string write_csv(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const std::vector<std::string>& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            append_field(out, row[i]);
        }
        out += "\r\n";
    }
    return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool after_quote = false;   // the current field was quoted and is now closed
    bool field_started = false; // true once the current record has any content

    const auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        after_quote = false;
    };
    const auto end_record = [&] {
        if (field_started || !row.empty()) {
            end_field();
            rows.push_back(std::move(row));
            row.clear();
        }
        field_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                    after_quote = true;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (after_quote || !field.empty()) {
                throw SourceError("CSV: quote inside an unquoted field");
            }
            in_quotes = true;
            field_started = true;
            break;
        case ',':
            end_field();
            field_started = true;
            break;
        case '\r':
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
            break;
        case '\n':
            end_record();
            break;
        default:
            if (after_quote) throw SourceError("CSV: data after a closing quote");
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) throw SourceError("CSV: unterminated quoted field");
    end_record();
    return rows;
}

} // namespace tablesense
