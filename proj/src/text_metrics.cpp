#include "tablesense/text_metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "tablesense/errors.hpp"
#include "unicode.hpp"

namespace tablesense {

namespace {

using unicode::decode_utf8;

std::size_t levenshtein_cp(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
    if (a.empty()) return b.size();
    if (b.empty()) return a.size();

    // two-row DP over the shorter string
    const auto& longer = a.size() >= b.size() ? a : b;
    const auto& shorter = a.size() >= b.size() ? b : a;

    std::vector<std::size_t> prev(shorter.size() + 1);
    std::vector<std::size_t> cur(shorter.size() + 1);
    std::iota(prev.begin(), prev.end(), std::size_t{0});

    for (std::size_t i = 1; i <= longer.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= shorter.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (longer[i - 1] == shorter[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[shorter.size()];
}

double jaro(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
    if (a == b) return 1.0;
    if (a.empty() || b.empty()) return 0.0;

    const std::size_t la = a.size();
    const std::size_t lb = b.size();
    const std::size_t half = std::max(la, lb) / 2;
    const std::size_t window = half > 0 ? half - 1 : 0;

    std::vector<bool> matched_a(la, false), matched_b(lb, false);
    std::size_t matches = 0;
    for (std::size_t i = 0; i < la; ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        const std::size_t hi = std::min(lb, i + window + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (!matched_b[j] && a[i] == b[j]) {
                matched_a[i] = matched_b[j] = true;
                ++matches;
                break;
            }
        }
    }
    if (matches == 0) return 0.0;

    // transpositions: mismatched positions between the two matched sequences
    std::size_t mismatches = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < la; ++i) {
        if (!matched_a[i]) continue;
        while (!matched_b[j]) ++j;
        if (a[i] != b[j]) ++mismatches;
        ++j;
    }
    const double t = mismatches / 2.0;
    const double m = static_cast<double>(matches);
    return (m / la + m / lb + (m - t) / m) / 3.0;
}

} // namespace

const char* to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::Levenshtein: return "levenshtein";
        case MetricKind::JaroWinkler: return "jaro-winkler";
        case MetricKind::NGram: return "ngram";
    }
    return "levenshtein";
}

std::optional<MetricKind> metric_kind_from_string(std::string_view name) {
    if (name == "levenshtein") return MetricKind::Levenshtein;
    if (name == "jaro-winkler" || name == "jaro_winkler") return MetricKind::JaroWinkler;
    if (name == "ngram" || name == "n-gram" || name == "n-grams" || name == "ngrams")
        return MetricKind::NGram;
    return std::nullopt;
}

void validate(const MetricConfig& cfg) {
    if (cfg.ngram_n < 1) throw InvalidConfig("ngram_n must be >= 1");
    if (cfg.long_string_word_limit < 1)
        throw InvalidConfig("long_string_word_limit must be >= 1");
    if (cfg.long_string_cap < 0.0 || cfg.long_string_cap > 1.0)
        throw InvalidConfig("long_string_cap must be in [0,1]");
    if (cfg.jw_prefix_scale < 0.0 || cfg.jw_prefix_scale > 0.25)
        throw InvalidConfig("jw_prefix_scale must be in [0,0.25]");
    if (cfg.jw_max_prefix < 1) throw InvalidConfig("jw_max_prefix must be >= 1");
}

std::size_t levenshtein_distance(std::string_view a, std::string_view b) {
    return levenshtein_cp(decode_utf8(a), decode_utf8(b));
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
    const auto ca = decode_utf8(a);
    const auto cb = decode_utf8(b);
    const std::size_t longest = std::max(ca.size(), cb.size());
    if (longest == 0) return 1.0;
    return 1.0 - static_cast<double>(levenshtein_cp(ca, cb)) / static_cast<double>(longest);
}

double jaro_winkler(std::string_view a, std::string_view b, const MetricConfig& cfg) {
    const auto ca = decode_utf8(a);
    const auto cb = decode_utf8(b);
    const double j = jaro(ca, cb);

    std::size_t prefix = 0;
    const std::size_t limit =
        std::min({ca.size(), cb.size(), static_cast<std::size_t>(cfg.jw_max_prefix)});
    while (prefix < limit && ca[prefix] == cb[prefix]) ++prefix;

    return j + static_cast<double>(prefix) * cfg.jw_prefix_scale * (1.0 - j);
}

double ngram_similarity(std::string_view a, std::string_view b, const MetricConfig& cfg) {
    if (a == b) return 1.0;
    if (a.empty() != b.empty()) return 0.0;

    const auto ca = decode_utf8(a);
    const auto cb = decode_utf8(b);
    const auto n = static_cast<std::size_t>(cfg.ngram_n);

    // interior grams as codepoint windows; multiset counts
    const auto grams = [n](const std::vector<char32_t>& s) {
        std::map<std::vector<char32_t>, int> counts;
        if (s.size() >= n) {
            for (std::size_t i = 0; i + n <= s.size(); ++i) {
                ++counts[std::vector<char32_t>(s.begin() + i, s.begin() + i + n)];
            }
        }
        return counts;
    };

    const auto ga = grams(ca);
    const auto gb = grams(cb);
    std::size_t shared = 0;
    for (const auto& [gram, count] : ga) {
        const auto it = gb.find(gram);
        if (it != gb.end()) shared += static_cast<std::size_t>(std::min(count, it->second));
    }

    const double total = static_cast<double>(ca.size() + n - 1) +
                         static_cast<double>(cb.size() + n - 1);
    return 2.0 * static_cast<double>(shared) / total;
}

std::string canonicalize_cell(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= '0' && c <= '9') c = '0';
    }
    return out;
}

double similarity(std::string_view a, std::string_view b, const MetricConfig& cfg) {
    std::string ca, cb;
    std::string_view va = a, vb = b;
    if (cfg.modified) {
        ca = canonicalize_cell(a);
        cb = canonicalize_cell(b);
        if (unicode::count_words(ca) > cfg.long_string_word_limit ||
            unicode::count_words(cb) > cfg.long_string_word_limit) {
            return cfg.long_string_cap;
        }
        va = ca;
        vb = cb;
    }
    switch (cfg.kind) {
        case MetricKind::Levenshtein: return levenshtein_similarity(va, vb);
        case MetricKind::JaroWinkler: return jaro_winkler(va, vb, cfg);
        case MetricKind::NGram: return ngram_similarity(va, vb, cfg);
    }
    return 0.0;
}

} // namespace tablesense
