#ifndef TABLESENSE_TEXT_METRICS_HPP
#define TABLESENSE_TEXT_METRICS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace tablesense {

enum class MetricKind { Levenshtein, JaroWinkler, NGram };

const char* to_string(MetricKind kind);
std::optional<MetricKind> metric_kind_from_string(std::string_view name);

/*!
 * Configuration for one similarity metric, including the two cell-content
 * modifications (digit equalization and the fixed cap for long strings).
 * The key names below are the ones accepted verbatim in the CLI config file.
 */
struct MetricConfig {
    MetricKind kind = MetricKind::Levenshtein;
    bool modified = false;
    int ngram_n = 3;
    int long_string_word_limit = 3;
    double long_string_cap = 0.5;
    double jw_prefix_scale = 0.1;
    int jw_max_prefix = 4;

    bool operator==(const MetricConfig&) const = default;
};

//! Throws InvalidConfig when a field is out of its documented range.
void validate(const MetricConfig& cfg);

/*!
 * Exact edit distance (insertions, deletions, substitutions, unit cost) over
 * Unicode scalar values. Symmetric; zero iff the inputs are equal.
 */
std::size_t levenshtein_distance(std::string_view a, std::string_view b);

/*!
 * Levenshtein distance rescaled to a similarity: 1 - d / max(|a|,|b|).
 * Both strings empty compares as 1.0.
 */
double levenshtein_similarity(std::string_view a, std::string_view b);

/*!
 * Jaro similarity (match window floor(max/2)-1, transpositions counted as
 * half the mismatched matched positions) with the Winkler common-prefix
 * boost of length <= cfg.jw_max_prefix scaled by cfg.jw_prefix_scale.
 * Returns 1.0 iff a == b.
 */
double jaro_winkler(std::string_view a, std::string_view b, const MetricConfig& cfg = {});

/*!
 * Dice coefficient over character n-gram multisets with n-1 boundary markers
 * on each end: 2|G(a) n G(b)| / (|G(a)| + |G(b)|). Grams containing a
 * boundary marker never match across distinct strings, so only interior
 * grams contribute to the overlap while the padded counts set the scale.
 * Identical strings compare as 1.0; exactly one empty string as 0.0.
 */
double ngram_similarity(std::string_view a, std::string_view b, const MetricConfig& cfg = {});

/*!
 * Replaces every ASCII decimal digit with '0'. Length is preserved, so two
 * numbers of the same magnitude canonicalize to the same string while the
 * digit count still separates magnitudes.
 */
std::string canonicalize_cell(std::string_view s);

/*!
 * Metric dispatch with the modification switch. Unmodified: the base metric
 * on the raw strings. Modified: both strings are canonicalized first; when
 * either side has more than cfg.long_string_word_limit whitespace-delimited
 * words the result is exactly cfg.long_string_cap, otherwise the base metric
 * runs on the canonicalized strings.
 */
double similarity(std::string_view a, std::string_view b, const MetricConfig& cfg);

} // namespace tablesense

#endif // TABLESENSE_TEXT_METRICS_HPP
