#ifndef TABLESENSE_CORPUS_HPP
#define TABLESENSE_CORPUS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tablesense/classifiers.hpp"

namespace tablesense {

/*!
 * One labeled table in a corpus file. The orientation label exists exactly
 * when the table is genuine. `document_path` is resolved relative to the
 * directory containing the corpus file (absolute paths and http(s) URIs are
 * used as-is).
 */
struct CorpusEntry {
    std::string document_path;
    std::size_t table_index = 0;
    bool genuine = false;
    std::optional<Orientation> orientation;
    std::size_t line = 0; //!< 1-based line in the corpus file; 0 when synthesized
};

//! Parses a JSON-lines corpus file. Throws MalformedEntry (with line numbers)
//! for invalid lines, duplicate (document, index) pairs, or label/orientation
//! inconsistencies; CorpusError when the file cannot be read.
std::vector<CorpusEntry> read_corpus_file(const std::string& path);

//! Resolves a corpus document reference: http(s) URIs and absolute paths are
//! returned unchanged, relative paths are anchored at the corpus file's
//! directory.
std::string resolve_corpus_document(const std::string& corpus_path,
                                    const std::string& document_path);

//! Writes entries one JSON object per line. Byte-stable for identical input
//! (key order and number formatting are fixed). Throws CorpusWriteError.
void write_corpus_file(const std::string& path, const std::vector<CorpusEntry>& entries);

/*!
 * Loads every entry: fetches the document, extracts its leaf tables, computes
 * the trace of the referenced table under `cfg`, and pairs it with the labels.
 * Collects problems across ALL entries before failing, so one bad line does
 * not mask the rest; the thrown error (MissingDocument, MissingTableIndex, or
 * MalformedEntry) lists every unresolvable entry with its line number.
 */
std::vector<LabeledSample> load_corpus(const std::string& path, const MetricConfig& cfg);

//! One benchmark configuration cell: a task scored under one classifier
//! family and one metric configuration.
struct BenchmarkCell {
    Task task = Task::Genuineness;
    Family family = Family::NaiveBayes;
    MetricConfig metric;
    EvalReport report;
};

/*!
 * The full evaluation grid: for each task, 4 families x 3 metric kinds x
 * 2 modified-flags = 24 cells, plus the headline product score.
 */
struct BenchmarkReport {
    std::vector<BenchmarkCell> cells;
    std::size_t folds = 0;
    unsigned seed = 0;
    double overall = 0.0;
};

/*!
 * Cross-validates every configuration cell on the corpus: genuineness over
 * all samples, orientation over the genuine samples only. Deterministic for
 * a fixed seed. Throws TooFewSamples when a class cannot populate every fold
 * and corpus/loading errors from load_corpus.
 */
BenchmarkReport run_benchmark(const std::string& corpus_path, std::size_t folds, unsigned seed);

//! Best genuineness F-measure times best orientation precision.
//! Throws EmptyReport unless the report has at least one cell of each task.
double overall_performance(const BenchmarkReport& report);

//! Two-decimal display form of the overall score (e.g. 0.7742 -> "0.77").
std::string display_overall(double overall);

//! Machine-readable report (stable key order and formatting).
std::string report_to_json(const BenchmarkReport& report);

//! Aligned plain-text table: method / precision / recall / F-measure /
//! accuracy per cell, grouped by task, with the overall score at the end.
std::string report_to_text(const BenchmarkReport& report);

} // namespace tablesense

#endif // TABLESENSE_CORPUS_HPP
