#ifndef TABLESENSE_PIPELINE_HPP
#define TABLESENSE_PIPELINE_HPP

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "tablesense/classifiers.hpp"
#include "tablesense/heuristics.hpp"
#include "tablesense/rdf.hpp"

namespace tablesense {

/*!
 * Everything process_source needs: the metric configuration the traces are
 * computed under, the two trained models (which must carry the same metric
 * configuration), the RDF namespace, and the fetch timeout.
 */
struct PipelineConfig {
    MetricConfig metric;
    Model genuineness_model;
    Model orientation_model;
    std::string base_uri = "http://example.org/tables#";
    std::chrono::milliseconds fetch_timeout{10000};
};

//! Throws IncompatibleModel unless the two models have the right tasks, a
//! 4-feature dimension, and the pipeline's metric configuration.
void validate(const PipelineConfig& cfg);

/*!
 * The disposition of one extracted table. Exactly the genuine tables carry
 * an orientation and a triple set; tables that could not even be normalized
 * carry no trace, only the failure message.
 */
struct ProcessedTable {
    TableSource source;
    std::optional<TableTrace> trace;
    bool genuine = false;
    std::optional<Orientation> orientation;
    std::optional<TripleSet> triples;
    std::string message;
};

/*!
 * Runs the whole chain on one document: fetch, extract leaf tables, and for
 * each table in document order normalize, compute the trace, decide
 * genuineness, and for genuine tables decide orientation and emit triples.
 * A table that fails normalization yields a non-genuine result carrying the
 * error message; it never aborts the remaining tables. Document-level
 * failures (network, decoding) abort the whole call with a SourceError.
 */
std::vector<ProcessedTable> process_source(const std::string& uri, const PipelineConfig& cfg);

//! One line of the JSON-lines processing report for a ProcessedTable.
std::string processed_table_to_json(const ProcessedTable& table);

//! "contacts.html" -> "contacts-table2.ttl": output file name for the triples
//! of one table, derived from the document's base name.
std::string turtle_file_name(const std::string& document_uri, std::size_t index);

//! The genuineness/orientation model pair trained from one corpus.
struct ModelPair {
    Model genuineness;
    Model orientation;
};

//! Settings for retraining after a relabel.
struct RetrainConfig {
    MetricConfig metric;
    Family family = Family::Knn;
    Hyperparams hyperparams;
    std::string models_dir; //!< persisted here when non-empty
};

/*!
 * Records a manual label for one table and rebuilds both models from the
 * updated corpus. The table must be extractable from its document (resolved
 * against the corpus file location; throws UnknownTable otherwise). The
 * corpus entry is appended or overwritten in place, the file is rewritten
 * (throws CorpusWriteError on I/O failure), and both models are retrained
 * from scratch on the new corpus — repeating an identical relabel therefore
 * leaves the corpus byte-identical and re-derives identical models. The
 * genuineness model trains on all samples, the orientation model on the
 * genuine ones only.
 */
ModelPair relabel_and_retrain(const TableSource& table, bool genuine,
                              std::optional<Orientation> orientation,
                              const std::string& corpus_path, const RetrainConfig& cfg);

} // namespace tablesense

#endif // TABLESENSE_PIPELINE_HPP
