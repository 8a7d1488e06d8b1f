#include "tablesense/pipeline.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "tablesense/corpus.hpp"
#include "tablesense/errors.hpp"

namespace tablesense {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::size_t kTraceDimension = 4;

void persist_model(const std::string& dir, const std::string& name, const Model& model) {
    const fs::path path = fs::path(dir) / (name + ".model");
    std::error_code ec;
    fs::create_directories(fs::path(dir), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ModelError("cannot write model file: " + path.string());
    out << write_model(model);
    out.flush();
    if (!out) throw ModelError("write failed for model file: " + path.string());
}

} // namespace

void validate(const PipelineConfig& cfg) {
    if (cfg.genuineness_model.task != Task::Genuineness) {
        throw IncompatibleModel("genuineness model has task " +
                                to_string(cfg.genuineness_model.task));
    }
    if (cfg.orientation_model.task != Task::Orientation) {
        throw IncompatibleModel("orientation model has task " +
                                to_string(cfg.orientation_model.task));
    }
    if (cfg.genuineness_model.dimension != kTraceDimension ||
        cfg.orientation_model.dimension != kTraceDimension) {
        throw IncompatibleModel("models must consume 4-component table traces");
    }
    if (!(cfg.genuineness_model.metric == cfg.metric) ||
        !(cfg.orientation_model.metric == cfg.metric)) {
        throw IncompatibleModel(
            "models were trained under a different metric configuration than the pipeline");
    }
}

std::vector<ProcessedTable> process_source(const std::string& uri, const PipelineConfig& cfg) {
    validate(cfg);
    validate_base_uri(cfg.base_uri);

    const SourceDocument document = fetch_source(uri, cfg.fetch_timeout);
    const std::vector<RawTable> tables = parse_document(document);

    std::vector<ProcessedTable> results;
    results.reserve(tables.size());
    for (const RawTable& raw : tables) {
        ProcessedTable result;
        result.source = {raw.document_uri, raw.index};

        CellGrid grid;
        try {
            grid = normalize_grid(raw);
        } catch (const DegenerateTable& e) {
            result.message = std::string("table skipped: ") + e.what();
            results.push_back(std::move(result));
            continue;
        }

        const TableTrace trace = compute_trace(grid, cfg.metric);
        result.trace = trace;
        const auto feature_array = trace.features();
        const FeatureVector features(feature_array.begin(), feature_array.end());

        if (!predict(cfg.genuineness_model, features)) {
            result.message = "table classified as non-genuine; no knowledge extracted";
            results.push_back(std::move(result));
            continue;
        }

        result.genuine = true;
        const Orientation orientation = predict(cfg.orientation_model, features)
                                            ? Orientation::Horizontal
                                            : Orientation::Vertical;
        result.orientation = orientation;
        result.triples = to_triples(grid, orientation, cfg.base_uri);
        result.message = "genuine table, " + to_string(orientation) + " orientation, " +
                         std::to_string(result.triples->triples.size()) + " triples";
        results.push_back(std::move(result));
    }
    return results;
}

std::string processed_table_to_json(const ProcessedTable& table) {
    json j;
    j["document_uri"] = table.source.document_uri;
    j["table_index"] = table.source.index;
    j["verdict"] = table.genuine ? "genuine" : "non-genuine";
    if (table.orientation.has_value()) j["orientation"] = to_string(*table.orientation);
    if (table.trace.has_value()) {
        j["trace"] = {{"max_sim_hor", table.trace->max_sim_hor},
                      {"max_sim_vert", table.trace->max_sim_vert},
                      {"avg_sim_hor", table.trace->avg_sim_hor},
                      {"avg_sim_vert", table.trace->avg_sim_vert}};
    }
    if (table.triples.has_value()) j["triple_count"] = table.triples->triples.size();
    j["message"] = table.message;
    return j.dump();
}

std::string turtle_file_name(const std::string& document_uri, std::size_t index) {
    // Base name without extension or query string, slugified for safety.
    std::string name = document_uri;
    const std::size_t query = name.find_first_of("?#");
    if (query != std::string::npos) name.erase(query);
    const std::size_t slash = name.find_last_of('/');
    if (slash != std::string::npos) name.erase(0, slash + 1);
    const std::size_t dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name.erase(dot);

    std::string slug = slugify(name);
    if (slug.empty()) slug = "document";
    return slug + "-table" + std::to_string(index) + ".ttl";
}

ModelPair relabel_and_retrain(const TableSource& table, bool genuine,
                              std::optional<Orientation> orientation,
                              const std::string& corpus_path, const RetrainConfig& cfg) {
    if (genuine != orientation.has_value()) {
        throw InvalidConfig("orientation label must be supplied exactly for genuine tables");
    }

    // The table must actually exist before its label may enter the corpus.
    std::vector<RawTable> tables;
    try {
        const SourceDocument document =
            fetch_source(resolve_corpus_document(corpus_path, table.document_uri),
                         std::chrono::milliseconds(10000));
        tables = parse_document(document);
    } catch (const SourceError& e) {
        throw UnknownTable("document not loadable: " + std::string(e.what()));
    }
    if (table.index >= tables.size()) {
        throw UnknownTable("document " + table.document_uri + " has " +
                           std::to_string(tables.size()) + " leaf tables, index " +
                           std::to_string(table.index) + " does not exist");
    }
    try {
        normalize_grid(tables[table.index]);
    } catch (const DegenerateTable& e) {
        throw UnknownTable("table cannot be normalized: " + std::string(e.what()));
    }

    // Overwrite the matching entry or append a new one, then rewrite the file.
    std::vector<CorpusEntry> entries;
    if (fs::exists(corpus_path)) entries = read_corpus_file(corpus_path);

    bool found = false;
    for (CorpusEntry& e : entries) {
        if (e.document_path == table.document_uri && e.table_index == table.index) {
            e.genuine = genuine;
            e.orientation = orientation;
            found = true;
            break;
        }
    }
    if (!found) {
        CorpusEntry e;
        e.document_path = table.document_uri;
        e.table_index = table.index;
        e.genuine = genuine;
        e.orientation = orientation;
        entries.push_back(std::move(e));
    }
    write_corpus_file(corpus_path, entries);

    // Full retrain from the updated corpus.
    const std::vector<LabeledSample> samples = load_corpus(corpus_path, cfg.metric);
    std::vector<LabeledSample> genuine_samples;
    for (const LabeledSample& s : samples) {
        if (s.genuine) genuine_samples.push_back(s);
    }

    ModelPair pair;
    pair.genuineness = train(cfg.family, Task::Genuineness, samples, cfg.hyperparams);
    pair.genuineness.metric = cfg.metric;
    pair.orientation = train(cfg.family, Task::Orientation, genuine_samples, cfg.hyperparams);
    pair.orientation.metric = cfg.metric;

    if (!cfg.models_dir.empty()) {
        persist_model(cfg.models_dir, "genuineness", pair.genuineness);
        persist_model(cfg.models_dir, "orientation", pair.orientation);
    }
    return pair;
}

} // namespace tablesense
