// Command-line front end: extraction, traces, training, classification,
// the full processing pipeline, benchmarking, and corpus relabeling.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tablesense/classifiers.hpp"
#include "tablesense/corpus.hpp"
#include "tablesense/csv.hpp"
#include "tablesense/errors.hpp"
#include "tablesense/heuristics.hpp"
#include "tablesense/html.hpp"
#include "tablesense/pipeline.hpp"
#include "tablesense/rdf.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tablesense;

namespace {

// ---- config file ------------------------------------------------------------

//! Parses the key=value config file. Empty lines and #-comments are skipped;
//! unknown keys are rejected so typos never pass silently.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    static const std::set<std::string> known = {
        "kind",           "modified",        "ngram_n",       "long_string_word_limit",
        "long_string_cap", "jw_prefix_scale", "jw_max_prefix", "base_uri",
        "fetch_timeout"};

    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file: " + path);

    std::map<std::string, std::string> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto trim = [](std::string s) {
            const auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
            while (!s.empty() && is_ws(s.front())) s.erase(s.begin());
            while (!s.empty() && is_ws(s.back())) s.pop_back();
            return s;
        };
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidConfig(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known.count(key)) {
            throw InvalidConfig(path + ":" + std::to_string(line_no) + ": unknown key: " + key);
        }
        values[key] = value;
    }
    return values;
}

long parse_integer(const std::string& value, const std::string& what) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw InvalidConfig(what + " must be an integer, got: " + value);
    }
    return v;
}

double parse_number(const std::string& value, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw InvalidConfig(what + " must be a number, got: " + value);
    }
    return v;
}

bool parse_boolean(const std::string& value, const std::string& what) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw InvalidConfig(what + " must be a boolean, got: " + value);
}

// ---- option bundles ---------------------------------------------------------

//! Metric flags shared by several subcommands, resolved with the precedence
//! explicit flag > config file > built-in default.
struct MetricOptions {
    std::string kind = "levenshtein";
    bool modified = false;
    std::size_t ngram_n = 3;
    std::size_t word_limit = 3;
    double cap = 0.5;
    double jw_scale = 0.1;
    std::size_t jw_prefix = 4;

    CLI::Option* kind_opt = nullptr;
    CLI::Option* modified_opt = nullptr;
    CLI::Option* ngram_opt = nullptr;
    CLI::Option* word_limit_opt = nullptr;
    CLI::Option* cap_opt = nullptr;
    CLI::Option* jw_scale_opt = nullptr;
    CLI::Option* jw_prefix_opt = nullptr;

    void attach(CLI::App* sub) {
        kind_opt = sub->add_option("--metric", kind,
                                   "string metric: levenshtein, jaro-winkler, or ngram");
        modified_opt = sub->add_flag("--modified,!--no-modified", modified,
                                     "apply the digit-equalization and long-string rules");
        ngram_opt = sub->add_option("--ngram-n", ngram_n, "gram length for the ngram metric");
        word_limit_opt = sub->add_option("--long-string-word-limit", word_limit,
                                         "strings with more words score a fixed cap");
        cap_opt = sub->add_option("--long-string-cap", cap, "fixed score for long strings");
        jw_scale_opt = sub->add_option("--jw-prefix-scale", jw_scale,
                                       "common-prefix bonus scale");
        jw_prefix_opt = sub->add_option("--jw-max-prefix", jw_prefix,
                                        "longest prefix eligible for the bonus");
    }

    MetricConfig resolve(const std::map<std::string, std::string>& file) const {
        MetricConfig cfg;
        if (const auto it = file.find("kind"); it != file.end()) {
            const auto parsed = metric_kind_from_string(it->second);
            if (!parsed) throw InvalidConfig("unknown metric kind: " + it->second);
            cfg.kind = *parsed;
        }
        if (const auto it = file.find("modified"); it != file.end()) {
            cfg.modified = parse_boolean(it->second, "modified");
        }
        if (const auto it = file.find("ngram_n"); it != file.end()) {
            cfg.ngram_n = static_cast<std::size_t>(parse_integer(it->second, "ngram_n"));
        }
        if (const auto it = file.find("long_string_word_limit"); it != file.end()) {
            cfg.long_string_word_limit =
                static_cast<std::size_t>(parse_integer(it->second, "long_string_word_limit"));
        }
        if (const auto it = file.find("long_string_cap"); it != file.end()) {
            cfg.long_string_cap = parse_number(it->second, "long_string_cap");
        }
        if (const auto it = file.find("jw_prefix_scale"); it != file.end()) {
            cfg.jw_prefix_scale = parse_number(it->second, "jw_prefix_scale");
        }
        if (const auto it = file.find("jw_max_prefix"); it != file.end()) {
            cfg.jw_max_prefix =
                static_cast<std::size_t>(parse_integer(it->second, "jw_max_prefix"));
        }

        if (kind_opt->count()) {
            const auto parsed = metric_kind_from_string(kind);
            if (!parsed) throw InvalidConfig("unknown metric kind: " + kind);
            cfg.kind = *parsed;
        }
        if (modified_opt->count()) cfg.modified = modified;
        if (ngram_opt->count()) cfg.ngram_n = ngram_n;
        if (word_limit_opt->count()) cfg.long_string_word_limit = word_limit;
        if (cap_opt->count()) cfg.long_string_cap = cap;
        if (jw_scale_opt->count()) cfg.jw_prefix_scale = jw_scale;
        if (jw_prefix_opt->count()) cfg.jw_max_prefix = jw_prefix;

        validate(cfg);
        return cfg;
    }
};

//! --base-uri / --timeout with the same precedence rules.
struct PipelineOptions {
    std::string base_uri = "http://example.org/tables#";
    long timeout_ms = 10000;
    CLI::Option* base_opt = nullptr;
    CLI::Option* timeout_opt = nullptr;

    void attach(CLI::App* sub) {
        base_opt = sub->add_option("--base-uri", base_uri, "namespace for generated IRIs");
        timeout_opt = sub->add_option("--timeout", timeout_ms, "fetch timeout in milliseconds");
    }

    std::string resolve_base(const std::map<std::string, std::string>& file) const {
        std::string value = "http://example.org/tables#";
        if (const auto it = file.find("base_uri"); it != file.end()) value = it->second;
        if (base_opt->count()) value = base_uri;
        return value;
    }

    std::chrono::milliseconds resolve_timeout(const std::map<std::string, std::string>& file) const {
        long ms = 10000;
        if (const auto it = file.find("fetch_timeout"); it != file.end()) {
            ms = parse_integer(it->second, "fetch_timeout");
        }
        if (timeout_opt->count()) ms = timeout_ms;
        if (ms <= 0) throw InvalidConfig("fetch timeout must be positive");
        return std::chrono::milliseconds(ms);
    }
};

// ---- small helpers ----------------------------------------------------------

std::string read_text_file(const std::string& path, const char* category) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        const std::string message = std::string("cannot read ") + category + ": " + path;
        if (std::string(category) == "model file") throw ModelError(message);
        throw SourceError(message);
    }
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path.string());
    out << text;
    out.flush();
    if (!out) throw Error("write failed: " + path.string());
}

Model load_model_file(const std::string& path) {
    return read_model(read_text_file(path, "model file"));
}

//! Builds a rectangular grid from already-parsed CSV rows.
CellGrid grid_from_rows(std::vector<std::vector<std::string>> rows, const std::string& name) {
    std::size_t width = 0;
    for (const auto& row : rows) width = std::max(width, row.size());
    for (auto& row : rows) row.resize(width);
    if (rows.size() < 2 || width < 2) {
        throw DegenerateTable("CSV grid needs at least 2x2 cells: " + name);
    }
    CellGrid grid;
    grid.cells = std::move(rows);
    grid.source = {name, 0};
    return grid;
}

json trace_to_json(const TableTrace& trace) {
    return {{"max_sim_hor", trace.max_sim_hor},
            {"max_sim_vert", trace.max_sim_vert},
            {"avg_sim_hor", trace.avg_sim_hor},
            {"avg_sim_vert", trace.avg_sim_vert}};
}

Hyperparams make_hyperparams(unsigned seed, std::size_t knn_k) {
    Hyperparams hp;
    hp.seed = seed;
    hp.knn_k = knn_k;
    return hp;
}

// ---- subcommand bodies --------------------------------------------------------

void cmd_extract(const std::string& source, const std::string& out_dir,
                 std::chrono::milliseconds timeout) {
    const SourceDocument document = fetch_source(source, timeout);
    const std::vector<RawTable> tables = parse_document(document);

    fs::create_directories(out_dir);
    json manifest;
    manifest["source"] = source;
    manifest["tables"] = json::array();

    for (const RawTable& raw : tables) {
        json entry;
        entry["index"] = raw.index;
        try {
            const CellGrid grid = normalize_grid(raw);
            const std::string file = [&] {
                std::string n = turtle_file_name(source, raw.index);
                n.replace(n.size() - 4, 4, ".csv");
                return n;
            }();
            write_text_file(fs::path(out_dir) / file, write_csv(grid.cells));
            entry["rows"] = grid.rows();
            entry["cols"] = grid.cols();
            entry["file"] = file;
        } catch (const DegenerateTable& e) {
            entry["error"] = e.what();
            std::cerr << "table " << raw.index << " skipped: " << e.what() << "\n";
        }
        manifest["tables"].push_back(std::move(entry));
    }

    const std::string text = manifest.dump(2) + "\n";
    write_text_file(fs::path(out_dir) / "manifest.json", text);
    std::cout << text;
}

void cmd_trace(const std::string& source, const MetricConfig& cfg,
               std::chrono::milliseconds timeout) {
    const SourceDocument document = fetch_source(source, timeout);
    for (const RawTable& raw : parse_document(document)) {
        try {
            const TableTrace trace = compute_trace(normalize_grid(raw), cfg);
            json j = trace_to_json(trace);
            j["document_uri"] = raw.document_uri;
            j["table_index"] = raw.index;
            std::cout << j.dump() << "\n";
        } catch (const DegenerateTable& e) {
            std::cerr << "table " << raw.index << " skipped: " << e.what() << "\n";
        }
    }
}

void cmd_train(const std::string& corpus, Task task, Family family, const MetricConfig& cfg,
               const Hyperparams& hp, const std::string& out_file) {
    std::vector<LabeledSample> samples = load_corpus(corpus, cfg);
    if (task == Task::Orientation) {
        std::erase_if(samples, [](const LabeledSample& s) { return !s.genuine; });
    }
    Model model = train(family, task, samples, hp);
    model.metric = cfg;

    std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
    if (!out) throw ModelError("cannot write model file: " + out_file);
    out << write_model(model);
    out.flush();
    if (!out) throw ModelError("write failed for model file: " + out_file);

    json j;
    j["model"] = out_file;
    j["task"] = to_string(task);
    j["family"] = to_string(family);
    j["samples"] = samples.size();
    std::cout << j.dump() << "\n";
}

void cmd_classify(const std::string& model_path, const std::string& csv_path) {
    const Model model = load_model_file(model_path);
    const CellGrid grid = grid_from_rows(parse_csv(read_text_file(csv_path, "CSV file")),
                                         csv_path);
    const TableTrace trace = compute_trace(grid, model.metric);
    const auto feature_array = trace.features();
    const FeatureVector features(feature_array.begin(), feature_array.end());
    const bool positive = predict(model, features);

    json j;
    j["file"] = csv_path;
    j["task"] = to_string(model.task);
    j["verdict"] = label_name(model.task, positive);
    j["trace"] = trace_to_json(trace);
    std::cout << j.dump() << "\n";
}

void cmd_run(const std::string& source, const std::string& models_dir,
             const std::string& base_uri, const std::string& out_dir,
             std::chrono::milliseconds timeout) {
    PipelineConfig cfg;
    cfg.genuineness_model = load_model_file((fs::path(models_dir) / "genuineness.model").string());
    cfg.orientation_model = load_model_file((fs::path(models_dir) / "orientation.model").string());
    cfg.metric = cfg.genuineness_model.metric;
    cfg.base_uri = base_uri;
    cfg.fetch_timeout = timeout;

    const std::vector<ProcessedTable> results = process_source(source, cfg);
    fs::create_directories(out_dir);
    for (const ProcessedTable& result : results) {
        if (result.triples.has_value()) {
            const std::string file = turtle_file_name(source, result.source.index);
            write_text_file(fs::path(out_dir) / file, serialize_turtle(*result.triples));
        }
        std::cout << processed_table_to_json(result) << "\n";
    }
}

void cmd_benchmark(const std::string& corpus, std::size_t folds, unsigned seed, bool text) {
    const BenchmarkReport report = run_benchmark(corpus, folds, seed);
    std::cout << (text ? report_to_text(report) : report_to_json(report));
}

void cmd_relabel(const std::string& corpus, const std::string& document, std::size_t index,
                 bool genuine, const std::optional<Orientation>& orientation, Family family,
                 const MetricConfig& cfg, const Hyperparams& hp, const std::string& models_dir) {
    RetrainConfig retrain;
    retrain.metric = cfg;
    retrain.family = family;
    retrain.hyperparams = hp;
    retrain.models_dir = models_dir;

    relabel_and_retrain({document, index}, genuine, orientation, corpus, retrain);

    json j;
    j["document"] = document;
    j["table_index"] = index;
    j["genuine"] = genuine;
    if (orientation.has_value()) j["orientation"] = to_string(*orientation);
    if (!models_dir.empty()) {
        j["genuineness_model"] = (fs::path(models_dir) / "genuineness.model").string();
        j["orientation_model"] = (fs::path(models_dir) / "orientation.model").string();
    }
    std::cout << j.dump() << "\n";
}

void cmd_export_models(const std::string& corpus, const std::string& models_dir, Family family,
                       const MetricConfig& cfg, const Hyperparams& hp) {
    std::vector<LabeledSample> samples = load_corpus(corpus, cfg);
    std::vector<LabeledSample> genuine;
    for (const LabeledSample& s : samples) {
        if (s.genuine) genuine.push_back(s);
    }

    Model genuineness = train(family, Task::Genuineness, samples, hp);
    genuineness.metric = cfg;
    Model orientation = train(family, Task::Orientation, genuine, hp);
    orientation.metric = cfg;

    fs::create_directories(models_dir);
    const fs::path g_path = fs::path(models_dir) / "genuineness.model";
    const fs::path o_path = fs::path(models_dir) / "orientation.model";
    const auto persist = [](const fs::path& path, const Model& model) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw ModelError("cannot write model file: " + path.string());
        out << write_model(model);
        out.flush();
        if (!out) throw ModelError("write failed for model file: " + path.string());
    };
    persist(g_path, genuineness);
    persist(o_path, orientation);

    json j;
    j["genuineness_model"] = g_path.string();
    j["orientation_model"] = o_path.string();
    j["samples"] = samples.size();
    std::cout << j.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tablesense: find tables in web pages, classify them, and emit RDF"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path,
                   "key=value config file (TABLESENSE_CONFIG is the fallback)");

    // Defer all work into callbacks so parsing errors surface before any I/O.
    const auto file_config = [&]() -> std::map<std::string, std::string> {
        std::string path = config_path;
        if (path.empty()) {
            if (const char* env = std::getenv("TABLESENSE_CONFIG"); env && *env) path = env;
        }
        if (path.empty()) return {};
        return load_config_file(path);
    };

    // extract
    auto* extract = app.add_subcommand("extract", "write each leaf table as CSV plus a manifest");
    std::string ex_source, ex_out = ".";
    PipelineOptions ex_pipe;
    extract->add_option("--source", ex_source, "HTTP(S) URI or local file")->required();
    extract->add_option("--out", ex_out, "output directory");
    ex_pipe.attach(extract);
    extract->callback([&] {
        const auto file = file_config();
        cmd_extract(ex_source, ex_out, ex_pipe.resolve_timeout(file));
    });

    // trace
    auto* trace = app.add_subcommand("trace", "print the four heuristic values per table");
    std::string tr_source;
    MetricOptions tr_metric;
    PipelineOptions tr_pipe;
    trace->add_option("--source", tr_source, "HTTP(S) URI or local file")->required();
    tr_metric.attach(trace);
    tr_pipe.attach(trace);
    trace->callback([&] {
        const auto file = file_config();
        cmd_trace(tr_source, tr_metric.resolve(file), tr_pipe.resolve_timeout(file));
    });

    // train
    auto* train_cmd = app.add_subcommand("train", "train one model from a labeled corpus");
    std::string t_corpus, t_out = "model.txt", t_task = "genuineness", t_family = "knn";
    unsigned t_seed = 42;
    std::size_t t_k = 5;
    MetricOptions t_metric;
    train_cmd->add_option("--corpus", t_corpus, "JSON-lines corpus file")->required();
    train_cmd->add_option("--task", t_task, "genuineness or orientation");
    train_cmd->add_option("--family", t_family, "naive-bayes, tree, knn, or svm");
    train_cmd->add_option("--out", t_out, "model file to write");
    train_cmd->add_option("--seed", t_seed, "training seed");
    train_cmd->add_option("--k", t_k, "neighbors for knn");
    t_metric.attach(train_cmd);
    train_cmd->callback([&] {
        const auto file = file_config();
        cmd_train(t_corpus, task_from_string(t_task), family_from_string(t_family),
                  t_metric.resolve(file), make_hyperparams(t_seed, t_k), t_out);
    });

    // classify
    auto* classify = app.add_subcommand("classify", "classify one CSV grid with a saved model");
    std::string c_model, c_csv;
    classify->add_option("--model", c_model, "model file")->required();
    classify->add_option("--csv", c_csv, "CSV grid to classify")->required();
    classify->callback([&] { cmd_classify(c_model, c_csv); });

    // run
    auto* run = app.add_subcommand("run", "full pipeline: extract, classify, emit Turtle");
    std::string r_source, r_models = "models", r_out = "out";
    PipelineOptions r_pipe;
    run->add_option("--source", r_source, "HTTP(S) URI or local file")->required();
    run->add_option("--models", r_models, "directory holding genuineness.model/orientation.model");
    run->add_option("--out", r_out, "directory for .ttl output");
    r_pipe.attach(run);
    run->callback([&] {
        const auto file = file_config();
        cmd_run(r_source, r_models, r_pipe.resolve_base(file), r_out,
                r_pipe.resolve_timeout(file));
    });

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "cross-validate every configuration cell");
    std::string b_corpus;
    std::size_t b_folds = 5;
    unsigned b_seed = 42;
    bool b_text = false;
    bench->add_option("--corpus", b_corpus, "JSON-lines corpus file")->required();
    bench->add_option("--folds", b_folds, "cross-validation folds");
    bench->add_option("--seed", b_seed, "shuffling seed");
    bench->add_flag("--text", b_text, "aligned table instead of JSON");
    bench->callback([&] { cmd_benchmark(b_corpus, b_folds, b_seed, b_text); });

    // relabel
    auto* relabel = app.add_subcommand("relabel", "record a manual label and retrain the models");
    std::string rl_corpus, rl_document, rl_orientation, rl_family = "knn", rl_models;
    std::size_t rl_index = 0, rl_k = 5;
    unsigned rl_seed = 42;
    bool rl_genuine = false, rl_non_genuine = false;
    MetricOptions rl_metric;
    relabel->add_option("--corpus", rl_corpus, "JSON-lines corpus file")->required();
    relabel->add_option("--source", rl_document, "document path as recorded in the corpus")
        ->required();
    relabel->add_option("--index", rl_index, "leaf-table index in the document")->required();
    auto* g_flag = relabel->add_flag("--genuine", rl_genuine, "mark the table genuine");
    auto* ng_flag =
        relabel->add_flag("--non-genuine", rl_non_genuine, "mark the table non-genuine");
    g_flag->excludes(ng_flag);
    ng_flag->excludes(g_flag);
    relabel->add_option("--orientation", rl_orientation, "horizontal or vertical (genuine only)");
    relabel->add_option("--family", rl_family, "classifier family for the retrain");
    relabel->add_option("--models", rl_models, "directory to persist the retrained models");
    relabel->add_option("--seed", rl_seed, "training seed");
    relabel->add_option("--k", rl_k, "neighbors for knn");
    rl_metric.attach(relabel);
    relabel->callback([&] {
        if (rl_genuine == rl_non_genuine) {
            throw CLI::ValidationError("relabel", "pass exactly one of --genuine/--non-genuine");
        }
        std::optional<Orientation> orientation;
        if (!rl_orientation.empty()) orientation = orientation_from_string(rl_orientation);
        const auto file = file_config();
        cmd_relabel(rl_corpus, rl_document, rl_index, rl_genuine, orientation,
                    family_from_string(rl_family), rl_metric.resolve(file),
                    make_hyperparams(rl_seed, rl_k), rl_models);
    });

    // export-models
    auto* export_models =
        app.add_subcommand("export-models", "train and persist the genuineness/orientation pair");
    std::string em_corpus, em_models = "models", em_family = "knn";
    unsigned em_seed = 42;
    std::size_t em_k = 5;
    MetricOptions em_metric;
    export_models->add_option("--corpus", em_corpus, "JSON-lines corpus file")->required();
    export_models->add_option("--models", em_models, "output directory");
    export_models->add_option("--family", em_family, "classifier family");
    export_models->add_option("--seed", em_seed, "training seed");
    export_models->add_option("--k", em_k, "neighbors for knn");
    em_metric.attach(export_models);
    export_models->callback([&] {
        const auto file = file_config();
        cmd_export_models(em_corpus, em_models, family_from_string(em_family),
                          em_metric.resolve(file), make_hyperparams(em_seed, em_k));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const SourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CorpusError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const TrainingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
