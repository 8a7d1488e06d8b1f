#include "tablesense/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tablesense/errors.hpp"
#include "tablesense/heuristics.hpp"
#include "tablesense/html.hpp"

namespace tablesense {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string entry_context(const CorpusEntry& e) {
    return "line " + std::to_string(e.line) + " (" + e.document_path + ", table " +
           std::to_string(e.table_index) + ")";
}

/*!
 * Extracted grids for every entry, fetched document by document so each page
 * is parsed once. Problems are gathered per entry; when any exist the most
 * specific shared error type is thrown with all of them in the message.
 */
std::vector<std::pair<const CorpusEntry*, CellGrid>> load_grids(
    const std::string& corpus_path, const std::vector<CorpusEntry>& entries) {
    std::vector<std::string> missing_documents, missing_indexes, malformed;

    // Group entry pointers per document, preserving corpus order for output.
    std::map<std::string, std::vector<const CorpusEntry*>> by_document;
    for (const CorpusEntry& e : entries) by_document[e.document_path].push_back(&e);

    std::map<const CorpusEntry*, CellGrid> grids;
    for (auto& [document, doc_entries] : by_document) {
        std::vector<RawTable> tables;
        try {
            const SourceDocument source =
                fetch_source(resolve_corpus_document(corpus_path, document));
            tables = parse_document(source);
        } catch (const SourceError& e) {
            for (const CorpusEntry* entry : doc_entries) {
                missing_documents.push_back(entry_context(*entry) + ": " + e.what());
            }
            continue;
        }
        for (const CorpusEntry* entry : doc_entries) {
            if (entry->table_index >= tables.size()) {
                missing_indexes.push_back(entry_context(*entry) + ": document has " +
                                          std::to_string(tables.size()) + " leaf tables");
                continue;
            }
            try {
                grids.emplace(entry, normalize_grid(tables[entry->table_index]));
            } catch (const DegenerateTable& e) {
                malformed.push_back(entry_context(*entry) + ": " + e.what());
            }
        }
    }

    const auto join = [](const std::vector<std::string>& v) {
        std::string out;
        for (const std::string& s : v) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    };
    if (!missing_documents.empty() && missing_indexes.empty() && malformed.empty()) {
        throw MissingDocument(join(missing_documents));
    }
    if (missing_documents.empty() && !missing_indexes.empty() && malformed.empty()) {
        throw MissingTableIndex(join(missing_indexes));
    }
    if (!malformed.empty() && missing_documents.empty() && missing_indexes.empty()) {
        throw MalformedEntry(join(malformed));
    }
    if (!missing_documents.empty() || !missing_indexes.empty() || !malformed.empty()) {
        std::vector<std::string> all = missing_documents;
        all.insert(all.end(), missing_indexes.begin(), missing_indexes.end());
        all.insert(all.end(), malformed.begin(), malformed.end());
        throw CorpusError(join(all));
    }

    std::vector<std::pair<const CorpusEntry*, CellGrid>> out;
    out.reserve(entries.size());
    for (const CorpusEntry& e : entries) out.emplace_back(&e, std::move(grids.at(&e)));
    return out;
}

LabeledSample sample_from(const CorpusEntry& entry, const CellGrid& grid,
                          const MetricConfig& cfg) {
    LabeledSample sample;
    const TableTrace trace = compute_trace(grid, cfg);
    const auto features = trace.features();
    sample.features.assign(features.begin(), features.end());
    sample.genuine = entry.genuine;
    sample.orientation = entry.orientation;
    return sample;
}

json entry_to_json(const CorpusEntry& e) {
    json j;
    j["document_path"] = e.document_path;
    j["table_index"] = e.table_index;
    j["genuine"] = e.genuine;
    if (e.orientation.has_value()) j["orientation"] = to_string(*e.orientation);
    return j;
}

std::string cell_method(const BenchmarkCell& cell) {
    std::string method = to_string(cell.family) + " / " + to_string(cell.metric.kind);
    if (cell.metric.modified) method += " (modified)";
    return method;
}

} // namespace

std::string resolve_corpus_document(const std::string& corpus_path,
                                    const std::string& document_path) {
    if (document_path.rfind("http://", 0) == 0 || document_path.rfind("https://", 0) == 0 ||
        fs::path(document_path).is_absolute()) {
        return document_path;
    }
    return (fs::path(corpus_path).parent_path() / document_path).string();
}

std::vector<CorpusEntry> read_corpus_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("cannot open corpus file: " + path);

    std::vector<CorpusEntry> entries;
    std::vector<std::string> errors;
    std::set<std::pair<std::string, std::size_t>> seen;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
        const auto bad = [&](const std::string& why) {
            errors.push_back("line " + std::to_string(line_no) + ": " + why);
        };
        if (j.is_discarded() || !j.is_object()) {
            bad("not a JSON object");
            continue;
        }
        if (!j.contains("document_path") || !j["document_path"].is_string() ||
            j["document_path"].get<std::string>().empty()) {
            bad("missing or empty document_path");
            continue;
        }
        if (!j.contains("table_index") || !j["table_index"].is_number_unsigned()) {
            bad("table_index must be a non-negative integer");
            continue;
        }
        if (!j.contains("genuine") || !j["genuine"].is_boolean()) {
            bad("genuine must be a boolean");
            continue;
        }

        CorpusEntry e;
        e.document_path = j["document_path"].get<std::string>();
        e.table_index = j["table_index"].get<std::size_t>();
        e.genuine = j["genuine"].get<bool>();
        e.line = line_no;

        if (j.contains("orientation")) {
            if (!j["orientation"].is_string()) {
                bad("orientation must be a string");
                continue;
            }
            try {
                e.orientation = orientation_from_string(j["orientation"].get<std::string>());
            } catch (const InvalidConfig& ex) {
                bad(ex.what());
                continue;
            }
        }
        if (e.genuine != e.orientation.has_value()) {
            bad("orientation must be present exactly when genuine is true");
            continue;
        }
        if (!seen.emplace(e.document_path, e.table_index).second) {
            bad("duplicate entry for (" + e.document_path + ", " +
                std::to_string(e.table_index) + ")");
            continue;
        }
        entries.push_back(std::move(e));
    }

    if (!errors.empty()) {
        std::string joined;
        for (const std::string& s : errors) {
            if (!joined.empty()) joined += "; ";
            joined += s;
        }
        throw MalformedEntry(joined);
    }
    return entries;
}

void write_corpus_file(const std::string& path, const std::vector<CorpusEntry>& entries) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CorpusWriteError("cannot open corpus file for writing: " + path);
    for (const CorpusEntry& e : entries) {
        out << entry_to_json(e).dump() << '\n';
    }
    out.flush();
    if (!out) throw CorpusWriteError("write failed for corpus file: " + path);
}

std::vector<LabeledSample> load_corpus(const std::string& path, const MetricConfig& cfg) {
    const std::vector<CorpusEntry> entries = read_corpus_file(path);
    const auto grids = load_grids(path, entries);

    std::vector<LabeledSample> samples;
    samples.reserve(grids.size());
    for (const auto& [entry, grid] : grids) {
        samples.push_back(sample_from(*entry, grid, cfg));
    }
    return samples;
}

BenchmarkReport run_benchmark(const std::string& corpus_path, std::size_t folds, unsigned seed) {
    const std::vector<CorpusEntry> entries = read_corpus_file(corpus_path);
    const auto grids = load_grids(corpus_path, entries);

    BenchmarkReport report;
    report.folds = folds;
    report.seed = seed;

    const MetricKind kinds[] = {MetricKind::Levenshtein, MetricKind::JaroWinkler,
                                MetricKind::NGram};
    const Family families[] = {Family::NaiveBayes, Family::DecisionTree, Family::Knn,
                               Family::Svm};

    for (Task task : {Task::Genuineness, Task::Orientation}) {
        for (MetricKind kind : kinds) {
            for (bool modified : {false, true}) {
                MetricConfig cfg;
                cfg.kind = kind;
                cfg.modified = modified;

                std::vector<LabeledSample> samples;
                for (const auto& [entry, grid] : grids) {
                    if (task == Task::Orientation && !entry->genuine) continue;
                    samples.push_back(sample_from(*entry, grid, cfg));
                }

                for (Family family : families) {
                    Hyperparams hp;
                    hp.seed = seed;
                    BenchmarkCell cell;
                    cell.task = task;
                    cell.family = family;
                    cell.metric = cfg;
                    cell.report = cross_validate(family, task, samples, folds, hp, seed);
                    report.cells.push_back(std::move(cell));
                }
            }
        }
    }
    report.overall = overall_performance(report);
    return report;
}

double overall_performance(const BenchmarkReport& report) {
    double best_f = -1.0;
    double best_p = -1.0;
    for (const BenchmarkCell& cell : report.cells) {
        if (cell.task == Task::Genuineness) {
            best_f = std::max(best_f, cell.report.f_measure);
        } else {
            best_p = std::max(best_p, cell.report.precision);
        }
    }
    if (best_f < 0.0 || best_p < 0.0) {
        throw EmptyReport("report needs at least one genuineness and one orientation cell");
    }
    return best_f * best_p;
}

std::string display_overall(double overall) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", overall);
    return buf;
}

std::string report_to_json(const BenchmarkReport& report) {
    json j;
    j["folds"] = report.folds;
    j["seed"] = report.seed;
    j["overall_performance"] = report.overall;
    j["overall_performance_display"] = display_overall(report.overall);
    j["cells"] = json::array();
    for (const BenchmarkCell& cell : report.cells) {
        json c;
        c["task"] = to_string(cell.task);
        c["family"] = to_string(cell.family);
        c["metric"] = to_string(cell.metric.kind);
        c["modified"] = cell.metric.modified;
        c["precision"] = cell.report.precision;
        c["recall"] = cell.report.recall;
        c["f_measure"] = cell.report.f_measure;
        c["accuracy"] = cell.report.accuracy;
        c["tp"] = cell.report.tp;
        c["fp"] = cell.report.fp;
        c["fn"] = cell.report.fn;
        c["tn"] = cell.report.tn;
        j["cells"].push_back(std::move(c));
    }
    return j.dump(2) + "\n";
}

std::string report_to_text(const BenchmarkReport& report) {
    std::ostringstream out;
    for (Task task : {Task::Genuineness, Task::Orientation}) {
        out << "== " << to_string(task) << " (" << report.folds << "-fold, seed " << report.seed
            << ") ==\n";
        char line[160];
        std::snprintf(line, sizeof(line), "%-36s %9s %9s %9s %9s\n", "method", "precision",
                      "recall", "f-measure", "accuracy");
        out << line;
        for (const BenchmarkCell& cell : report.cells) {
            if (cell.task != task) continue;
            std::snprintf(line, sizeof(line), "%-36s %9.4f %9.4f %9.4f %9.4f\n",
                          cell_method(cell).c_str(), cell.report.precision, cell.report.recall,
                          cell.report.f_measure, cell.report.accuracy);
            out << line;
        }
        out << '\n';
    }
    out << "overall performance: " << display_overall(report.overall) << " ("
        << report.overall << ")\n";
    return out.str();
}

} // namespace tablesense
