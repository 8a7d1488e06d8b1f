#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tablesense/corpus.hpp"
#include "tablesense/errors.hpp"

#include "support.hpp"

#include <json.hpp>

#include <algorithm>
#include <string>
#include <vector>

using namespace tablesense;
using testsupport::TempDir;

namespace {

const char* kPage = R"(<html><head><meta charset="utf-8"></head><body>
<table>
  <tr><th>City</th><th>Code</th><th>Zone</th></tr>
  <tr><td>Berlin</td><td>030</td><td>north</td></tr>
  <tr><td>Hamburg</td><td>040</td><td>north</td></tr>
  <tr><td>Munich</td><td>089</td><td>south</td></tr>
</table>
<table>
  <tr><td>Home</td><td>About</td></tr>
  <tr><td>News</td><td>Contact</td></tr>
</table>
</body></html>
)";

std::string write_mini_corpus(const TempDir& dir) {
    testsupport::write_file(dir.path() / "pages" / "page.html", kPage);
    const std::string corpus =
        R"({"document_path": "pages/page.html", "table_index": 0, "genuine": true, "orientation": "horizontal"})"
        "\n"
        R"({"document_path": "pages/page.html", "table_index": 1, "genuine": false})"
        "\n";
    testsupport::write_file(dir.path() / "corpus.jsonl", corpus);
    return dir.str("corpus.jsonl");
}

} // namespace

TEST_CASE("corpus lines parse into labeled entries") {
    TempDir dir;
    const auto path = write_mini_corpus(dir);
    const auto entries = read_corpus_file(path);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].document_path == "pages/page.html");
    CHECK(entries[0].table_index == 0);
    CHECK(entries[0].genuine);
    CHECK(entries[0].orientation == Orientation::Horizontal);
    CHECK(entries[0].line == 1);
    CHECK(!entries[1].genuine);
    CHECK(!entries[1].orientation.has_value());
    CHECK(entries[1].line == 2);
}

TEST_CASE("corpus parsing rejects malformed lines with their line numbers") {
    TempDir dir;
    const auto check_message = [&dir](const std::string& line, const std::string& needle) {
        testsupport::write_file(dir.path() / "bad.jsonl", line + "\n");
        try {
            read_corpus_file(dir.str("bad.jsonl"));
            FAIL_CHECK("expected MalformedEntry for: " << line);
        } catch (const MalformedEntry& e) {
            const std::string what = e.what();
            CHECK(what.find("line 1") != std::string::npos);
            CHECK(what.find(needle) != std::string::npos);
        }
    };

    check_message("{broken", "line 1");
    check_message(R"("just a string")", "object");
    check_message(R"({"table_index": 0, "genuine": true})", "document_path");
    check_message(R"({"document_path": "p.html", "genuine": true})", "table_index");
    check_message(R"({"document_path": "p.html", "table_index": -1, "genuine": true})",
                  "table_index");
    check_message(R"({"document_path": "p.html", "table_index": 0})", "genuine");
    check_message(
        R"({"document_path": "p.html", "table_index": 0, "genuine": true})",
        "orientation");  // genuine requires an orientation label
    check_message(
        R"({"document_path": "p.html", "table_index": 0, "genuine": false, "orientation": "horizontal"})",
        "orientation");  // and non-genuine forbids one
    check_message(
        R"({"document_path": "p.html", "table_index": 0, "genuine": true, "orientation": "slanted"})",
        "orientation");

    // Duplicate (document, index) pairs are flagged on the second line.
    const std::string entry =
        R"({"document_path": "p.html", "table_index": 0, "genuine": false})";
    testsupport::write_file(dir.path() / "dup.jsonl", entry + "\n" + entry + "\n");
    CHECK_THROWS_AS(read_corpus_file(dir.str("dup.jsonl")), MalformedEntry);

    CHECK_THROWS_AS(read_corpus_file(dir.str("missing.jsonl")), CorpusError);
}

TEST_CASE("document references resolve against the corpus location") {
    CHECK(resolve_corpus_document("/data/corpus.jsonl", "pages/a.html") == "/data/pages/a.html");
    CHECK(resolve_corpus_document("corpus.jsonl", "a.html") == "a.html");
    CHECK(resolve_corpus_document("/data/corpus.jsonl", "/abs/a.html") == "/abs/a.html");
    CHECK(resolve_corpus_document("/data/corpus.jsonl", "http://host/a.html") ==
          "http://host/a.html");
    CHECK(resolve_corpus_document("/data/corpus.jsonl", "https://host/a.html") ==
          "https://host/a.html");
}

TEST_CASE("corpus files round-trip byte-identically") {
    TempDir dir;
    const auto path = write_mini_corpus(dir);
    const auto entries = read_corpus_file(path);

    const auto copy = dir.str("copy.jsonl");
    write_corpus_file(copy, entries);
    const auto reread = read_corpus_file(copy);
    REQUIRE(reread.size() == entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        CHECK(reread[i].document_path == entries[i].document_path);
        CHECK(reread[i].table_index == entries[i].table_index);
        CHECK(reread[i].genuine == entries[i].genuine);
        CHECK(reread[i].orientation == entries[i].orientation);
    }

    // Writing the same entries again produces the same bytes.
    const auto twice = dir.str("twice.jsonl");
    write_corpus_file(twice, reread);
    CHECK(testsupport::read_file(copy) == testsupport::read_file(twice));

    CHECK_THROWS_AS(write_corpus_file(dir.str("no/such/dir/out.jsonl"), entries),
                    CorpusWriteError);
}

TEST_CASE("loading a corpus computes one sample per entry") {
    TempDir dir;
    const auto path = write_mini_corpus(dir);
    const auto samples = load_corpus(path, MetricConfig{});
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].genuine);
    CHECK(samples[0].orientation == Orientation::Horizontal);
    CHECK(samples[0].features.size() == 4);
    // Homogeneous columns must outscore the heterogeneous rows for table 0.
    CHECK(samples[0].features[1] > samples[0].features[0]);
    CHECK(!samples[1].genuine);
}

TEST_CASE("loading reports every unresolvable entry at once") {
    TempDir dir;
    testsupport::write_file(dir.path() / "pages" / "page.html", kPage);
    const std::string corpus =
        R"({"document_path": "pages/page.html", "table_index": 7, "genuine": false})"
        "\n"
        R"({"document_path": "pages/gone.html", "table_index": 0, "genuine": false})"
        "\n";
    testsupport::write_file(dir.path() / "corpus.jsonl", corpus);

    try {
        load_corpus(dir.str("corpus.jsonl"), MetricConfig{});
        FAIL_CHECK("expected CorpusError");
    } catch (const CorpusError& e) {
        const std::string what = e.what();
        CHECK(what.find("line 1") != std::string::npos);
        CHECK(what.find("line 2") != std::string::npos);
        CHECK(what.find("gone.html") != std::string::npos);
    }

    // Homogeneous failure kinds throw their specific category.
    testsupport::write_file(
        dir.path() / "only_missing.jsonl",
        R"({"document_path": "pages/gone.html", "table_index": 0, "genuine": false})"
        "\n");
    CHECK_THROWS_AS(load_corpus(dir.str("only_missing.jsonl"), MetricConfig{}), MissingDocument);

    testsupport::write_file(
        dir.path() / "only_index.jsonl",
        R"({"document_path": "pages/page.html", "table_index": 9, "genuine": false})"
        "\n");
    CHECK_THROWS_AS(load_corpus(dir.str("only_index.jsonl"), MetricConfig{}), MissingTableIndex);
}

TEST_CASE("the bundled corpus benchmark is complete and deterministic") {
    const auto corpus = (testsupport::data_dir() / "corpus.jsonl").string();
    const auto report = run_benchmark(corpus, 5, 42);

    CHECK(report.folds == 5);
    CHECK(report.seed == 42);
    REQUIRE(report.cells.size() == 48);  // 2 tasks x 4 families x 3 metrics x 2 flags

    std::size_t genuineness_cells = 0;
    double best_f = 0.0, best_precision = 0.0;
    for (const auto& cell : report.cells) {
        CHECK(cell.report.tp + cell.report.fp + cell.report.fn + cell.report.tn > 0);
        if (cell.task == Task::Genuineness) {
            ++genuineness_cells;
            best_f = std::max(best_f, cell.report.f_measure);
        } else {
            best_precision = std::max(best_precision, cell.report.precision);
        }
    }
    CHECK(genuineness_cells == 24);
    CHECK(report.overall == doctest::Approx(best_f * best_precision).epsilon(1e-12));
    CHECK(report.overall == doctest::Approx(overall_performance(report)).epsilon(1e-12));

    // Same seed, same bytes.
    const auto again = run_benchmark(corpus, 5, 42);
    CHECK(report_to_json(report) == report_to_json(again));

    // The JSON form parses and carries the same cell count.
    const auto parsed = nlohmann::json::parse(report_to_json(report));
    CHECK(parsed.at("cells").size() == 48);
    CHECK(parsed.at("folds").get<int>() == 5);
    CHECK(parsed.at("overall_performance").get<double>() == doctest::Approx(report.overall));

    // The text form mentions every family once per metric block and task.
    const auto text = report_to_text(report);
    CHECK(text.find("genuineness") != std::string::npos);
    CHECK(text.find("orientation") != std::string::npos);
    CHECK(text.find("knn / levenshtein (modified)") != std::string::npos);
}

TEST_CASE("headline score multiplies the best cells of the two tasks") {
    BenchmarkReport report;
    BenchmarkCell genuineness;
    genuineness.task = Task::Genuineness;
    genuineness.report.f_measure = 0.79;
    BenchmarkCell orientation;
    orientation.task = Task::Orientation;
    orientation.report.precision = 0.98;
    report.cells = {genuineness, orientation};

    const double overall = overall_performance(report);
    CHECK(overall == doctest::Approx(0.7742).epsilon(1e-12));
    CHECK(display_overall(overall) == "0.77");
    CHECK(display_overall(0.9756) == "0.98");

    CHECK_THROWS_AS(overall_performance(BenchmarkReport{}), EmptyReport);
    BenchmarkReport one_task;
    one_task.cells = {genuineness};
    CHECK_THROWS_AS(overall_performance(one_task), EmptyReport);
}
