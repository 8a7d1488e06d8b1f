#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tablesense/errors.hpp"
#include "tablesense/heuristics.hpp"

#include <random>
#include <string>
#include <vector>

using namespace tablesense;

namespace {

CellGrid grid_of(std::vector<std::vector<std::string>> cells) {
    CellGrid grid;
    grid.cells = std::move(cells);
    grid.source = TableSource{"test://grid", 0};
    return grid;
}

// The running example: a contact-list table whose phone column drives the
// vertical similarity once digits are equalized.
CellGrid contact_grid() {
    return grid_of({
        {"Name", "City", "Phone", "e-mail"},
        {"Ivanov I. I.", "Berlin", "1112233", "ivanov@mail.de"},
        {"Petrov P.P", "Berlin", "2223344", "petrov@mail.de"},
        {"Sidorov S. S.", "Moscow", "3334455", "sidorov@ya.ru"},
        {"Pupkin V.V.", "Moscow", "4445566", "pupkinv@gmail.com"},
    });
}

// Literal re-statement of the four definitions with nothing shared with the
// library implementation: plain double loops over all ordered pairs.
double oracle_line(const std::vector<std::string>& cells, const MetricConfig& cfg) {
    const std::size_t k = cells.size();
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) total += similarity(cells[a], cells[b], cfg);
    return total / static_cast<double>(k * k);
}

struct OracleValues {
    double max_hor, max_vert, avg_hor, avg_vert;
};

OracleValues oracle(const CellGrid& grid, const MetricConfig& cfg) {
    const std::size_t n = grid.rows();
    const std::size_t m = grid.cols();
    OracleValues v{0, 0, 0, 0};

    double sum = 0.0, best = -1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double term = oracle_line(grid.cells[i], cfg);
        sum += term;
        best = std::max(best, term);
    }
    v.max_hor = best;
    v.avg_hor = sum / static_cast<double>(n);

    sum = 0.0;
    best = -1.0;
    for (std::size_t j = 1; j < m; ++j) {
        std::vector<std::string> column;
        for (std::size_t i = 0; i < n; ++i) column.push_back(grid.cells[i][j]);
        const double term = oracle_line(column, cfg);
        sum += term;
        best = std::max(best, term);
    }
    v.max_vert = best;
    v.avg_vert = sum / static_cast<double>(m);
    return v;
}

CellGrid transpose(const CellGrid& grid) {
    CellGrid t;
    t.source = grid.source;
    t.cells.assign(grid.cols(), std::vector<std::string>(grid.rows()));
    for (std::size_t i = 0; i < grid.rows(); ++i)
        for (std::size_t j = 0; j < grid.cols(); ++j) t.cells[j][i] = grid.cells[i][j];
    return t;
}

} // namespace

TEST_CASE("contact table reference values under unmodified edit distance") {
    const MetricConfig cfg;  // levenshtein, unmodified
    const auto grid = contact_grid();
    const auto trace = compute_trace(grid, cfg);

    CHECK(trace.max_sim_hor == doctest::Approx(0.355357142857143).epsilon(1e-12));
    CHECK(trace.max_sim_vert == doctest::Approx(0.480103425985779).epsilon(1e-12));
    CHECK(trace.avg_sim_hor == doctest::Approx(0.260720749838397).epsilon(1e-12));
    CHECK(trace.avg_sim_vert == doctest::Approx(0.277168713639302).epsilon(1e-12));

    // The column signal dominates for a listing of one entity per row.
    CHECK(trace.max_sim_vert > trace.max_sim_hor);
}

TEST_CASE("digit equalization lifts the phone column above every other") {
    MetricConfig modified;
    modified.modified = true;
    const auto grid = contact_grid();

    const double plain = max_sim_vert(grid, MetricConfig{});
    const double equalized = max_sim_vert(grid, modified);
    CHECK(equalized > plain);
    // The four phones canonicalize to the same string: 4x4 ordered pairs at
    // 1.0 plus the header self-pair, over 25 pairs -> (16 + 1) / 25.
    CHECK(equalized == doctest::Approx(17.0 / 25.0).epsilon(1e-12));
}

TEST_CASE("implementations agree with the double-loop statement of the formulas") {
    const std::vector<std::string> pool = {"alpha", "beta", "12.5", "13.9",
                                           "one two three four words", ""};
    std::mt19937 gen(7);

    std::vector<MetricConfig> configs;
    for (MetricKind kind :
         {MetricKind::Levenshtein, MetricKind::JaroWinkler, MetricKind::NGram}) {
        for (bool modified : {false, true}) {
            MetricConfig cfg;
            cfg.kind = kind;
            cfg.modified = modified;
            configs.push_back(cfg);
        }
    }

    for (int round = 0; round < 40; ++round) {
        const std::size_t n = 2 + gen() % 3;
        const std::size_t m = 2 + gen() % 3;
        CellGrid grid;
        grid.cells.assign(n, std::vector<std::string>(m));
        for (auto& row : grid.cells)
            for (auto& cell : row) cell = pool[gen() % pool.size()];

        const auto& cfg = configs[round % configs.size()];
        const auto expected = oracle(grid, cfg);
        CHECK(max_sim_hor(grid, cfg) == doctest::Approx(expected.max_hor).epsilon(1e-12));
        CHECK(max_sim_vert(grid, cfg) == doctest::Approx(expected.max_vert).epsilon(1e-12));
        CHECK(avg_sim_hor(grid, cfg) == doctest::Approx(expected.avg_hor).epsilon(1e-12));
        CHECK(avg_sim_vert(grid, cfg) == doctest::Approx(expected.avg_vert).epsilon(1e-12));
    }
}

TEST_CASE("transposing a grid swaps the row and column statistics") {
    const auto grid = contact_grid();
    const auto flipped = transpose(grid);
    for (bool modified : {false, true}) {
        MetricConfig cfg;
        cfg.modified = modified;
        CHECK(max_sim_hor(grid, cfg) == doctest::Approx(max_sim_vert(flipped, cfg)).epsilon(1e-12));
        CHECK(max_sim_vert(grid, cfg) == doctest::Approx(max_sim_hor(flipped, cfg)).epsilon(1e-12));
        CHECK(avg_sim_hor(grid, cfg) == doctest::Approx(avg_sim_vert(flipped, cfg)).epsilon(1e-12));
        CHECK(avg_sim_vert(grid, cfg) == doctest::Approx(avg_sim_hor(flipped, cfg)).epsilon(1e-12));
    }
}

TEST_CASE("a grid of long strings collapses to the cap under the modified metric") {
    MetricConfig cfg;
    cfg.modified = true;
    const auto grid = grid_of({
        {"please sign in to continue reading", "the article archive spans ten years"},
        {"subscriptions renew on the first of the month", "gift codes never expire at all"},
    });
    const auto trace = compute_trace(grid, cfg);
    // Every pair, the diagonal included, scores exactly the cap; the averages
    // then scale it by (lines-1)/lines.
    CHECK(trace.max_sim_hor == 0.5);
    CHECK(trace.max_sim_vert == 0.5);
    CHECK(trace.avg_sim_hor == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(trace.avg_sim_vert == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("feature vector keeps its documented component order") {
    TableTrace trace;
    trace.max_sim_hor = 1.0;
    trace.max_sim_vert = 2.0;
    trace.avg_sim_hor = 3.0;
    trace.avg_sim_vert = 4.0;
    CHECK(trace.features() == std::array<double, 4>{1.0, 2.0, 3.0, 4.0});
}

TEST_CASE("trace records the metric and source it was computed from") {
    const auto grid = contact_grid();
    MetricConfig cfg;
    cfg.kind = MetricKind::NGram;
    const auto trace = compute_trace(grid, cfg);
    CHECK(trace.metric == cfg);
    CHECK(trace.source == grid.source);
}

TEST_CASE("undersized grids are rejected") {
    const auto one_row = grid_of({{"a", "b"}});
    CHECK_THROWS_AS(max_sim_hor(one_row, MetricConfig{}), TooFewRows);
    CHECK_THROWS_AS(compute_trace(one_row, MetricConfig{}), TooFewRows);

    const auto one_col = grid_of({{"a"}, {"b"}});
    CHECK_THROWS_AS(max_sim_vert(one_col, MetricConfig{}), TooFewColumns);
    CHECK_THROWS_AS(compute_trace(one_col, MetricConfig{}), TooFewColumns);
}
