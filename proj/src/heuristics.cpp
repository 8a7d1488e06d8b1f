#include "tablesense/heuristics.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "tablesense/errors.hpp"

namespace tablesense {

namespace {

/*!
 * Mean pairwise similarity of one line of cells: the sum over all ordered
 * index pairs (diagonal included) divided by k². Symmetry of the metrics
 * lets us evaluate each unordered pair once and double it; the diagonal is
 * still evaluated per cell because the long-string cap applies there too.
 */
double line_term(const std::vector<const std::string*>& cells, const MetricConfig& cfg) {
    const std::size_t k = cells.size();
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        total += similarity(*cells[a], *cells[a], cfg);
        for (std::size_t b = a + 1; b < k; ++b) {
            total += 2.0 * similarity(*cells[a], *cells[b], cfg);
        }
    }
    return total / (static_cast<double>(k) * static_cast<double>(k));
}

//! Per-row means for rows 2..n. Throws when the grid is too small.
std::vector<double> row_terms(const CellGrid& grid, const MetricConfig& cfg) {
    const std::size_t n = grid.rows();
    if (n < 2) throw TooFewRows("need at least 2 rows, got " + std::to_string(n));
    if (grid.cols() == 0) throw TooFewColumns("grid has no columns");

    std::vector<double> terms;
    terms.reserve(n - 1);
    std::vector<const std::string*> line(grid.cols());
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) line[j] = &grid.cells[i][j];
        terms.push_back(line_term(line, cfg));
    }
    return terms;
}

//! Per-column means for columns 2..m. Throws when the grid is too narrow.
std::vector<double> col_terms(const CellGrid& grid, const MetricConfig& cfg) {
    const std::size_t m = grid.cols();
    if (m < 2) throw TooFewColumns("need at least 2 columns, got " + std::to_string(m));

    std::vector<double> terms;
    terms.reserve(m - 1);
    std::vector<const std::string*> line(grid.rows());
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = 0; i < grid.rows(); ++i) line[i] = &grid.cells[i][j];
        terms.push_back(line_term(line, cfg));
    }
    return terms;
}

double max_of(const std::vector<double>& terms) {
    return *std::max_element(terms.begin(), terms.end());
}

double scaled_sum(const std::vector<double>& terms, std::size_t scale) {
    const double sum = std::accumulate(terms.begin(), terms.end(), 0.0);
    return sum / static_cast<double>(scale);
}

} // namespace

double max_sim_hor(const CellGrid& grid, const MetricConfig& cfg) {
    return max_of(row_terms(grid, cfg));
}

double max_sim_vert(const CellGrid& grid, const MetricConfig& cfg) {
    return max_of(col_terms(grid, cfg));
}

double avg_sim_hor(const CellGrid& grid, const MetricConfig& cfg) {
    return scaled_sum(row_terms(grid, cfg), grid.rows());
}

double avg_sim_vert(const CellGrid& grid, const MetricConfig& cfg) {
    return scaled_sum(col_terms(grid, cfg), grid.cols());
}

TableTrace compute_trace(const CellGrid& grid, const MetricConfig& cfg) {
    const std::vector<double> hor = row_terms(grid, cfg);
    const std::vector<double> vert = col_terms(grid, cfg);

    TableTrace trace;
    trace.max_sim_hor = max_of(hor);
    trace.max_sim_vert = max_of(vert);
    trace.avg_sim_hor = scaled_sum(hor, grid.rows());
    trace.avg_sim_vert = scaled_sum(vert, grid.cols());
    trace.metric = cfg;
    trace.source = grid.source;
    return trace;
}

} // namespace tablesense
