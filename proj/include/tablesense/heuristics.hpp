#ifndef TABLESENSE_HEURISTICS_HPP
#define TABLESENSE_HEURISTICS_HPP

#include <array>

#include "tablesense/html.hpp"
#include "tablesense/text_metrics.hpp"

namespace tablesense {

/*!
 * The four-dimensional feature vector computed from a cell grid under one
 * metric configuration. Components are kept in a fixed order so that
 * classifier models remain compatible across runs:
 *   (max_sim_hor, max_sim_vert, avg_sim_hor, avg_sim_vert)
 */
struct TableTrace {
    double max_sim_hor = 0.0;  //!< best per-row mean pairwise cell similarity
    double max_sim_vert = 0.0; //!< best per-column mean pairwise cell similarity
    double avg_sim_hor = 0.0;  //!< row terms summed and scaled by 1/n
    double avg_sim_vert = 0.0; //!< column terms summed and scaled by 1/m

    MetricConfig metric; //!< configuration the values were computed under
    TableSource source;  //!< document and table the trace describes

    //! Components in their fixed order, ready for a classifier.
    std::array<double, 4> features() const {
        return {max_sim_hor, max_sim_vert, avg_sim_hor, avg_sim_vert};
    }
};

/*!
 * Maximum over rows 2..n of the mean pairwise similarity of the row's cells.
 *
 * The mean for one row is the sum of sim(c[i][j1], c[i][j2]) over *all*
 * ordered index pairs — both orderings and the j1 == j2 diagonal included —
 * divided by m². The first row is excluded; it typically holds headers.
 *
 * Throws TooFewRows when the grid has fewer than two rows and TooFewColumns
 * when it has no columns at all.
 */
double max_sim_hor(const CellGrid& grid, const MetricConfig& cfg);

/*!
 * Maximum over columns 2..m of the mean pairwise similarity of the column's
 * cells, with the same all-ordered-pairs convention divided by n². The first
 * column is excluded. Throws TooFewColumns when m < 2.
 */
double max_sim_vert(const CellGrid& grid, const MetricConfig& cfg);

/*!
 * Sum of the per-row mean pairwise similarities for rows 2..n, scaled by 1/n.
 * The scale factor is 1/n even though only n−1 rows contribute; classifier
 * training absorbs the constant offset. Throws TooFewRows when n < 2.
 */
double avg_sim_hor(const CellGrid& grid, const MetricConfig& cfg);

/*!
 * Sum of the per-column mean pairwise similarities for columns 2..m, scaled
 * by 1/m (the literal factor, as with avg_sim_hor). Throws TooFewColumns
 * when m < 2.
 */
double avg_sim_vert(const CellGrid& grid, const MetricConfig& cfg);

/*!
 * Computes all four heuristics in one pass (row and column terms are shared
 * between the max and avg variants) and assembles the trace. Requires
 * n ≥ 2 and m ≥ 2; throws TooFewRows / TooFewColumns otherwise.
 */
TableTrace compute_trace(const CellGrid& grid, const MetricConfig& cfg);

} // namespace tablesense

#endif // TABLESENSE_HEURISTICS_HPP
