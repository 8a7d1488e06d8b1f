#ifndef TABLESENSE_RDF_HPP
#define TABLESENSE_RDF_HPP

#include <string>
#include <vector>

#include "tablesense/classifiers.hpp"
#include "tablesense/html.hpp"

namespace tablesense {

//! One RDF term: an IRI or a plain string literal.
struct RdfTerm {
    enum class Kind { Iri, Literal };
    Kind kind = Kind::Iri;
    std::string value;

    static RdfTerm iri(std::string v) { return {Kind::Iri, std::move(v)}; }
    static RdfTerm literal(std::string v) { return {Kind::Literal, std::move(v)}; }
    bool operator==(const RdfTerm&) const = default;
    auto operator<=>(const RdfTerm&) const = default;
};

struct Triple {
    std::string subject;   //!< absolute IRI
    std::string predicate; //!< absolute IRI
    RdfTerm object;
    bool operator==(const Triple&) const = default;
    auto operator<=>(const Triple&) const = default;
};

//! The triples generated from one table plus the namespace they were minted in.
struct TripleSet {
    std::vector<Triple> triples;
    std::string namespace_uri;
};

//! Full IRIs for the two vocabulary terms the generator uses.
inline constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";

/*!
 * Turns text into an IRI-safe local name: ASCII letters lowercased, spaces
 * become hyphens, everything else non-alphanumeric is dropped. Returns an
 * empty string when nothing survives; callers supply their own fallback.
 */
std::string slugify(const std::string& text);

//! Throws InvalidBaseUri unless the string is an absolute IRI usable as a
//! minting prefix (has a scheme, no whitespace or characters Turtle would
//! require escaping inside <...>).
void validate_base_uri(const std::string& base_uri);

/*!
 * Converts a table grid into triples. A vertical table is transposed first,
 * so in both cases the first row is the header tuple and the first column
 * holds the instance keys. Each data row i (1-based, i >= 2) becomes an
 * instance IRI base_uri + "row" + (i-1) carrying one type triple (class
 * minted from the slugified top-left header, "Entity" when that slug is
 * empty), one label triple from the key column, and one property triple per
 * remaining column (predicate minted from the slugified column header,
 * "col" + column number when empty, with "-2"/"-3"... suffixes on
 * collisions). Cells holding the empty string produce no triple.
 *
 * Throws DegenerateTable when the grid is smaller than 2x2 and
 * InvalidBaseUri for an unusable namespace.
 */
TripleSet to_triples(const CellGrid& grid, Orientation orientation, const std::string& base_uri);

/*!
 * Serializes to Turtle: one @prefix line for the namespace, subjects grouped
 * in first-appearance order, rdf:type rendered as `a` and listed first,
 * remaining predicates sorted lexicographically. Output is byte-stable for
 * identical input.
 */
std::string serialize_turtle(const TripleSet& ts);

} // namespace tablesense

#endif // TABLESENSE_RDF_HPP
