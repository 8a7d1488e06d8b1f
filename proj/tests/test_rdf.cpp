#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tablesense/errors.hpp"
#include "tablesense/rdf.hpp"

#include "turtle_reader.hpp"

#include <algorithm>
#include <string>
#include <vector>

using namespace tablesense;

namespace {

const std::string kBase = "http://example.org/tables#";

CellGrid grid_of(std::vector<std::vector<std::string>> cells) {
    CellGrid grid;
    grid.cells = std::move(cells);
    grid.source = TableSource{"test://grid", 0};
    return grid;
}

CellGrid contact_grid() {
    return grid_of({
        {"Name", "City", "Phone", "e-mail"},
        {"Ivanov I. I.", "Berlin", "1112233", "ivanov@mail.de"},
        {"Petrov P.P", "Berlin", "2223344", "petrov@mail.de"},
        {"Sidorov S. S.", "Moscow", "3334455", "sidorov@ya.ru"},
        {"Pupkin V.V.", "Moscow", "4445566", "pupkinv@gmail.com"},
    });
}

std::vector<turtle::Triple> as_tuples(const TripleSet& ts) {
    std::vector<turtle::Triple> out;
    for (const auto& t : ts.triples) {
        turtle::Term object;
        object.kind = t.object.kind == RdfTerm::Kind::Iri ? turtle::Term::Kind::Iri
                                                          : turtle::Term::Kind::Literal;
        object.value = t.object.value;
        out.emplace_back(t.subject, t.predicate, object);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool has_triple(const TripleSet& ts, const std::string& s, const std::string& p,
                const RdfTerm& o) {
    return std::find(ts.triples.begin(), ts.triples.end(), Triple{s, p, o}) != ts.triples.end();
}

} // namespace

TEST_CASE("slugs are lowercase alphanumerics joined by dashes") {
    CHECK(slugify("Name") == "name");
    CHECK(slugify("Area km2") == "area-km2");
    CHECK(slugify("e-mail") == "email");
    CHECK(slugify("  padded   words  ") == "padded-words");
    CHECK(slugify("Ünicode stripped") == "nicode-stripped");
    CHECK(slugify("???") == "");
    CHECK(slugify("") == "");
    CHECK(slugify("trailing punctuation!") == "trailing-punctuation");
}

TEST_CASE("base URIs must look like IRIs") {
    CHECK_NOTHROW(validate_base_uri("http://example.org/tables#"));
    CHECK_NOTHROW(validate_base_uri("urn:tables:"));
    CHECK_THROWS_AS(validate_base_uri(""), InvalidBaseUri);
    CHECK_THROWS_AS(validate_base_uri("no-scheme-here"), InvalidBaseUri);
    CHECK_THROWS_AS(validate_base_uri(":starts-with-colon"), InvalidBaseUri);
    CHECK_THROWS_AS(validate_base_uri("1http://example.org/"), InvalidBaseUri);
    CHECK_THROWS_AS(validate_base_uri("http://exa mple.org/"), InvalidBaseUri);
    CHECK_THROWS_AS(validate_base_uri("http://example.org/<t>"), InvalidBaseUri);
}

TEST_CASE("a horizontal listing becomes one resource per data row") {
    const auto ts = to_triples(contact_grid(), Orientation::Horizontal, kBase);

    // (rows-1) resources x (type + label + (cols-1) properties)
    CHECK(ts.triples.size() == 20);
    CHECK(ts.namespace_uri == kBase);

    CHECK(has_triple(ts, kBase + "row1", kRdfType, RdfTerm::iri(kBase + "name")));
    CHECK(has_triple(ts, kBase + "row1", kRdfsLabel, RdfTerm::literal("Ivanov I. I.")));
    CHECK(has_triple(ts, kBase + "row1", kBase + "city", RdfTerm::literal("Berlin")));
    CHECK(has_triple(ts, kBase + "row1", kBase + "phone", RdfTerm::literal("1112233")));
    CHECK(has_triple(ts, kBase + "row1", kBase + "email", RdfTerm::literal("ivanov@mail.de")));
    CHECK(has_triple(ts, kBase + "row4", kRdfType, RdfTerm::iri(kBase + "name")));
    CHECK(has_triple(ts, kBase + "row4", kBase + "city", RdfTerm::literal("Moscow")));
}

TEST_CASE("vertical tables are transposed before minting") {
    const auto grid = contact_grid();
    CellGrid flipped;
    flipped.source = grid.source;
    flipped.cells.assign(grid.cols(), std::vector<std::string>(grid.rows()));
    for (std::size_t i = 0; i < grid.rows(); ++i)
        for (std::size_t j = 0; j < grid.cols(); ++j) flipped.cells[j][i] = grid.cells[i][j];

    const auto horizontal = to_triples(grid, Orientation::Horizontal, kBase);
    const auto vertical = to_triples(flipped, Orientation::Vertical, kBase);
    CHECK(as_tuples(horizontal) == as_tuples(vertical));
}

TEST_CASE("empty cells produce no triples") {
    const auto ts = to_triples(grid_of({
                                   {"Item", "Price", "Note"},
                                   {"Bolt", "", "bulk only"},
                                   {"", "1.20", ""},
                               }),
                               Orientation::Horizontal, kBase);
    // row1: type + label + note; row2: type + price. No label for row2.
    CHECK(ts.triples.size() == 5);
    CHECK(has_triple(ts, kBase + "row1", kRdfType, RdfTerm::iri(kBase + "item")));
    CHECK(has_triple(ts, kBase + "row2", kBase + "price", RdfTerm::literal("1.20")));
    CHECK(!has_triple(ts, kBase + "row1", kBase + "price", RdfTerm::literal("")));
}

TEST_CASE("unusable headers fall back to positional names") {
    const auto ts = to_triples(grid_of({
                                   {"###", "Price", "Price", "", "々"},
                                   {"a", "1", "2", "3", "4"},
                               }),
                               Orientation::Horizontal, kBase);
    CHECK(has_triple(ts, kBase + "row1", kRdfType, RdfTerm::iri(kBase + "Entity")));
    CHECK(has_triple(ts, kBase + "row1", kBase + "price", RdfTerm::literal("1")));
    CHECK(has_triple(ts, kBase + "row1", kBase + "price-2", RdfTerm::literal("2")));
    CHECK(has_triple(ts, kBase + "row1", kBase + "col4", RdfTerm::literal("3")));
    CHECK(has_triple(ts, kBase + "row1", kBase + "col5", RdfTerm::literal("4")));
}

TEST_CASE("degenerate grids cannot be minted") {
    CHECK_THROWS_AS(to_triples(grid_of({{"a", "b"}}), Orientation::Horizontal, kBase),
                    DegenerateTable);
    // A 2-column table flipped to vertical is two rows wide after transposing,
    // which stays mintable; a 1-column one is not.
    CHECK_THROWS_AS(to_triples(grid_of({{"a"}, {"b"}}), Orientation::Horizontal, kBase),
                    DegenerateTable);
    CHECK_THROWS_AS(to_triples(contact_grid(), Orientation::Horizontal, "not a uri"),
                    InvalidBaseUri);
}

TEST_CASE("triple count follows the grid shape when no cell is empty") {
    for (std::size_t n : {2u, 3u, 5u}) {
        for (std::size_t m : {2u, 4u}) {
            CellGrid grid;
            grid.cells.assign(n, std::vector<std::string>(m));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    grid.cells[i][j] = "c" + std::to_string(i) + std::to_string(j);
            const auto ts = to_triples(grid, Orientation::Horizontal, kBase);
            CHECK(ts.triples.size() == (n - 1) * (m + 1));
        }
    }
}

TEST_CASE("turtle output is stable and round-trips through a separate reader") {
    const auto ts = to_triples(contact_grid(), Orientation::Horizontal, kBase);
    const auto text = serialize_turtle(ts);

    CHECK(text == serialize_turtle(ts));  // byte-stable
    CHECK(text.rfind("@prefix ns: <" + kBase + "> .\n", 0) == 0);
    CHECK(text.find("ns:row1 a ns:name ;") != std::string::npos);

    const auto parsed = turtle::parse(text);
    CHECK(parsed == as_tuples(ts));
}

TEST_CASE("literal escapes survive the round trip") {
    TripleSet ts;
    ts.namespace_uri = kBase;
    const std::string tricky = "line one\nline two\t\"quoted\\path\"\rdone";
    ts.triples.push_back({kBase + "row1", kBase + "note", RdfTerm::literal(tricky)});
    ts.triples.push_back({kBase + "row1", kRdfType, RdfTerm::iri(kBase + "Entity")});
    ts.triples.push_back(
        {kBase + "row1", kBase + "ctrl", RdfTerm::literal(std::string("bell\aend"))});

    const auto text = serialize_turtle(ts);
    const auto parsed = turtle::parse(text);
    CHECK(parsed == as_tuples(ts));
    CHECK(text.find("\\n") != std::string::npos);
    CHECK(text.find("\\u0007") != std::string::npos);
}

TEST_CASE("IRIs outside the namespace are written in full") {
    TripleSet ts;
    ts.namespace_uri = kBase;
    ts.triples.push_back({kBase + "row1", kRdfsLabel, RdfTerm::literal("x")});
    const auto text = serialize_turtle(ts);
    CHECK(text.find("<" + std::string(kRdfsLabel) + ">") != std::string::npos);
    const auto parsed = turtle::parse(text);
    CHECK(parsed == as_tuples(ts));
}
