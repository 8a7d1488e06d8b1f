#ifndef TABLESENSE_HTML_HPP
#define TABLESENSE_HTML_HPP

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

namespace tablesense {

//! Raw HTML bytes plus the charset they resolve under.
struct SourceDocument {
    std::string uri;
    std::string body;      // raw bytes
    std::string charset;   // resolved encoding name, lowercase
};

//! Which document a table came from and its position among the leaf tables.
struct TableSource {
    std::string document_uri;
    std::size_t index = 0;

    bool operator==(const TableSource&) const = default;
};

struct RawCell {
    std::string text;
    int row_span = 1;
    int col_span = 1;
};

//! One leaf <table> element as found in the markup, row by row.
struct RawTable {
    std::string document_uri;
    std::size_t index = 0;  // 0-based position among leaf tables in document order
    std::vector<std::vector<RawCell>> rows;
};

/*!
 * Rectangular n x m matrix of whitespace-normalized, tag-free cell strings.
 * Spans have been expanded and ragged rows padded; n >= 2 and m >= 2 always
 * hold for grids produced by normalize_grid.
 */
struct CellGrid {
    std::vector<std::vector<std::string>> cells;
    TableSource source;

    std::size_t rows() const { return cells.size(); }
    std::size_t cols() const { return cells.empty() ? 0 : cells[0].size(); }
};

/*!
 * Parses the document and returns every leaf table element (a table with no
 * table descendant) in document order. Markup errors are recovered the way a
 * browser would: unclosed cells and rows are closed implicitly, stray text
 * outside cells is dropped, everything still open at EOF is closed.
 *
 * Throws DecodeError when the body does not decode under doc.charset and
 * EmptyDocument when the body contains no element markup at all.
 */
std::vector<RawTable> parse_document(const SourceDocument& doc);

/*!
 * Expands row/col spans by duplicating the cell text into every covered
 * position, right-pads ragged rows with empty strings and normalizes each
 * cell's whitespace. Throws DegenerateTable when the result would be
 * smaller than 2 x 2.
 */
CellGrid normalize_grid(const RawTable& raw);

/*!
 * Loads an http(s) URI or a local file path. Charset precedence:
 * Content-Type header, then meta tag, then UTF-8.
 */
SourceDocument fetch_source(const std::string& uri,
                            std::chrono::milliseconds timeout = std::chrono::milliseconds(10000));

//! Charset detection from <meta> markup; exposed for the fetch layer and tests.
std::string detect_meta_charset(std::string_view head);

} // namespace tablesense

#endif // TABLESENSE_HTML_HPP
