#ifndef TABLESENSE_CSV_HPP
#define TABLESENSE_CSV_HPP

#include <string>
#include <vector>

namespace tablesense {

//! Serializes rows as RFC 4180 CSV (CRLF line ends; fields containing commas,
//! quotes, or line breaks are quoted, embedded quotes doubled).
std::string write_csv(const std::vector<std::vector<std::string>>& rows);

//! Parses RFC 4180 CSV, accepting both CRLF and LF records and quoted fields
//! with embedded separators/newlines. Throws SourceError on an unterminated
//! quoted field or stray data after a closing quote.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

} // namespace tablesense

#endif // TABLESENSE_CSV_HPP
