#pragma once

#include <string>
#include <vector>

namespace ppclust::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t cols() const { return header.size(); }
};

/// RFC-4180-style reader: quoted fields, "" escapes, CRLF or LF line ends.
/// The first record is the header. Ragged rows raise ParseError with the
/// offending row index.
Table read_csv(const std::string& path);

Table parse_csv(const std::string& text);

/// Writes header + rows; fields containing separators/quotes are quoted.
void write_csv(const std::string& path, const Table& table);

std::string to_csv(const Table& table);

} // namespace ppclust::csv
