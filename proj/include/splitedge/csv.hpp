#ifndef SPLITEDGE_CSV_HPP
#define SPLITEDGE_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace splitedge::csv {

using Row = std::vector<std::string>;

/// Splits one line on commas; no quoting (none of our schemas needs it).
Row split_line(const std::string& line);

/// Reads all non-empty lines. Throws IoError if the file cannot be opened.
std::vector<Row> read_file(const std::filesystem::path& path);

/// Parses a double; throws ParseError with context on failure.
double to_double(const std::string& field, const std::string& context);
long to_long(const std::string& field, const std::string& context);

/// Shortest decimal form that round-trips the exact double value, so
/// re-parsing an emitted CSV reproduces in-memory records bit for bit.
std::string format_double(double value);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace splitedge::csv

#endif
