#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rseri {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::optional<std::size_t> column(std::string_view name) const;
};

/// RFC 4180 style parser: quoted fields, "" escapes, LF or CRLF line ends.
/// Every row must have as many fields as the header. Throws ParseError.
CsvTable parse_csv(std::string_view text);

/// Quote a field for CSV output when it contains separators, quotes or newlines.
std::string csv_escape(std::string_view field);

} // namespace rseri
