#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace hybridlog::csv {

/// RFC 4180 field quoting. Fields holding a comma, quote, CR, LF or
/// leading/trailing whitespace are quoted; `force` quotes unconditionally.
std::string quote(std::string_view field, bool force = false);

/// One CSV record terminated by LF.
std::string row(const std::vector<std::string>& fields);

/// Reads the next record, honouring quoted fields that span lines.
/// Returns false at end of input. Throws std::runtime_error on an
/// unterminated quote.
bool read_row(std::istream& in, std::vector<std::string>& fields);

/// Whole document into rows (header included).
std::vector<std::vector<std::string>> read_all(std::istream& in);

}  // namespace hybridlog::csv
