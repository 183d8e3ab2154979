#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace scs {

/// Decimal text with 15 significant digits, '.' separator, independent of
/// the global locale. Non-finite values print as nan / inf / -inf.
std::string format_real(double v);

/// RFC 4180 quoting: fields containing a comma, quote or newline are quoted
/// and embedded quotes are doubled.
std::string csv_field(std::string_view s);

/// Minimal CSV emitter. Every row must have as many fields as the header.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> header);

  void row(const std::vector<std::string>& fields);
  std::size_t columns() const { return header_.size(); }

 private:
  std::ostream& os_;
  std::vector<std::string> header_;
};

}  // namespace scs
