#include "scs/report.hpp"

#include <cmath>
#include <cstdio>

#include "scs/common.hpp"

namespace scs {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  // snprintf honours LC_NUMERIC; normalize in case a locale was installed.
  for (char& c : buf) {
    if (c == ',') c = '.';
  }
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> header)
    : os_(os), header_(std::move(header)) {
  row(header_);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != header_.size()) {
    throw InvalidArgument("csv row has " + std::to_string(fields.size()) + " fields, expected " +
                          std::to_string(header_.size()));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os_ << ',';
    os_ << csv_field(fields[i]);
  }
  os_ << '\n';
}

}  // namespace scs
