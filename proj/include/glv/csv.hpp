#pragma once

#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glv {

/// Shortest round-trip-safe text at 17 significant digits, '.' decimal
/// separator, independent of the global locale.
[[nodiscard]] std::string format_number(double v);

/// Comma-separated writer with '\n' line endings.
class CsvWriter {
public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(std::span<const std::string> names);
  void header(std::initializer_list<std::string_view> names);
  void row(std::span<const double> values);
  void row(std::initializer_list<double> values);
  /// Mixed text/number rows; cells are written verbatim.
  void text_row(std::span<const std::string> cells);

private:
  std::ostream& out_;
};

}  // namespace glv
