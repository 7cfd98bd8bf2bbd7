#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace tml::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;

using Cell = std::variant<std::string, std::int64_t, double>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits, '.' separator; non-finite values as inf/-inf/nan.
std::string format_real(double x);
std::string format_cell(const Cell& c);
std::string to_csv(const Table& t);
std::string to_json(const Table& t);

/// args[0] is the program name. Writes tables and a manifest to the output
/// directory (TML_OUTPUT_DIR, else --out, else the working directory) and
/// echoes the main table to `out`. Returns kExitOk, kExitUsage or
/// kExitInvariant.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace tml::cli
