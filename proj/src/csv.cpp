#include "deconv/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace deconv::csv {

std::string format_double(double v)
{
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_row(std::ostream& out, const std::vector<std::string>& fields)
{
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i)
      out << ',';
    out << fields[i];
  }
  out << '\n';
}

namespace {

std::vector<std::string> key_fields(const CellKey& key)
{
  return { density(key.density).name, to_string(key.noise), std::to_string(key.n),
           format_double(key.s2n) };
}

} // namespace

void write_mise_table(std::ostream& out, const MiseTable& table)
{
  write_row(out, { "density", "noise", "n", "s2n", "mean", "median", "sd", "reps" });
  for (const auto& cell : table.cells) {
    auto row = key_fields(cell.key);
    row.push_back(format_double(cell.summary.mean));
    row.push_back(format_double(cell.summary.median));
    row.push_back(format_double(cell.summary.sd));
    row.push_back(std::to_string(cell.summary.count));
    write_row(out, row);
  }
}

void write_ratio_table(std::ostream& out, const RatioTable& table)
{
  write_row(out, { "density", "noise", "n", "s2n", "ratio", "mean_num", "mean_den", "reps" });
  for (const auto& cell : table.cells) {
    auto row = key_fields(cell.key);
    row.push_back(format_double(cell.ratio));
    row.push_back(format_double(cell.numerator.mean));
    row.push_back(format_double(cell.denominator.mean));
    row.push_back(std::to_string(cell.numerator.count));
    write_row(out, row);
  }
}

} // namespace deconv::csv
