#include "asymlab/cli_io.hpp"

#include "asymlab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace asymlab::cli {

namespace {

std::string trim(std::string_view text)
{
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  std::string out(text.substr(first, last - first + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"')
    out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split_fields(const std::string& line)
{
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_number(const std::string& field)
{
  if (field.empty())
    return std::nullopt;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (*begin == '+')
    ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    return std::nullopt;
  return value;
}

bool all_digits(const std::string& s)
{
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

struct Table
{
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read_table(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot read '" + path + "'");
  Table table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first && line.rfind("\xEF\xBB\xBF", 0) == 0)
      line.erase(0, 3);
    if (trim(line).empty())
      continue;
    auto fields = split_fields(line);
    if (first) {
      first = false;
      // A first line with no numeric field at all is a header.
      const bool numeric = std::any_of(fields.begin(), fields.end(), [](const std::string& f) {
        return parse_number(f).has_value();
      });
      if (!numeric) {
        table.header = std::move(fields);
        continue;
      }
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

std::size_t resolve_column(const Table& table, const std::string& spec)
{
  const auto named = std::find(table.header.begin(), table.header.end(), spec);
  if (named != table.header.end())
    return static_cast<std::size_t>(named - table.header.begin());
  if (all_digits(spec)) {
    const auto position = std::stoul(spec);
    if (position >= 1)
      return position - 1;
  }
  throw InputError("column '" + spec + "' not found");
}

std::string dropped_message(std::size_t count)
{
  return std::to_string(count) + (count == 1 ? " row dropped" : " rows dropped");
}

} // namespace

IngestResult ingest_csv(const std::string& path, const std::string& x_col, const std::string& y_col)
{
  const Table table = read_table(path);
  const std::size_t xi = resolve_column(table, x_col);
  const std::size_t yi = resolve_column(table, y_col);

  IngestResult result;
  result.had_header = !table.header.empty();
  result.rows_read = table.rows.size();
  std::size_t dropped = 0;
  for (const auto& row : table.rows) {
    const auto x = xi < row.size() ? parse_number(row[xi]) : std::nullopt;
    const auto y = yi < row.size() ? parse_number(row[yi]) : std::nullopt;
    if (!x || !y) {
      ++dropped;
      continue;
    }
    result.sample.x.push_back(*x);
    result.sample.y.push_back(*y);
  }
  if (table.rows.empty() && table.header.empty())
    throw InputError("'" + path + "' is empty");
  if (dropped > 0)
    result.warnings.push_back(dropped_message(dropped));
  if (result.sample.x.size() < 8)
    throw InputError("fewer than 8 usable rows in '" + path + "'");
  if (result.sample.x.size() % 2 != 0) {
    result.sample.x.pop_back();
    result.sample.y.pop_back();
    result.warnings.push_back("odd row count: last pair dropped");
  }
  return result;
}

std::vector<double> ingest_column(const std::string& path, const std::string& col, std::vector<std::string>& warnings)
{
  const Table table = read_table(path);
  const std::size_t index = resolve_column(table, col);
  std::vector<double> values;
  std::size_t dropped = 0;
  for (const auto& row : table.rows) {
    const auto v = index < row.size() ? parse_number(row[index]) : std::nullopt;
    if (v)
      values.push_back(*v);
    else
      ++dropped;
  }
  if (dropped > 0)
    warnings.push_back(dropped_message(dropped));
  if (values.size() < 8)
    throw InputError("fewer than 8 usable rows in '" + path + "'");
  return values;
}

std::string format_number(double value)
{
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string to_csv(const PairedSample& sample, const std::string& x_name, const std::string& y_name)
{
  std::string out = x_name + "," + y_name + "\n";
  for (std::size_t i = 0; i < sample.x.size(); ++i)
    out += format_number(sample.x[i]) + "," + format_number(sample.y[i]) + "\n";
  return out;
}

void write_csv(const std::string& path, const PairedSample& sample, const std::string& x_name, const std::string& y_name)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InputError("cannot write '" + path + "'");
  out << to_csv(sample, x_name, y_name);
}

double Normalization::log_shift() const
{
  return std::log(range_y) - std::log(range_x);
}

Normalization normalize_minmax(const PairedSample& sample)
{
  if (sample.x.empty() || sample.x.size() != sample.y.size())
    throw InputError("normalize_minmax: empty or mismatched sample");
  Normalization norm;
  const auto [xlo, xhi] = std::minmax_element(sample.x.begin(), sample.x.end());
  const auto [ylo, yhi] = std::minmax_element(sample.y.begin(), sample.y.end());
  norm.min_x = *xlo;
  norm.range_x = *xhi - *xlo;
  norm.min_y = *ylo;
  norm.range_y = *yhi - *ylo;
  if (!(norm.range_x > 0.0) || !(norm.range_y > 0.0))
    throw InputError("zero data range");
  norm.sample.x.resize(sample.x.size());
  norm.sample.y.resize(sample.y.size());
  for (std::size_t i = 0; i < sample.x.size(); ++i) {
    norm.sample.x[i] = (sample.x[i] - norm.min_x) / norm.range_x;
    norm.sample.y[i] = (sample.y[i] - norm.min_y) / norm.range_y;
  }
  return norm;
}

} // namespace asymlab::cli
