#include "asymlab/cli_io.hpp"

#include "asymlab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace asymlab::cli {

namespace {

double round_significant(double value)
{
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return std::strtod(buffer, nullptr);
}

std::string scalar_text(const Json& node)
{
  if (node.is_string())
    return node.get<std::string>();
  return node.dump();
}

void flatten(const Json& node, const std::string& prefix, std::string& out)
{
  if (node.is_object()) {
    for (const auto& [key, child] : node.items())
      flatten(child, prefix.empty() ? key : prefix + "." + key, out);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i)
      flatten(node[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + "," + scalar_text(node) + "\n";
  }
}

} // namespace

void canonicalize(Json& node)
{
  if (node.is_object() || node.is_array()) {
    for (auto& child : node)
      canonicalize(child);
  } else if (node.is_number_float()) {
    const double value = node.get<double>();
    node = std::isfinite(value) ? Json(round_significant(value)) : Json(nullptr);
  }
}

Report::Report(std::string command_name, Json config_echo, Json result_payload, std::vector<std::string> warning_list)
  : command(std::move(command_name))
  , config(std::move(config_echo))
  , result(std::move(result_payload))
  , warnings(std::move(warning_list))
{
  canonicalize(config);
  canonicalize(result);
}

Json Report::to_json() const
{
  return Json{ { "schema_version", schema },
               { "command", command },
               { "config", config },
               { "result", result },
               { "warnings", warnings } };
}

Report Report::from_json(const Json& j)
{
  try {
    Report report;
    report.schema = j.at("schema_version").get<std::string>();
    if (report.schema != schema_version)
      throw InputError("unsupported report schema '" + report.schema + "'");
    report.command = j.at("command").get<std::string>();
    report.config = j.at("config");
    report.result = j.at("result");
    report.warnings = j.at("warnings").get<std::vector<std::string>>();
    return report;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

std::string Report::serialize() const
{
  return to_json().dump(2) + "\n";
}

Report Report::parse(const std::string& text)
{
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  return from_json(j);
}

std::string Report::to_csv() const
{
  std::string out = "key,value\n";
  out += "schema_version," + schema + "\n";
  out += "command," + command + "\n";
  flatten(config, "config", out);
  flatten(result, "result", out);
  for (std::size_t i = 0; i < warnings.size(); ++i)
    out += "warnings[" + std::to_string(i) + "],\"" + warnings[i] + "\"\n";
  return out;
}

bool operator==(const Report& a, const Report& b)
{
  return a.to_json() == b.to_json();
}

} // namespace asymlab::cli
