#pragma once

#include "asymlab/inference.hpp"

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace asymlab::cli {

using Json = nlohmann::json;

// ---- CSV ------------------------------------------------------------------

struct IngestResult
{
  PairedSample sample;
  bool had_header = false;
  std::size_t rows_read = 0;
  std::vector<std::string> warnings;
};

//! Reads two columns from a comma-separated file. A column is resolved by
//! header name, or as a 1-based position when it is all digits and matches no
//! header name. Rows with a missing or non-numeric entry in either column are
//! dropped; an odd usable count drops the last pair.
IngestResult ingest_csv(const std::string& path, const std::string& x_col, const std::string& y_col);

//! Single-column variant used by density export.
std::vector<double> ingest_column(const std::string& path, const std::string& col, std::vector<std::string>& warnings);

//! Shortest round-trip decimal representation.
std::string format_number(double value);

void write_csv(const std::string& path, const PairedSample& sample, const std::string& x_name = "x", const std::string& y_name = "y");
std::string to_csv(const PairedSample& sample, const std::string& x_name = "x", const std::string& y_name = "y");

struct Normalization
{
  PairedSample sample;
  double min_x = 0.0;
  double range_x = 1.0;
  double min_y = 0.0;
  double range_y = 1.0;

  double scale_x() const { return 1.0 / range_x; }
  double scale_y() const { return 1.0 / range_y; }
  //! C(normalized) - C(raw) = ln(range_y) - ln(range_x).
  double log_shift() const;
};

Normalization normalize_minmax(const PairedSample& sample);

// ---- Reports --------------------------------------------------------------

inline constexpr const char* schema_version = "asymlab.report/1";

//! Rounds every number in a JSON tree to 12 significant digits and replaces
//! non-finite numbers with null.
void canonicalize(Json& node);

struct Report
{
  std::string schema = schema_version;
  std::string command;
  Json config = Json::object();
  Json result = Json::object();
  std::vector<std::string> warnings;

  Report() = default;
  Report(std::string command, Json config, Json result, std::vector<std::string> warnings);

  Json to_json() const;
  static Report from_json(const Json& j);

  std::string serialize() const;
  static Report parse(const std::string& text);

  //! Flattened "key,value" lines; arrays expand to key[i].
  std::string to_csv() const;
};

bool operator==(const Report& a, const Report& b);

// ---- Configuration and dispatch -------------------------------------------

inline constexpr std::uint64_t default_seed = 20240607;

//! --seed if given, else ASYMLAB_SEED, else the fixed default.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env_value);

struct RunConfig
{
  std::string command;
  std::optional<std::string> input_path;
  std::string x_col = "1";
  std::string y_col = "2";
  std::string normalize = "none";
  std::string dynamics = "contracting";
  double alpha = 0.05;
  std::size_t grid_length = 256;
  double pad_fraction = 0.5;
  double clip_floor = 1e-12;
  std::uint64_t seed = default_seed;
  std::optional<std::size_t> replicates;
  std::size_t bootstrap = 1000;
  std::size_t knots = 10;
  std::size_t jobs = 1;
  std::optional<std::string> format;
  std::optional<std::string> out;

  // simulate / generate
  int table = 1;
  std::string case_id = "i";
  std::string g_id;
  double noise = 0.0; //!< noise standard deviation
  double rho = 0.0;
  std::optional<std::size_t> n;

  //! Throws ConfigError on invalid settings.
  void validate() const;
  Json to_json() const;
};

struct Output
{
  Report report;
  //! Non-report payload (density export, generated samples), if any.
  std::optional<std::string> csv;
};

Output dispatch(const RunConfig& config);

//! Text to write for a dispatched command under the configured format.
std::string render(const Output& output, const RunConfig& config);

} // namespace asymlab::cli
