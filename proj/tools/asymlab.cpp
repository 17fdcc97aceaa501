// Command-line front end: estimate, test, simulate, diagnose, density, generate.

#include "asymlab/cli_io.hpp"
#include "asymlab/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

struct Flags
{
  asymlab::cli::RunConfig config;
  std::string input;
  std::string format;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
  std::size_t n = 0;
  std::vector<CLI::Option*> input_opts, format_opts, out_opts, seed_opts, replicate_opts, n_opts;
};

bool given(const std::vector<CLI::Option*>& options)
{
  for (const auto* o : options)
    if (o->count() > 0)
      return true;
  return false;
}

void add_common(CLI::App* sub, Flags& f)
{
  auto& c = f.config;
  f.seed_opts.push_back(sub->add_option("--seed", f.seed, "RNG seed (default: $ASYMLAB_SEED, then 20240607)"));
  sub->add_option("--alpha", c.alpha, "Significance level")->capture_default_str();
  sub->add_option("--grid", c.grid_length, "Density grid length (power of two, >= 256)")->capture_default_str();
  sub->add_option("--pad", c.pad_fraction, "Grid padding as a fraction of the data range")->capture_default_str();
  sub->add_option("--clip-floor", c.clip_floor, "Lower clip for density values")->capture_default_str();
  sub->add_option("--jobs", c.jobs, "Worker threads")->capture_default_str();
  f.format_opts.push_back(sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({ "json", "csv" })));
  f.out_opts.push_back(sub->add_option("--out", f.out, "Write output to this file instead of stdout"));
}

void add_input(CLI::App* sub, Flags& f)
{
  auto& c = f.config;
  f.input_opts.push_back(sub->add_option("--input", f.input, "CSV file")->required());
  sub->add_option("--x-col", c.x_col, "Exposure column (name or 1-based index)")->capture_default_str();
  sub->add_option("--y-col", c.y_col, "Outcome column (name or 1-based index)")->capture_default_str();
  sub->add_option("--normalize", c.normalize, "Affine normalization")
    ->check(CLI::IsMember({ "none", "minmax" }))
    ->capture_default_str();
}

int run(int argc, char** argv)
{
  CLI::App app{ "Asymmetry coefficient estimation and testing" };
  app.require_subcommand(1);
  Flags f;
  auto& c = f.config;

  auto* estimate = app.add_subcommand("estimate", "Cross-fitted asymmetry coefficient of a CSV sample");
  auto* test = app.add_subcommand("test", "One-sided direction test");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo tables");
  auto* diagnose = app.add_subcommand("diagnose", "Bootstrap noise-tolerance diagnostic");
  auto* density = app.add_subcommand("density", "Export a density estimate as x,density CSV");
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic sample as CSV");

  for (auto* sub : { estimate, test, simulate, diagnose, density, generate })
    add_common(sub, f);
  for (auto* sub : { estimate, test, diagnose, density })
    add_input(sub, f);

  test->add_option("--dynamics", c.dynamics, "Hypothesized dynamics")
    ->check(CLI::IsMember({ "contracting", "expanding" }))
    ->capture_default_str();

  diagnose->add_option("--bootstrap", c.bootstrap, "Bootstrap replicates")->capture_default_str();
  diagnose->add_option("--knots", c.knots, "Interior spline knots")->capture_default_str();

  simulate->add_option("--table", c.table, "Table to reproduce (1, 2 or 3)")->check(CLI::Range(1, 3))->capture_default_str();
  for (auto* sub : { simulate, generate }) {
    sub->add_option("--case", c.case_id, "Coverage case: i (lognormal) or ii (exponential)")->capture_default_str();
    sub->add_option("--g", c.g_id, "Catalog generative function id");
    sub->add_option("--noise", c.noise, "Noise standard deviation")->capture_default_str();
    sub->add_option("--rho", c.rho, "Noise-exposure correlation")->capture_default_str();
    f.n_opts.push_back(sub->add_option("--n", f.n, "Sample size (per split for table 2)"));
  }
  f.replicate_opts.push_back(simulate->add_option("--replicates", f.replicates, "Monte Carlo replicates"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : asymlab::ConfigError("").exit_code();
  }

  c.command = app.get_subcommands().front()->get_name();
  if (given(f.input_opts))
    c.input_path = f.input;
  if (given(f.format_opts))
    c.format = f.format;
  if (given(f.out_opts))
    c.out = f.out;
  if (given(f.replicate_opts))
    c.replicates = f.replicates;
  if (given(f.n_opts))
    c.n = f.n;
  c.seed = asymlab::cli::resolve_seed(given(f.seed_opts) ? std::optional(f.seed) : std::nullopt,
                                      std::getenv("ASYMLAB_SEED"));

  const auto output = asymlab::cli::dispatch(c);
  const std::string text = asymlab::cli::render(output, c);
  if (c.out) {
    std::ofstream file(*c.out, std::ios::binary);
    if (!file)
      throw asymlab::InputError("cannot write '" + *c.out + "'");
    file << text;
  } else {
    std::cout << text;
  }
  for (const auto& w : output.report.warnings)
    std::cerr << "warning: " << w << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  try {
    return run(argc, argv);
  } catch (const asymlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
