#ifndef CNPLAB_EXPERIMENTS_HPP
#define CNPLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cnplab/drury.hpp"
#include "cnplab/finsample.hpp"
#include "cnplab/hardy.hpp"
#include "cnplab/io.hpp"

namespace cnplab {

/// A parsed experiment description. Every level of the JSON rejects keys it
/// does not know, and generated point sets need a seed (from the config or
/// from the command line).
struct ExperimentConfig {
  std::string experiment;
  std::string name;              // output subdirectory; defaults to the experiment
  Json kernel;                   // "szego" or {"name": ..., "dim": ...}
  Json points;                   // {"explicit": [...]}, {"file": ...} or {"generator": ...}
  Json symbol;                   // entry of the symbol table
  Json pair;                     // {"a": symbol, "b": symbol}
  Json params;                   // experiment specific
  Tolerances tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  Json echo;                     // the config as given, after seed override
};

ExperimentConfig parse_config(const Json& j, std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override = std::nullopt);

std::vector<std::string> experiment_names();

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
};

/// Outcome of one run. The payload is a pure function of the config (and
/// seed); the wall time is kept apart so the payload stays byte-identical
/// across runs.
struct Report {
  std::string name;
  Json payload;
  std::vector<Assertion> assertions;
  std::vector<Table> tables;
  double wall_seconds = 0.0;

  bool passed() const;
  /// {"payload": ..., "wall_seconds": ...}
  std::string to_json() const;
  std::string payload_json() const;
};

Report run(const ExperimentConfig& config);

/// <dir>/<report name>/report.json plus one CSV per table, written atomically.
std::filesystem::path write_report(const Report& report, const std::filesystem::path& dir);

/// $CNPLAB_OUT_DIR, or ./cnplab-out.
std::filesystem::path default_output_dir();

// Building blocks shared with the tests.

CnpKernel kernel_from_spec(const Json& spec, std::size_t point_dim);
PointSet points_from_spec(const Json& spec, std::optional<std::uint64_t> seed);
/// Values of a named symbol on a point set (first coordinate for ball points).
Vector symbol_values(const Json& spec, const PointSet& pts, std::optional<std::uint64_t> seed = std::nullopt);
/// log|h| on a point set; finite even where |h| overflows.
RealVector symbol_log_abs(const Json& spec, const PointSet& pts);
/// Smirnov pair (a, b) with h = b / a for the disk backend.
SmirnovSymbol symbol_smirnov(const Json& spec, std::size_t grid_size = 4096);
/// Disk function for a target f: "z", "one", {"name": "kernel", "at": w}, ...
DiskFunction disk_function_from_spec(const Json& spec);

struct SweepConfig {
  std::size_t samples = 50;
  std::size_t n_min = 5;
  std::size_t n_max = 40;
  double cond_max = 1e8;
  double h_scale = 2.0;
  // Uniform draws of 40 disk points are hopelessly ill conditioned for the
  // Szego kernel; separated draws near the boundary are not.
  double radius = 0.98;
  double min_separation = 0.6;
  std::uint64_t seed = 0;
  /// Kernel names cycled over the samples; "szego", "drury_arveson:2", ...
  std::vector<std::string> kernels{"szego", "drury_arveson:2", "drury_arveson:3"};
};

struct SweepSample {
  std::string kernel;
  std::size_t n = 0;
  std::size_t resamples = 0;
  double cond = 0.0;
  double err_dom_t = 0.0;
  double err_dom_tstar = 0.0;
  double err_gram = 0.0;
  double err_eigenvector = 0.0;
  bool cnp_accepted = false;
};

struct SweepResult {
  std::vector<SweepSample> samples;
  double max_err_dom_t = 0.0;
  double max_err_dom_tstar = 0.0;
  double max_err_gram = 0.0;
  double max_err_eigenvector = 0.0;
  bool all_cnp_accepted = true;
  double seconds = 0.0;
};

/// Random samples with condition number at most cond_max (redrawn until
/// they are), random h with |h| <= h_scale, and every cross-method error.
SweepResult identity_sweep(const SweepConfig& config, const Tolerances& tol = {});

}  // namespace cnplab

#endif  // CNPLAB_EXPERIMENTS_HPP
