#pragma once

// Run configuration for the command-line tool. The on-disk form is JSON:
//
//   {
//     "game":   {"A": [[...], ...], "B1": ..., "B2": ..., "Q1": ..., "Q2": ...,
//                "Q1N": ..., "Q2N": ..., "R1": ..., "R2": ..., "N": 9,
//                "x0": [...]},
//     "ar1":    {"rho": 0.5 | "rho_grid": [...],
//                "sigma0": 0.06 | "sigma0_grid": [...]},
//     "mc":     {"trials": 500, "base_seed": 20251018, "threads": 1,
//                "trace_rho": 0.5, "trace_sigma0": 0.06,
//                "deltax_trials": 50},
//     "output": {"directory": "out", "format": "csv"}
//   }
//
// Matrices are row-major arrays of rows. Every section except "game" is
// optional; missing keys take the defaults shown.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "lqgame/errors.hpp"
#include "lqgame/game.hpp"

namespace lqgame {

/// Malformed input: bad JSON, wrong types, ragged matrices, unknown keys.
class ConfigParseError : public Error {
 public:
  ConfigParseError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Well-formed input whose values violate a model invariant.
class ConfigValidationError : public Error {
 public:
  ConfigValidationError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A swept parameter: either one scalar or a grid.
struct ParamValues {
  std::vector<double> values;
  bool is_grid = false;

  bool operator==(const ParamValues&) const = default;
};

struct RunConfig {
  GameSpec game;
  struct Ar1 {
    ParamValues rho;
    ParamValues sigma0;
    bool operator==(const Ar1&) const = default;
  } ar1;
  struct MonteCarlo {
    std::size_t trials = 500;
    std::uint64_t base_seed = 20251018;
    unsigned threads = 1;
    double trace_rho = 0.5;
    double trace_sigma0 = 0.06;
    std::size_t deltax_trials = 50;
    bool operator==(const MonteCarlo&) const = default;
  } mc;
  struct Output {
    std::string directory = "out";
    std::string format = "csv";
    bool operator==(const Output&) const = default;
  } output;
};

bool operator==(const RunConfig& a, const RunConfig& b);

enum class Command { kNash, kMoments, kSweep };

/// Benchmark game plus the parameter set each command reproduces:
/// nash -> rho 0.5, sigma0 0.06; moments -> rho 0.5, sigma0 grid
/// {0.15, 0.30, 0.45, 0.60}; sweep -> rho grid {0, .2, .4, .6, .8, .9} x
/// sigma0 grid {0.02, 0.04, 0.06, 0.08}, 500 trials. The benchmark x0 is used
/// for nominal rollouts; sweeps always start from zero.
RunConfig default_config(Command command);

/// Throws ConfigParseError / ConfigValidationError naming the offending path.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);
/// Throws IoError if the file cannot be read.
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& config);

}  // namespace lqgame
