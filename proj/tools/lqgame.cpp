// lqgame: Nash gains, deviation moments and compensator sweeps for the
// two-player LQ benchmark game.
//
//   lqgame nash    [--config FILE] [--out DIR]
//   lqgame moments [--config FILE] [--out DIR]
//   lqgame sweep   [--config FILE] [--out DIR] [--seed S] [--trials M]
//                  [--threads T]
//   lqgame <cmd> --dump-default-config
//
// Exit codes: 0 ok, 1 usage, 2 config parse, 3 config validation,
// 4 solver, 5 I/O.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lqgame/commands.hpp"
#include "lqgame/config.hpp"
#include "lqgame/errors.hpp"

namespace {

enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kSolver = 4,
  kIo = 5,
};

struct Options {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<unsigned> threads;
  bool dump_default = false;
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config_path, "JSON run configuration");
  sub->add_option("--out", opt.out_dir, "Output directory");
  sub->add_option("--seed", opt.seed, "Override mc.base_seed");
  sub->add_option("--trials", opt.trials, "Override mc.trials")
      ->check(CLI::PositiveNumber);
  sub->add_option("--threads", opt.threads, "Override mc.threads")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--dump-default-config", opt.dump_default,
                "Print this command's default configuration and exit");
}

int run(lqgame::Command command, const Options& opt) {
  using namespace lqgame;
  if (opt.dump_default) {
    std::cout << to_json(default_config(command)).dump(2) << '\n';
    return kOk;
  }
  RunConfig config = opt.config_path.empty() ? default_config(command)
                                             : load_config(opt.config_path);
  if (opt.seed) config.mc.base_seed = *opt.seed;
  if (opt.trials) config.mc.trials = *opt.trials;
  if (opt.threads) config.mc.threads = *opt.threads;
  const std::string out =
      opt.out_dir.empty() ? config.output.directory : opt.out_dir;

  switch (command) {
    case Command::kNash:
      cmd_nash(config, out);
      break;
    case Command::kMoments:
      cmd_moments(config, out);
      break;
    case Command::kSweep:
      cmd_sweep(config, out);
      break;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feedback Nash LQ game with AR(1) deviation compensation"};
  app.require_subcommand(1);

  Options opt;
  std::optional<lqgame::Command> command;
  const struct {
    const char* name;
    const char* help;
    lqgame::Command cmd;
  } subs[] = {
      {"nash", "Solve the game; write gains, Riccati matrices, diagnostics",
       lqgame::Command::kNash},
      {"moments", "Deviation moments, bound certificate and scaling table",
       lqgame::Command::kMoments},
      {"sweep", "Monte Carlo compensator sweep over (rho, sigma0)",
       lqgame::Command::kSweep},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, opt);
    sub->callback([&command, c = s.cmd] { command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return run(*command, opt);
  } catch (const lqgame::ConfigParseError& e) {
    std::cerr << "config parse error: " << e.what() << '\n';
    return kParse;
  } catch (const lqgame::ConfigValidationError& e) {
    std::cerr << "config validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const lqgame::DimensionMismatch& e) {
    std::cerr << "config validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const lqgame::IndefiniteWeight& e) {
    std::cerr << "config validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const lqgame::InvalidParams& e) {
    std::cerr << "config validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const lqgame::SingularStageSystem& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const lqgame::SweepCellError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const lqgame::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolver;
  }
}
