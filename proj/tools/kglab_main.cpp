#include <CLI11.hpp>

#include <iostream>

#include "kglab/runner/config.hpp"
#include "kglab/runner/run.hpp"

int main(int argc, char** argv) {
  namespace runner = kglab::runner;

  CLI::App app{"Pseudospectral Klein-Gordon laboratory"};
  std::string command;
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  unsigned threads = 0;

  std::string names;
  for (const auto& c : runner::known_commands()) names += (names.empty() ? "" : ", ") + c;
  app.add_option("command", command, "Subcommand (overrides 'command' in the config): " + names);
  app.add_option("--config", config_path, "Run configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Seed for stochastic commands (overrides the config)");
  app.add_option("--out", out_dir, "Output directory (overrides the config)");
  app.add_option("--threads", threads, "Worker threads, 0 = hardware concurrency");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : runner::exit_config_error;
  }

  runner::RunConfig cfg;
  try {
    cfg = config_path.empty() ? runner::parse_config("") : runner::load_config(config_path);
  } catch (const runner::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return runner::exit_config_error;
  }
  if (!command.empty()) cfg.command = command;
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (threads != 0) cfg.threads = threads;
  if (cfg.command.empty()) {
    std::cerr << "error: no command given (choose one of: " << names << ")\n";
    return runner::exit_config_error;
  }
  return runner::run(cfg, std::cerr);
}
