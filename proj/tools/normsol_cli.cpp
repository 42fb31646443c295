// normsol: normalized solutions of -Delta u = lambda u + f(u), |u|_2 = a.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normsol/runs.hpp"

namespace {

std::string keys_help() {
  std::string text = "\nConfiguration keys (config file lines \"key = value\" or --key=value):\n";
  for (const auto& k : normsol::config_keys()) {
    std::string name = "  " + k.name;
    name.resize(22, ' ');
    text += name + k.help + "\n";
  }
  text += "\nOutput directory: --out, else out_dir; " + std::string(normsol::kOutDirVariable) +
          " overrides both when set.\nExit status: 0 success, 1 failure, 2 configuration error.\n";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normalized solutions solver"};
  app.footer(keys_help());
  app.require_subcommand(1);
  app.allow_extras();

  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "random seed");

  std::vector<CLI::App*> subs = {
      app.add_subcommand("solve", "solve at one mu; writes profile.csv and report.json"),
      app.add_subcommand("sweep", "continuation sweep over mu; writes sweep.csv and summary.json"),
      app.add_subcommand("check", "run the numerical property suite"),
      app.add_subcommand("constants", "Sobolev, Gagliardo-Nirenberg and Trudinger-Moser values")};
  for (auto* s : subs) {
    s->allow_extras();
    s->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  normsol::RunConfig cfg;
  CLI::App* chosen = app.get_subcommands().front();
  cfg.mode = chosen->get_name();
  try {
    if (!config_path.empty()) normsol::apply_config_file(cfg, config_path);
    normsol::apply_overrides(cfg, app.remaining(true));
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.validate();
  } catch (const normsol::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cfg.mode == "solve") return normsol::run_solve(cfg, std::cout, std::cerr);
    if (cfg.mode == "sweep") return normsol::run_sweep(cfg, std::cout, std::cerr);
    if (cfg.mode == "check") return normsol::run_checks(cfg, std::cout, std::cerr);
    return normsol::run_constants(cfg, std::cout, std::cerr);
  } catch (const normsol::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
