// bargweyl experiment harness: verification suite, norm sweeps, Gevrey decay
// fits and quantization cross-checks over weighted Bargmann spaces.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bargweyl/bargmann.hpp"
#include "bargweyl/lab.hpp"

namespace {

struct CommonOpts {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool quick = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config, "experiment config file (INI-style; see README)");
  cmd->add_option("--out", o.out, "output directory (overrides output.dir)");
  cmd->add_option("--seed", o.seed, "seed override")->each([&](const std::string&) {
    o.seed_set = true;
  });
  cmd->add_option("--threads", o.threads, "worker threads for independent h points");
  cmd->add_flag("--quick", o.quick, "reduced sample counts");
}

bargweyl::ExperimentConfig load_config(const CommonOpts& o) {
  bargweyl::ExperimentConfig cfg;
  if (!o.config.empty()) cfg = bargweyl::parse_config_file(o.config);
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (o.seed_set) cfg.seed = o.seed;
  if (o.threads > 0) cfg.threads = o.threads;
  if (o.quick) cfg.quick = true;
  return cfg;
}

int emit(const bargweyl::Report& rep, const bargweyl::ExperimentConfig& cfg) {
  bargweyl::write_report(rep, cfg.out_dir);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << rep.csv;
  std::cout << "# wrote " << cfg.out_dir << "/" << rep.experiment << ".{csv,json} in "
            << rep.wall_ms << " ms\n";
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiclassical Weyl calculus lab on weighted Bargmann spaces"};
  app.require_subcommand(1);

  CommonOpts o_verify, o_sweep, o_fit, o_decomp, o_compose;
  CLI::App* c_verify = app.add_subcommand("verify", "run every module's invariant suite");
  add_common(c_verify, o_verify);
  CLI::App* c_sweep = app.add_subcommand("norm-sweep", "operator norms on H_Phi1 over an h grid");
  add_common(c_sweep, o_sweep);
  CLI::App* c_fit = app.add_subcommand("gevrey-fit", "windowed-transform decay fits");
  add_common(c_fit, o_fit);
  CLI::App* c_decomp =
      app.add_subcommand("decomp-check", "rank-one decomposition vs superposition");
  add_common(c_decomp, o_decomp);
  CLI::App* c_compose = app.add_subcommand("compose", "ad-hoc a#b evaluation");
  add_common(c_compose, o_compose);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_verify->parsed()) {
      auto cfg = load_config(o_verify);
      return emit(bargweyl::run_verify(cfg), cfg);
    }
    if (c_sweep->parsed()) {
      auto cfg = load_config(o_sweep);
      return emit(bargweyl::run_norm_sweep(cfg), cfg);
    }
    if (c_fit->parsed()) {
      auto cfg = load_config(o_fit);
      return emit(bargweyl::run_gevrey_fit(cfg), cfg);
    }
    if (c_decomp->parsed()) {
      auto cfg = load_config(o_decomp);
      return emit(bargweyl::run_decomposition_check(cfg), cfg);
    }
    if (c_compose->parsed()) {
      auto cfg = load_config(o_compose);
      return emit(bargweyl::run_compose(cfg), cfg);
    }
  } catch (const bargweyl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const bargweyl::ConditioningError& e) {
    std::cerr << "conditioning error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
