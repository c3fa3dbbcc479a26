// Command line front end: run, verify-operator, verify-linear.
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "shakhov/config.hpp"
#include "shakhov/error.hpp"
#include "shakhov/io.hpp"
#include "shakhov/verify.hpp"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

shakhov::SimConfig load(const Overrides& o) {
  shakhov::SimConfig config = shakhov::load_config(o.config_path);
  if (o.seed) config.seed = *o.seed;
  if (o.out) config.output_path = *o.out;
  return config;
}

int cmd_run(const shakhov::SimConfig& config) {
  const shakhov::RunResult result = shakhov::run(config);
  shakhov::write_csv(config.output_path, result.records);
  std::cout << "wrote " << result.records.size() << " records to " << config.output_path << '\n';
  std::cout << shakhov::format_summary(shakhov::summarize_run(config, result));
  if (result.error) {
    std::cerr << "solver failure: " << *result.error << " (last good time " << result.last_good_time << ")\n";
    return kCheckFailed;
  }
  return kOk;
}

int report(const shakhov::Report& r) {
  std::cout << r.format();
  return r.passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shakhov relaxation model: solver and identity checks"};
  app.require_subcommand(1);

  Overrides o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("config", o.config_path, "flat key = value config file")->required();
    sub->add_option("--seed", o.seed, "override the config seed");
    sub->add_option("--out", o.out, "override the CSV output path");
  };
  auto* run = app.add_subcommand("run", "run the solver, write the CSV, print a summary");
  auto* vop = app.add_subcommand("verify-operator", "conservation, cancellation, BGK reduction, fixed point");
  auto* vlin = app.add_subcommand("verify-linear", "projections, coercivity, Jacobian, Gamma residual");
  int samples = 100;
  add_common(run);
  add_common(vop);
  add_common(vlin);
  vop->add_option("--samples", samples, "number of random states")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  shakhov::SimConfig config;
  try {
    config = load(o);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*run) return cmd_run(config);
    if (*vop) return report(shakhov::verify_operator(config, samples));
    return report(shakhov::verify_linear(config));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}
