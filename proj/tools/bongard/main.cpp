// Command-line front end: solve, eval, synth, features.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bongard/error.hpp"
#include "bongard/likelihood.hpp"
#include "bongard/problem.hpp"
#include "bongard/report.hpp"
#include "bongard/rule.hpp"
#include "bongard/sampler.hpp"
#include "bongard/synth.hpp"

namespace fs = std::filesystem;
using namespace bongard;

namespace {

struct SamplerFlags {
  std::optional<std::size_t> chains, samples, thinning, burn_in, threads;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  std::string config;
  bool no_pruning = false;
  bool no_cache = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--chains", chains, "Independent chains");
    cmd->add_option("--samples", samples, "Retained samples per chain");
    cmd->add_option("--thinning", thinning, "Steps between retained samples");
    cmd->add_option("--burn-in", burn_in, "Discarded initial steps per chain");
    cmd->add_option("--epsilon", epsilon, "Soft likelihood base, 0 < epsilon < 1");
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
    cmd->add_option("--config", config, "JSON config file; flags override it");
    cmd->add_flag("--no-pruning", no_pruning, "Keep uninformative productions in the PCFG");
    cmd->add_flag("--no-cache", no_cache, "Disable the rule evaluation cache");
  }

  SamplerConfig resolve() const {
    SamplerConfig c;
    if (!config.empty()) c = load_config(config, c);
    if (chains) c.chains = *chains;
    if (samples) c.samples_per_chain = *samples;
    if (thinning) c.thinning = *thinning;
    if (burn_in) c.burn_in = *burn_in;
    if (threads) c.threads = *threads;
    if (epsilon) c.epsilon = *epsilon;
    if (seed) c.seed = *seed;
    if (no_pruning) c.pragmatic_pruning = false;
    if (no_cache) c.use_cache = false;
    c.validate();
    return c;
  }
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bongard problem solver"};
  app.require_subcommand(1);

  std::string manifest;
  std::string json_path;
  std::size_t top = 5;
  SamplerFlags flags;
  auto* solve = app.add_subcommand("solve", "Infer the posterior over rules for one problem");
  solve->add_option("manifest,--manifest", manifest, "Problem manifest (text or JSON)")->required();
  solve->add_option("--top", top, "Rules listed per side");
  solve->add_option("--json", json_path, "Also write the report as JSON");
  flags.attach(solve);

  std::string rule_text;
  auto* eval = app.add_subcommand("eval", "Evaluate one rule on a problem");
  eval->add_option("--manifest", manifest, "Problem manifest")->required();
  eval->add_option("rule", rule_text, "Rule, e.g. LEFT:EXISTS(FIGURES)")->required();

  std::string template_name;
  std::uint64_t synth_seed = 1;
  std::string out_dir;
  auto* synth = app.add_subcommand("synth", "Render a synthetic problem");
  synth->add_option("--template", template_name, "Template name")->required();
  synth->add_option("--seed", synth_seed, "Random seed");
  synth->add_option("--out", out_dir, "Output directory")->required();
  synth->add_flag_callback("--list", [] {
    for (auto name : template_names()) std::cout << name << '\n';
    std::exit(0);
  }, "List templates and exit");

  auto* features = app.add_subcommand("features", "Print per-figure attributes as TSV");
  features->add_option("manifest,--manifest", manifest, "Problem manifest")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const SamplerConfig config = flags.resolve();
      const ProblemContext ctx = load_problem(load_manifest(manifest));
      const RunResult result = run(ctx, config);
      const SolveReport report = make_solve_report(result, config, top);
      std::cout << format_text(report);
      if (!json_path.empty()) write_file(json_path, format_json(report) + "\n");
    } else if (*eval) {
      const Rule rule = parse_rule(rule_text);
      const ProblemContext ctx = load_problem(load_manifest(manifest));
      std::cout << "rule:        " << to_string(rule) << '\n' << format_compatibility(compatibility(rule, ctx));
    } else if (*synth) {
      const SynthProblem problem = make_problem(template_name, synth_seed);
      const Manifest m = write_problem(problem, out_dir);
      std::cout << (fs::path(out_dir) / "manifest.txt").string() << '\n';
    } else if (*features) {
      const ProblemContext ctx = load_problem(load_manifest(manifest));
      bool header = true;
      for (const auto& scene : ctx.scenes()) {
        std::cout << features_tsv(scene, header);
        header = false;
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
