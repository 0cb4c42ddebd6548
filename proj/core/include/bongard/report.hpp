#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "bongard/likelihood.hpp"
#include "bongard/sampler.hpp"

namespace bongard {

struct SolveReport {
  struct Row {
    std::string rule;  // canonical text without the side prefix
    double proportion = 0.0;
  };
  struct Table {
    std::vector<Row> rows;
    double remaining = 0.0;  // mass of this side's rules not listed
  };

  Table left;
  Table right;
  std::size_t retained = 0;
  std::size_t discarded = 0;
  std::size_t distinct_rules = 0;
  SamplerConfig config;
  std::vector<ChainSummary> chains;

  const Table& side(Side s) const noexcept { return s == Side::Left ? left : right; }
};

inline constexpr int kReportSchemaVersion = 1;

/// Top `top` rules per side plus the remaining mass of each side.
SolveReport make_solve_report(const RunResult& result, const SamplerConfig& config, std::size_t top = 5);

/// Aligned plain-text tables, one per side.
std::string format_text(const SolveReport& report);
std::string format_json(const SolveReport& report);

/// Applies a JSON config file (keys: chains, samples, thinning, burn_in,
/// epsilon, seed, pruning, cache, threads, recursive_weight) on top of
/// `base`. Throws ConfigError on unknown keys or bad values.
SamplerConfig load_config(const std::filesystem::path& path, SamplerConfig base = {});
SamplerConfig parse_config(const std::string& json_text, SamplerConfig base = {});

/// "TTTTTT FFFFFF" style rendering of a truth vector.
std::string format_truth(const TruthVector& truth);

std::string format_compatibility(const CompatibilityReport& report);

/// One TSV row per original figure of a scene.
std::string features_tsv(const Scene& scene, bool header = true);

}  // namespace bongard
