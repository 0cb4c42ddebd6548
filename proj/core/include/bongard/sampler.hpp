#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "bongard/likelihood.hpp"
#include "bongard/pcfg.hpp"
#include "bongard/problem.hpp"
#include "bongard/rule.hpp"

namespace bongard {

struct SamplerConfig {
  std::size_t chains = 6;
  std::size_t samples_per_chain = 50000;  // retained after thinning
  std::size_t thinning = 10;
  std::size_t burn_in = 100000;
  double epsilon = 0.01;
  std::uint64_t seed = 1;
  /// Generation weights before pruning; the standard weights when unset.
  std::optional<PcfgWeights> weights;
  /// Zero the weight of productions the problem cannot exhibit.
  bool pragmatic_pruning = true;
  bool use_cache = true;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  /// Throws ConfigError on zero counts, epsilon outside (0, 1) or an
  /// improper PCFG.
  void validate() const;
};

/// Everything the sampler needs to know about one rule.
struct ScoredRule {
  double log_prior = 0.0;
  double log_likelihood = 0.0;
  int mistakes = 0;
  bool informative = true;
  bool undefined_hit = false;

  double log_posterior() const noexcept { return log_prior + log_likelihood; }
};

/// Scores rules against one problem, memoizing by rule identity. Shared by
/// all chains; concurrent lookups and inserts are safe and, since scores are
/// deterministic, racing inserts of the same key are harmless.
class RuleScorer {
 public:
  RuleScorer(const ProblemContext& ctx, double epsilon, bool use_cache = true);

  ScoredRule score(const Rule& rule);
  /// Distinct rules scored so far (tracked only with the cache enabled).
  std::size_t distinct_rules() const;
  std::size_t evaluations() const noexcept { return evaluations_.load(std::memory_order_relaxed); }

  const ProblemContext& context() const noexcept { return ctx_; }

 private:
  ScoredRule compute(const Rule& rule) const;

  static constexpr std::size_t kShards = 64;
  struct Shard {
    mutable std::shared_mutex mutex;
    std::unordered_map<std::string, ScoredRule> map;
  };

  const ProblemContext& ctx_;
  double epsilon_;
  bool use_cache_;
  std::array<bool, kProductionCount> informative_{};
  std::unique_ptr<Shard[]> shards_;
  std::atomic<std::size_t> evaluations_{0};
};

/// A subtree-regeneration proposal with forward and backward log
/// probabilities.
struct Proposal {
  Rule candidate;
  double log_q_forward = 0.0;
  double log_q_backward = 0.0;
};

/// Picks a node of `current` uniformly (the side selector included) and
/// regenerates its subtree from the PCFG.
Proposal propose(const Rule& current, const PcfgWeights& weights, Rng& rng);

/// Probability that one proposal step turns `from` into `to`. Sums over every
/// node whose regeneration could produce `to`, so identical and
/// near-identical pairs are counted exactly.
double log_proposal_probability(const Rule& from, const Rule& to, const PcfgWeights& weights);

struct ChainState {
  Rule rule;
  ScoredRule score;
};

/// One Metropolis-Hastings transition. Returns true if the candidate was
/// accepted.
bool mh_step(ChainState& state, RuleScorer& scorer, const PcfgWeights& weights, Rng& rng);

/// Draws rules from the PCFG until one has finite posterior.
ChainState initial_state(RuleScorer& scorer, const PcfgWeights& weights, Rng& rng, std::size_t max_attempts = 1000000);

/// Generation weights after applying the config's pruning to `ctx`.
PcfgWeights effective_weights(const SamplerConfig& config, const ProblemContext& ctx);

struct ChainSummary {
  std::size_t index = 0;
  std::size_t retained = 0;   // zero-mistake samples kept
  std::size_t discarded = 0;  // samples with mistakes
  std::size_t accepted = 0;
  std::size_t steps = 0;
  std::string top_rule;       // most frequent zero-mistake rule of this chain
  double top_proportion = 0.0;
};

/// Posterior summary: proportions of zero-mistake samples by canonical rule
/// text, split by side. Proportions over both sides sum to 1 when anything
/// was retained.
struct RuleDistribution {
  std::map<std::string, double> left;
  std::map<std::string, double> right;
  std::size_t total_retained = 0;
  std::size_t total_discarded = 0;

  const std::map<std::string, double>& side(Side s) const noexcept { return s == Side::Left ? left : right; }
  /// Rules of one side sorted by decreasing proportion, ties by text.
  std::vector<std::pair<std::string, double>> ranked(Side s) const;
};

struct RunResult {
  RuleDistribution distribution;
  std::vector<ChainSummary> chains;
  /// Every retained state, mistakes included, by canonical text.
  std::map<std::string, std::size_t> visits;
  std::size_t distinct_rules = 0;
};

/// Runs independent chains (seeded from config.seed and the chain index) and
/// aggregates their zero-mistake samples.
RunResult run(const ProblemContext& ctx, const SamplerConfig& config);

}  // namespace bongard
