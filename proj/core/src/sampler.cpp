#include "bongard/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "bongard/error.hpp"
#include "bongard/prior.hpp"

namespace bongard {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Rule rule_from_key(const std::string& key) {
  std::vector<Production> nodes(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) nodes[i] = static_cast<Production>(static_cast<unsigned char>(key[i]));
  return Rule(std::move(nodes));
}

double log_sum_exp(const std::vector<double>& terms) {
  double hi = kNegInf;
  for (double t : terms) hi = std::max(hi, t);
  if (hi == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - hi);
  return hi + std::log(sum);
}

}  // namespace

void SamplerConfig::validate() const {
  if (chains == 0) throw ConfigError("chains must be positive");
  if (samples_per_chain == 0) throw ConfigError("samples per chain must be positive");
  if (thinning == 0) throw ConfigError("thinning must be positive");
  validate_epsilon(epsilon);
  if (weights && !check_properness(*weights)) throw ConfigError("PCFG weights are improper (infinite expected size)");
}

RuleScorer::RuleScorer(const ProblemContext& ctx, double epsilon, bool use_cache)
    : ctx_(ctx), epsilon_(epsilon), use_cache_(use_cache), informative_(informative_productions(ctx)),
      shards_(std::make_unique<Shard[]>(kShards)) {
  validate_epsilon(epsilon);
}

ScoredRule RuleScorer::compute(const Rule& rule) const {
  ScoredRule s;
  s.log_prior = log_prior(rule);
  s.informative = std::all_of(rule.nodes().begin(), rule.nodes().end(),
                              [&](Production p) { return informative_[static_cast<std::size_t>(p)]; });
  // Uninformative rules have zero likelihood whatever they evaluate to.
  if (!s.informative) {
    s.log_likelihood = kNegInf;
    return s;
  }
  const auto report = make_report(rule, eval_rule(rule, ctx_), true);
  s.mistakes = report.mistakes;
  s.undefined_hit = report.undefined_hit;
  s.log_likelihood = soft_log_likelihood(report, epsilon_);
  return s;
}

ScoredRule RuleScorer::score(const Rule& rule) {
  if (!use_cache_) {
    evaluations_.fetch_add(1, std::memory_order_relaxed);
    return compute(rule);
  }
  std::string key = rule.key();
  Shard& shard = shards_[std::hash<std::string>{}(key) % kShards];
  {
    std::shared_lock lock(shard.mutex);
    if (auto it = shard.map.find(key); it != shard.map.end()) return it->second;
  }
  evaluations_.fetch_add(1, std::memory_order_relaxed);
  const ScoredRule s = compute(rule);
  std::unique_lock lock(shard.mutex);
  shard.map.emplace(std::move(key), s);
  return s;
}

std::size_t RuleScorer::distinct_rules() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < kShards; ++i) {
    std::shared_lock lock(shards_[i].mutex);
    n += shards_[i].map.size();
  }
  return n;
}

double log_proposal_probability(const Rule& from, const Rule& to, const PcfgWeights& weights) {
  const auto x = from.nodes();
  const auto y = to.nodes();
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  std::vector<double> terms;

  if (from == to) {
    for (std::size_t j = 0; j < nx; ++j)
      terms.push_back(log_generation_probability(weights, x.subspan(j, from.subtree_end(j) - j)));
    return log_sum_exp(terms) - std::log(static_cast<double>(nx));
  }

  std::size_t prefix = 0;
  while (prefix < nx && prefix < ny && x[prefix] == y[prefix]) ++prefix;
  std::size_t suffix = 0;
  const std::size_t max_suffix = std::min(nx, ny) - prefix;
  while (suffix < max_suffix && x[nx - 1 - suffix] == y[ny - 1 - suffix]) ++suffix;

  // A node j can produce `to` if its subtree covers every differing position
  // and the part of `to` in its place is itself one subtree.
  for (std::size_t j = 0; j <= prefix && j < nx; ++j) {
    const std::size_t ex = from.subtree_end(j);
    if (ex + suffix < nx) continue;
    const std::size_t ey = to.subtree_end(j);
    if (ny - ey != nx - ex) continue;
    terms.push_back(log_generation_probability(weights, y.subspan(j, ey - j)));
  }
  return log_sum_exp(terms) - std::log(static_cast<double>(nx));
}

Proposal propose(const Rule& current, const PcfgWeights& weights, Rng& rng) {
  const std::size_t n = current.size();
  const std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  const std::size_t end = current.subtree_end(i);
  const auto nodes = current.nodes();
  std::vector<Production> next(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(i));
  generate(weights, production_info(nodes[i]).lhs, rng, next);
  next.insert(next.end(), nodes.begin() + static_cast<std::ptrdiff_t>(end), nodes.end());

  Proposal p{Rule(std::move(next)), 0.0, 0.0};
  p.log_q_forward = log_proposal_probability(current, p.candidate, weights);
  p.log_q_backward = log_proposal_probability(p.candidate, current, weights);
  return p;
}

bool mh_step(ChainState& state, RuleScorer& scorer, const PcfgWeights& weights, Rng& rng) {
  Proposal p = propose(state.rule, weights, rng);
  const ScoredRule s = scorer.score(p.candidate);
  const double target = s.log_posterior();
  if (!std::isfinite(target)) return false;
  const double log_ratio = target + p.log_q_backward - state.score.log_posterior() - p.log_q_forward;
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (log_ratio >= 0.0 || std::log(u) < log_ratio) {
    state.rule = std::move(p.candidate);
    state.score = s;
    return true;
  }
  return false;
}

ChainState initial_state(RuleScorer& scorer, const PcfgWeights& weights, Rng& rng, std::size_t max_attempts) {
  std::vector<Production> nodes;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    nodes.clear();
    generate(weights, NonTerminal::R, rng, nodes);
    Rule rule(nodes);
    const ScoredRule s = scorer.score(rule);
    if (std::isfinite(s.log_posterior())) return {std::move(rule), s};
  }
  throw ConfigError("no rule with nonzero posterior found to start a chain");
}

PcfgWeights effective_weights(const SamplerConfig& config, const ProblemContext& ctx) {
  PcfgWeights w = config.weights.value_or(PcfgWeights::standard());
  if (config.pragmatic_pruning) w = w.restricted(informative_productions(ctx));
  if (!check_properness(w)) throw ConfigError("PCFG weights are improper (infinite expected size)");
  return w;
}

std::vector<std::pair<std::string, double>> RuleDistribution::ranked(Side s) const {
  const auto& m = side(s);
  std::vector<std::pair<std::string, double>> out(m.begin(), m.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

namespace {

struct ChainOutput {
  ChainSummary summary;
  std::unordered_map<std::string, std::size_t> counts;  // by rule key, all retained states
  std::unordered_map<std::string, int> mistakes;
};

ChainOutput run_chain(std::size_t index, RuleScorer& scorer, const PcfgWeights& weights, const SamplerConfig& config) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  Rng rng(seq);
  ChainOutput out;
  out.summary.index = index;
  ChainState state = initial_state(scorer, weights, rng);
  auto step = [&] {
    out.summary.accepted += mh_step(state, scorer, weights, rng) ? 1 : 0;
    ++out.summary.steps;
  };
  for (std::size_t t = 0; t < config.burn_in; ++t) step();
  for (std::size_t s = 0; s < config.samples_per_chain; ++s) {
    for (std::size_t t = 0; t < config.thinning; ++t) step();
    std::string key = state.rule.key();
    out.mistakes.emplace(key, state.score.mistakes);
    ++out.counts[std::move(key)];
    if (state.score.mistakes == 0)
      ++out.summary.retained;
    else
      ++out.summary.discarded;
  }
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& [key, count] : out.counts) {
    if (out.mistakes.at(key) != 0) continue;
    if (count > best_count || (count == best_count && best && key < *best)) best = &key, best_count = count;
  }
  if (best) {
    out.summary.top_rule = to_string(rule_from_key(*best));
    out.summary.top_proportion = static_cast<double>(best_count) / static_cast<double>(out.summary.retained);
  }
  return out;
}

}  // namespace

RunResult run(const ProblemContext& ctx, const SamplerConfig& config) {
  config.validate();
  const PcfgWeights weights = effective_weights(config, ctx);
  RuleScorer scorer(ctx, config.epsilon, config.use_cache);

  std::vector<ChainOutput> outputs(config.chains);
  std::size_t workers = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, config.chains);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t c; (c = next.fetch_add(1)) < config.chains;) {
      try {
        outputs[c] = run_chain(c, scorer, weights, config);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  // Merge in chain order; sums make the result independent of it anyway.
  std::map<std::string, std::size_t> zero_mistake;
  RunResult result;
  for (auto& out : outputs) {
    for (const auto& [key, count] : out.counts) {
      const std::string text = to_string(rule_from_key(key));
      result.visits[text] += count;
      if (out.mistakes.at(key) == 0) zero_mistake[key] += count;
    }
    result.distribution.total_retained += out.summary.retained;
    result.distribution.total_discarded += out.summary.discarded;
    result.chains.push_back(out.summary);
  }
  const auto total = static_cast<double>(result.distribution.total_retained);
  for (const auto& [key, count] : zero_mistake) {
    const Rule rule = rule_from_key(key);
    auto& side = rule.side() == Side::Left ? result.distribution.left : result.distribution.right;
    side[to_string(rule)] += static_cast<double>(count) / total;
  }
  result.distinct_rules = config.use_cache ? scorer.distinct_rules() : scorer.evaluations();
  return result;
}

}  // namespace bongard
