#include "bongard/report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "bongard/error.hpp"

namespace bongard {

using nlohmann::json;

namespace {

std::string strip_side(const std::string& text) {
  const auto colon = text.find(':');
  return colon == std::string::npos ? text : text.substr(colon + 1);
}

SolveReport::Table make_table(const RuleDistribution& dist, Side side, std::size_t top) {
  SolveReport::Table table;
  double total = 0.0;
  for (const auto& [text, p] : dist.ranked(side)) {
    total += p;
    if (table.rows.size() < top) table.rows.push_back({strip_side(text), p});
  }
  double listed = 0.0;
  for (const auto& row : table.rows) listed += row.proportion;
  table.remaining = std::max(0.0, total - listed);
  return table;
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

}  // namespace

SolveReport make_solve_report(const RunResult& result, const SamplerConfig& config, std::size_t top) {
  SolveReport r;
  r.left = make_table(result.distribution, Side::Left, top);
  r.right = make_table(result.distribution, Side::Right, top);
  r.retained = result.distribution.total_retained;
  r.discarded = result.distribution.total_discarded;
  r.distinct_rules = result.distinct_rules;
  r.config = config;
  r.chains = result.chains;
  return r;
}

std::string format_text(const SolveReport& report) {
  std::ostringstream out;
  out << "Samples: " << report.retained << "  Runs: " << report.config.chains << "  Burn-in: " << report.config.burn_in
      << "  Thinning: " << report.config.thinning << "  Discarded rules with mistakes: " << report.discarded << '\n';
  for (Side side : {Side::Left, Side::Right}) {
    const auto& t = report.side(side);
    std::size_t width = std::string_view("Remaining rules").size();
    for (const auto& row : t.rows) width = std::max(width, row.rule.size());
    out << '\n' << (side == Side::Left ? "LEFT" : "RIGHT") << '\n';
    out << std::left << std::setw(static_cast<int>(width)) << "Rule" << "  p\n";
    for (const auto& row : t.rows)
      out << std::left << std::setw(static_cast<int>(width)) << row.rule << "  " << fixed(row.proportion, 4) << '\n';
    out << std::left << std::setw(static_cast<int>(width)) << "Remaining rules" << "  " << fixed(t.remaining, 4) << '\n';
  }
  out << "\nchain  accepted  top rule\n";
  for (const auto& c : report.chains) {
    out << std::left << std::setw(5) << c.index << "  " << std::setw(8)
        << fixed(c.steps ? static_cast<double>(c.accepted) / static_cast<double>(c.steps) : 0.0, 4) << "  "
        << (c.top_rule.empty() ? "-" : c.top_rule + " (" + fixed(c.top_proportion, 4) + ")") << '\n';
  }
  return out.str();
}

std::string format_json(const SolveReport& report) {
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["samples_retained"] = report.retained;
  doc["discarded_with_mistakes"] = report.discarded;
  doc["distinct_rules"] = report.distinct_rules;
  const auto& c = report.config;
  doc["config"] = {{"chains", c.chains},     {"samples", c.samples_per_chain}, {"thinning", c.thinning},
                   {"burn_in", c.burn_in},   {"epsilon", c.epsilon},           {"seed", c.seed},
                   {"pruning", c.pragmatic_pruning}, {"cache", c.use_cache}};
  doc["runs"] = c.chains;
  for (Side side : {Side::Left, Side::Right}) {
    const char* name = side == Side::Left ? "LEFT" : "RIGHT";
    json rules = json::array();
    for (const auto& row : report.side(side).rows)
      rules.push_back({{"rule", std::string(name) + ":" + row.rule}, {"side", name}, {"proportion", row.proportion}});
    doc["sides"][name] = {{"rules", rules}, {"remaining", report.side(side).remaining}};
  }
  json chains = json::array();
  for (const auto& ch : report.chains)
    chains.push_back({{"index", ch.index},
                      {"retained", ch.retained},
                      {"discarded", ch.discarded},
                      {"steps", ch.steps},
                      {"accepted", ch.accepted},
                      {"top_rule", ch.top_rule},
                      {"top_proportion", ch.top_proportion}});
  doc["chains"] = chains;
  return doc.dump(2);
}

SamplerConfig parse_config(const std::string& json_text, SamplerConfig base) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  auto count = [](const json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("'" + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
  };
  for (const auto& [key, v] : doc.items()) {
    try {
      if (key == "chains") base.chains = count(v, key);
      else if (key == "samples" || key == "samples_per_chain") base.samples_per_chain = count(v, key);
      else if (key == "thinning") base.thinning = count(v, key);
      else if (key == "burn_in" || key == "burn-in") base.burn_in = count(v, key);
      else if (key == "threads") base.threads = count(v, key);
      else if (key == "seed") base.seed = v.get<std::uint64_t>();
      else if (key == "epsilon") {
        base.epsilon = v.get<double>();
        validate_epsilon(base.epsilon);
      }
      else if (key == "pruning") base.pragmatic_pruning = v.get<bool>();
      else if (key == "cache") base.use_cache = v.get<bool>();
      else if (key == "recursive_weight") base.weights = PcfgWeights::standard(v.get<double>());
      else throw ConfigError("unknown config key '" + key + "'");
    } catch (const json::exception&) {
      throw ConfigError("config key '" + key + "' has the wrong type");
    }
  }
  return base;
}

SamplerConfig load_config(const std::filesystem::path& path, SamplerConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

std::string format_truth(const TruthVector& truth) {
  std::string s;
  for (std::size_t k = 0; k < kSceneCount; ++k) {
    if (k == kScenesPerSide) s += ' ';
    s += truth_char(truth[k]);
  }
  return s;
}

std::string format_compatibility(const CompatibilityReport& r) {
  std::ostringstream out;
  out << "truth:       " << format_truth(r.truth) << '\n'
      << "mistakes:    " << r.mistakes << '\n'
      << "undefined:   " << (r.undefined_hit ? "yes" : "no") << '\n'
      << "informative: " << (r.informative ? "yes" : "no") << '\n'
      << "compatible:  " << (r.compatible ? "yes" : "no") << '\n';
  return out.str();
}

std::string features_tsv(const Scene& scene, bool header) {
  std::ostringstream out;
  if (header) {
    out << "scene\tid\tpixels\tshape\tfill";
    for (Attribute a : kAllAttributes)
      if (a != Attribute::Distance) out << '\t' << attribute_name(a);
    out << '\n';
  }
  for (std::size_t i = 0; i < scene.original_count(); ++i) {
    const auto& o = scene.object(i);
    out << scene.index() << '\t' << o.id << '\t' << o.pixel_count << '\t' << shape_name(o.shape) << '\t'
        << fill_name(o.fill);
    for (Attribute a : kAllAttributes)
      if (a != Attribute::Distance) out << '\t' << fixed(o.attributes.value(a), 4);
    out << '\n';
  }
  return out.str();
}

}  // namespace bongard
