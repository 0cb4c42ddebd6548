#include "bongard/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace bongard {

char truth_char(Truth t) noexcept {
  switch (t) {
    case Truth::True: return 'T';
    case Truth::False: return 'F';
    case Truth::Undefined: break;
  }
  return 'U';
}

double angular_spread(std::span<const double> angles) noexcept {
  if (angles.size() < 2) return 0.0;
  constexpr double pi = std::numbers::pi;
  std::vector<double> a(angles.begin(), angles.end());
  for (double& v : a) {
    v = std::fmod(v, pi);
    if (v < 0) v += pi;
  }
  std::sort(a.begin(), a.end());
  double largest_gap = pi - a.back() + a.front();
  for (std::size_t i = 1; i < a.size(); ++i) largest_gap = std::max(largest_gap, a[i] - a[i - 1]);
  return pi - largest_gap;
}

double dispersion(std::span<const double> values, bool circular) noexcept {
  const auto n = static_cast<double>(values.size());
  if (values.size() < 2) return 0.0;
  if (circular) {
    std::complex<double> sum;
    for (double v : values) sum += std::polar(1.0, 2.0 * v);
    return std::max(0.0, 1.0 - std::abs(sum) / n);
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / (n - 1.0);
}

namespace {

double direction(const FigureObject& a, const FigureObject& b) {
  return std::atan2(b.centroid.y - a.centroid.y, b.centroid.x - a.centroid.x);
}

bool collinear(const Scene& scene, std::span<const std::size_t> idx, double tolerance, std::vector<double>& buf) {
  buf.clear();
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) buf.push_back(direction(scene.object(idx[a]), scene.object(idx[b])));
  return angular_spread(buf) <= tolerance;
}

ObjectSet to_set(std::span<const std::size_t> idx) {
  ObjectSet s;
  for (auto i : idx) s.insert(i);
  return s;
}

ObjectSet aligned_exhaustive(const Scene& scene, const std::vector<std::size_t>& members, double tolerance) {
  const std::size_t n = members.size();
  std::vector<std::size_t> best;
  std::vector<std::size_t> pick;
  std::vector<double> buf;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k < 3 || k < best.size()) continue;
    pick.clear();
    for (std::size_t b = 0; b < n; ++b)
      if (mask & (1U << b)) pick.push_back(members[b]);
    if (k == best.size() && !(pick < best)) continue;
    if (collinear(scene, pick, tolerance, buf)) best = pick;
  }
  return to_set(best);
}

ObjectSet aligned_greedy(const Scene& scene, const std::vector<std::size_t>& members, double tolerance) {
  std::vector<std::size_t> best;
  std::vector<double> buf;
  constexpr double pi = std::numbers::pi;
  auto angle_gap = [&](double u, double v) {
    double d = std::fmod(std::abs(u - v), pi);
    return std::min(d, pi - d);
  };
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const double line = direction(scene.object(members[a]), scene.object(members[b]));
      std::vector<std::size_t> pick = {members[a], members[b]};
      for (std::size_t c = 0; c < members.size(); ++c) {
        if (c == a || c == b) continue;
        if (angle_gap(direction(scene.object(members[a]), scene.object(members[c])), line) <= tolerance / 2)
          pick.push_back(members[c]);
      }
      std::sort(pick.begin(), pick.end());
      // Drop the member deviating most from the seed line until consistent.
      while (pick.size() >= 3 && !collinear(scene, pick, tolerance, buf)) {
        std::size_t worst = 0;
        double worst_dev = -1.0;
        for (std::size_t k = 0; k < pick.size(); ++k) {
          if (pick[k] == members[a] || pick[k] == members[b]) continue;
          const double dev = angle_gap(direction(scene.object(members[a]), scene.object(pick[k])), line);
          if (dev > worst_dev) worst_dev = dev, worst = k;
        }
        pick.erase(pick.begin() + static_cast<std::ptrdiff_t>(worst));
      }
      if (pick.size() < 3) continue;
      if (pick.size() > best.size() || (pick.size() == best.size() && pick < best)) best = pick;
    }
  }
  return to_set(best);
}

}  // namespace

ObjectSet aligned_subset(const Scene& scene, const ObjectSet& members, double tolerance_rad,
                         std::size_t exhaustive_limit) {
  const auto idx = members.indices();
  if (idx.size() < 3) return {};
  if (idx.size() <= exhaustive_limit && idx.size() < 32) return aligned_exhaustive(scene, idx, tolerance_rad);
  return aligned_greedy(scene, idx, tolerance_rad);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Attribute values of a set's members, in index order. DISTANCE is measured
/// to the nearest other member of the same set. Returns false if undefined.
bool member_values(const Scene& scene, const ObjectSet& set, Attribute a, const ProblemContext& ctx,
                   bool unroll, std::vector<double>& out) {
  out.clear();
  if (a == Attribute::Distance) {
    if (set.size() == 1) return false;
    const auto idx = set.indices();
    for (auto i : idx) {
      double nearest = std::numeric_limits<double>::infinity();
      for (auto j : idx)
        if (j != i) nearest = std::min(nearest, scene.distance(i, j));
      out.push_back(nearest);
    }
    return true;
  }
  set.for_each([&](std::size_t i) {
    double v = scene.object(i).attributes.value(a);
    if (unroll && is_circular(a)) v = unroll_angle(v, ctx.orientation_origin());
    out.push_back(v);
  });
  return true;
}

class Walker {
 public:
  Walker(std::span<const Production> nodes, const ProblemContext& ctx) : nodes_(nodes), ctx_(ctx) {}

  LValue eval_l(std::size_t& i, const Scene& scene) {
    const Production p = nodes_[i++];
    using enum Production;
    switch (p) {
      case Figures: return {scene.figures(), true};
      case Circles: return {scene.of_shape(ShapeClass::Circle), true};
      case Triangles: return {scene.of_shape(ShapeClass::Triangle), true};
      case Rectangles: return {scene.of_shape(ShapeClass::Rectangle), true};
      case Cap:
      case Cup:
      case SetMinus: {
        LValue a = eval_l(i, scene);
        LValue b = eval_l(i, scene);
        if (!a.defined || !b.defined) return {{}, false};
        if (p == Cap) return {a.set & b.set, true};
        if (p == Cup) return {a.set | b.set, true};
        return {a.set - b.set, true};
      }
      case Inside:
      case Contains: {
        LValue a = eval_l(i, scene);
        if (!a.defined) return a;
        ObjectSet out;
        a.set.for_each([&](std::size_t m) { out |= p == Inside ? scene.contents_of(m) : scene.containers_of(m); });
        return {out, true};
      }
      case Aligned: {
        LValue a = eval_l(i, scene);
        if (!a.defined) return a;
        const auto& o = ctx_.options();
        return {aligned_subset(scene, a.set, o.aligned_tolerance_deg * std::numbers::pi / 180.0,
                               o.aligned_exhaustive_limit),
                true};
      }
      case Get: {
        LValue a = eval_l(i, scene);
        const Production t = nodes_[i++];
        if (!a.defined) return a;
        ObjectSet out;
        a.set.for_each([&](std::size_t m) {
          if (t == Hulls)
            out.insert(scene.hull_of(m));
          else
            out |= scene.holes_of(m);
        });
        return {out, true};
      }
      case Solid:
      case Outline: {
        LValue a = eval_l(i, scene);
        if (!a.defined) return a;
        const FillClass want = p == Solid ? FillClass::Solid : FillClass::Outline;
        ObjectSet out;
        a.set.for_each([&](std::size_t m) {
          if (scene.object(m).fill == want) out.insert(m);
        });
        return {out, true};
      }
      case Big:
      case Small: {
        LValue a = eval_l(i, scene);
        return threshold(a, scene, Attribute::Size, p == Big);
      }
      case High:
      case Low: {
        LValue a = eval_l(i, scene);
        const Attribute attr = attribute_of(nodes_[i++]);
        return threshold(a, scene, attr, p == High);
      }
      default: break;
    }
    return {{}, false};
  }

  /// Truth of the S node at `s` for every scene.
  TruthVector eval_s_all(std::size_t s) {
    TruthVector out{};
    const Production p = nodes_[s];
    std::size_t i = s + 1;
    using enum Production;
    switch (p) {
      case Exists: {
        const auto l = eval_l_all(i);
        for (std::size_t k = 0; k < kSceneCount; ++k)
          out[k] = !l[k].defined ? Truth::Undefined : from_bool(!l[k].set.empty());
        return out;
      }
      case Exactly: {
        const int n = numeral_of(nodes_[i++]);
        const auto l = eval_l_all(i);
        for (std::size_t k = 0; k < kSceneCount; ++k)
          out[k] = !l[k].defined ? Truth::Undefined : from_bool(l[k].set.size() == static_cast<std::size_t>(n));
        return out;
      }
      case EqualNum:
      case More: {
        const auto a = eval_l_all(i);
        const auto b = eval_l_all(i);
        for (std::size_t k = 0; k < kSceneCount; ++k) {
          if (!a[k].defined || !b[k].defined || (a[k].set.empty() && b[k].set.empty())) {
            out[k] = Truth::Undefined;
            continue;
          }
          const auto na = a[k].set.size();
          const auto nb = b[k].set.size();
          out[k] = from_bool(p == More ? na > nb : na == nb);
        }
        return out;
      }
      case GreaterLLA: {
        const auto a = eval_l_all(i);
        const auto b = eval_l_all(i);
        const Attribute attr = attribute_of(nodes_[i++]);
        for (std::size_t k = 0; k < kSceneCount; ++k) {
          const Scene& scene = ctx_.scene(k);
          if (!a[k].defined || !b[k].defined || a[k].set.empty() || b[k].set.empty() ||
              !member_values(scene, a[k].set, attr, ctx_, true, va_) ||
              !member_values(scene, b[k].set, attr, ctx_, true, vb_)) {
            out[k] = Truth::Undefined;
            continue;
          }
          out[k] = from_bool(*std::min_element(va_.begin(), va_.end()) > *std::max_element(vb_.begin(), vb_.end()));
        }
        return out;
      }
      case GreaterLA: {
        const auto a = eval_l_all(i);
        const Attribute attr = attribute_of(nodes_[i++]);
        // Per scene: smallest and largest member value, when defined.
        std::array<double, kSceneCount> lo{}, hi{};
        std::array<bool, kSceneCount> ok{};
        for (std::size_t k = 0; k < kSceneCount; ++k) {
          ok[k] = a[k].defined && !a[k].set.empty() && member_values(ctx_.scene(k), a[k].set, attr, ctx_, true, va_);
          if (!ok[k]) continue;
          lo[k] = *std::min_element(va_.begin(), va_.end());
          hi[k] = *std::max_element(va_.begin(), va_.end());
        }
        for (std::size_t k = 0; k < kSceneCount; ++k) {
          const double pooled = side_extreme(ok, hi, k, true);
          out[k] = !ok[k] || std::isnan(pooled) ? Truth::Undefined : from_bool(lo[k] > pooled);
        }
        return out;
      }
      case MoreSimLLA: {
        const auto a = eval_l_all(i);
        const auto b = eval_l_all(i);
        const Attribute attr = attribute_of(nodes_[i++]);
        for (std::size_t k = 0; k < kSceneCount; ++k) {
          const Scene& scene = ctx_.scene(k);
          if (!a[k].defined || !b[k].defined || a[k].set.size() < 2 || b[k].set.size() < 2 ||
              !member_values(scene, a[k].set, attr, ctx_, false, va_) ||
              !member_values(scene, b[k].set, attr, ctx_, false, vb_)) {
            out[k] = Truth::Undefined;
            continue;
          }
          out[k] = from_bool(log_dispersion(vb_, attr) - log_dispersion(va_, attr) > ctx_.options().moresim_log_gap);
        }
        return out;
      }
      case MoreSimLA: {
        const auto a = eval_l_all(i);
        const Attribute attr = attribute_of(nodes_[i++]);
        std::array<double, kSceneCount> ld{};
        std::array<bool, kSceneCount> ok{};
        for (std::size_t k = 0; k < kSceneCount; ++k) {
          ok[k] = a[k].defined && a[k].set.size() >= 2 &&
                  member_values(ctx_.scene(k), a[k].set, attr, ctx_, false, va_);
          if (ok[k]) ld[k] = log_dispersion(va_, attr);
        }
        for (std::size_t k = 0; k < kSceneCount; ++k) {
          const double least = side_extreme(ok, ld, k, false);
          out[k] = !ok[k] || std::isnan(least) ? Truth::Undefined
                                               : from_bool(ld[k] < least - ctx_.options().moresim_log_gap);
        }
        return out;
      }
      default: break;
    }
    out.fill(Truth::Undefined);
    return out;
  }

 private:
  static Truth from_bool(bool b) noexcept { return b ? Truth::True : Truth::False; }

  std::array<LValue, kSceneCount> eval_l_all(std::size_t& i) {
    std::array<LValue, kSceneCount> out;
    std::size_t end = i;
    for (std::size_t k = 0; k < kSceneCount; ++k) {
      end = i;
      out[k] = eval_l(end, ctx_.scene(k));
    }
    i = end;
    return out;
  }

  /// Max (or min) of `v` over the defined scenes of the side opposite scene k.
  static double side_extreme(const std::array<bool, kSceneCount>& ok, const std::array<double, kSceneCount>& v,
                             std::size_t k, bool max) {
    const std::size_t begin = k < kScenesPerSide ? kScenesPerSide : 0;
    double best = kNaN;
    for (std::size_t j = begin; j < begin + kScenesPerSide; ++j) {
      if (!ok[j]) continue;
      if (std::isnan(best) || (max ? v[j] > best : v[j] < best)) best = v[j];
    }
    return best;
  }

  double log_dispersion(std::span<const double> values, Attribute a) const {
    return std::log(std::max(dispersion(values, is_circular(a)), ctx_.options().dispersion_floor));
  }

  LValue threshold(const LValue& a, const Scene& scene, Attribute attr, bool high) {
    if (!a.defined) return a;
    const auto& split = ctx_.split(attr);
    if (!split) return {{}, false};
    if (a.set.empty()) return a;
    if (!member_values(scene, a.set, attr, ctx_, false, va_)) return {{}, false};
    ObjectSet out;
    std::size_t n = 0;
    a.set.for_each([&](std::size_t m) {
      if (split->is_high(va_[n++]) == high) out.insert(m);
    });
    return {out, true};
  }

  std::span<const Production> nodes_;
  const ProblemContext& ctx_;
  std::vector<double> va_, vb_;
};

}  // namespace

LValue eval_L(std::span<const Production> subtree, const Scene& scene, const ProblemContext& ctx) {
  Walker w(subtree, ctx);
  std::size_t i = 0;
  return w.eval_l(i, scene);
}

TruthVector eval_S_all(std::span<const Production> subtree, const ProblemContext& ctx) {
  Walker w(subtree, ctx);
  return w.eval_s_all(0);
}

Truth eval_S(std::span<const Production> subtree, std::size_t scene, const ProblemContext& ctx) {
  return eval_S_all(subtree, ctx)[scene];
}

TruthVector eval_rule(const Rule& rule, const ProblemContext& ctx) {
  return eval_S_all(rule.nodes().subspan(1), ctx);
}

}  // namespace bongard
