#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bongard/geometry.hpp"
#include "bongard/segment.hpp"
#include "support.hpp"

using namespace bongard;
using namespace bongard::testing;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<FigureObject> objects(const SceneSpec& spec) {
  auto objs = segment(render(spec));
  for (auto& o : objs) describe(o);
  return objs;
}

FigureObject single(const ShapeSpec& shape, int canvas = 160) {
  auto objs = objects(scene({shape}, canvas));
  REQUIRE(objs.size() == 1);
  return objs.front();
}

double angle_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), kPi);
  return std::min(d, kPi - d);
}

// Orientation and elongation by scanning the projected variance over angles,
// independent of the closed-form eigen-decomposition.
struct Principal {
  double orientation;
  double elongation;
};

Principal principal_axes(const Mask& mask) {
  std::vector<std::pair<double, double>> pts;
  double mx = 0, my = 0;
  mask.for_each([&](int x, int y) { pts.push_back({double(x), -double(y)}); });
  for (auto [x, y] : pts) mx += x, my += y;
  mx /= pts.size();
  my /= pts.size();
  double best = -1, worst = 1e300, best_t = 0;
  for (int k = 0; k < 36000; ++k) {
    const double t = kPi * k / 36000;
    const double c = std::cos(t), s = std::sin(t);
    double v = 0;
    for (auto [x, y] : pts) {
      const double p = (x - mx) * c + (y - my) * s;
      v += p * p;
    }
    v = v / pts.size() + 1.0 / 12.0;
    if (v > best) best = v, best_t = t;
    worst = std::min(worst, v);
  }
  return {best_t, std::sqrt(best / worst)};
}

double brute_distance(const FigureObject& a, const FigureObject& b) {
  if (a.mask.intersects(b.mask)) return 0.0;
  auto pa = geometry::boundary_pixels(a.mask), pb = geometry::boundary_pixels(b.mask);
  double best = 1e300;
  for (auto p : pa)
    for (auto q : pb) {
      if (std::abs(p.x - q.x) <= 1 && std::abs(p.y - q.y) <= 1) return 0.0;
      best = std::min(best, std::hypot(p.x - q.x, p.y - q.y));
    }
  return best;
}

ShapeSpec bar(double cx, double cy, double half_length, double angle) {
  ShapeSpec s = square(cx, cy, half_length);
  s.aspect = 1.0 / 3.0;
  s.rotation = -angle;  // raster y points down
  return s;
}

}  // namespace

TEST_CASE("disk measurements") {
  auto o = single(disk(80, 80, 30));
  CHECK(o.attributes.compactness >= 0.88);
  CHECK(o.attributes.compactness <= 1.0);
  CHECK(o.attributes.convexity >= 0.95);
  CHECK(o.attributes.convexity <= 1.0);
  CHECK(o.shape == ShapeClass::Circle);
  CHECK(o.fill == FillClass::Solid);
}

TEST_CASE("10x10 square") {
  BinaryImage img(40, 40);
  for (int y = 5; y < 15; ++y)
    for (int x = 20; x < 30; ++x) img.set(x, y);
  auto objs = segment(img);
  REQUIRE(objs.size() == 1);
  describe(objs[0]);
  const auto& a = objs[0].attributes;
  CHECK(a.size == doctest::Approx(std::log(100.0)).epsilon(1e-9));
  CHECK(a.convexity == doctest::Approx(1.0).epsilon(0.01));
  CHECK(a.color == doctest::Approx(1.0));
  CHECK(a.xpos == doctest::Approx(24.5));
  CHECK(a.ypos == doctest::Approx(40 - 1 - 9.5));
}

TEST_CASE("bar at 45 degrees against brute-force principal axes") {
  auto o = single(bar(80, 80, 36, kPi / 4));
  auto oracle = principal_axes(o.mask);
  CHECK(angle_gap(o.attributes.orientation, kPi / 4) <= 0.05);
  CHECK(o.attributes.elongation == doctest::Approx(3.0).epsilon(0.5 / 3.0));
  CHECK(angle_gap(o.attributes.orientation, oracle.orientation) <= 1e-3);
  CHECK(o.attributes.elongation == doctest::Approx(oracle.elongation).epsilon(1e-3));
}

TEST_CASE("single pixel degenerate") {
  Mask m(10, 10, Box{3, 3, 4, 4});
  m.set(3, 3);
  auto o = FigureObject::from_mask(m, 0);
  describe(o);
  CHECK(o.attributes.orientation == 0.0);
  CHECK(o.attributes.elongation == doctest::Approx(1.0));
}

TEST_CASE("ideal shapes classify") {
  CHECK(single(triangle(80, 80, 30, false)).shape == ShapeClass::Triangle);
  CHECK(single(triangle(80, 80, 30, true, 0.4)).shape == ShapeClass::Triangle);
  CHECK(single(square(80, 80, 25, true, 0.3)).shape == ShapeClass::Rectangle);
  CHECK(single(square(80, 80, 25, false)).shape == ShapeClass::Rectangle);
  CHECK(single(disk(80, 80, 12, false)).shape == ShapeClass::Circle);
  CHECK(single(bar(80, 80, 40, 0.7)).shape == ShapeClass::Rectangle);
  Rng rng(3);
  auto blob = random_shape(ShapeKind::Polygon, 40, true, rng, 12);
  blob.cx = blob.cy = 80;
  CHECK(single(blob).shape == ShapeClass::Other);
}

TEST_CASE("classifier agrees with renderer on a generated corpus") {
  Rng rng(2024);
  std::uniform_real_distribution<double> radius(10.0, 60.0);
  std::bernoulli_distribution coin(0.5);
  int agree = 0, total = 0;
  for (int k = 0; k < 500; ++k) {
    const auto kind = static_cast<ShapeKind>(k % 4);
    const int blob = (k / 4) % 2 == 0 ? 4 : 12;
    auto s = random_shape(kind, radius(rng), coin(rng), rng, blob);
    s.cx = s.cy = 80;
    auto objs = objects(scene({s}));
    ++total;
    if (objs.size() == 1 && objs[0].shape == expected_class(s)) ++agree;
  }
  MESSAGE("shape agreement " << agree << "/" << total);
  CHECK(agree >= 475);
}

TEST_CASE("fill classes") {
  CHECK(single(square(80, 80, 20)).fill == FillClass::Solid);
  auto ring = disk(80, 80, 30, false);
  ring.stroke = 2.0;
  auto o = single(ring);
  CHECK(o.fill == FillClass::Outline);
  CHECK(o.attributes.color < 0.25);

  // checkerboard inside a frame: about half dark
  Mask m(120, 120, Box{10, 10, 110, 110});
  for (int y = 10; y < 110; ++y)
    for (int x = 10; x < 110; ++x)
      if (x == 10 || y == 10 || x == 109 || y == 109 || (x + y) % 2 == 0) m.set(x, y);
  auto hatch = FigureObject::from_mask(m, 0);
  describe(hatch);
  CHECK(hatch.attributes.color >= 0.5);
  CHECK(hatch.attributes.color < 0.55);
  CHECK(hatch.fill == FillClass::Solid);

  FigureObject tie;
  tie.attributes.color = 0.5;
  CHECK(classify_fill(tie) == FillClass::Solid);
}

TEST_CASE("inside relation") {
  auto objs = objects(scene({disk(80, 80, 50, false), triangle(80, 80, 15)}));
  REQUIRE(objs.size() == 2);
  const auto& circle = objs[0].shape == ShapeClass::Circle ? objs[0] : objs[1];
  const auto& tri = objs[0].shape == ShapeClass::Circle ? objs[1] : objs[0];
  CHECK(inside(tri, circle));
  CHECK_FALSE(inside(circle, tri));

  auto apart = objects(scene({disk(40, 80, 20, false), disk(120, 80, 20, false)}));
  REQUIRE(apart.size() == 2);
  CHECK_FALSE(inside(apart[0], apart[1]));
  CHECK_FALSE(inside(apart[1], apart[0]));
}

TEST_CASE("inside is transitive on nested shapes and matches pixelwise containment") {
  auto objs = objects(scene({disk(80, 80, 70, false), square(80, 80, 35, false, 0.2), disk(80, 80, 10)}));
  REQUIRE(objs.size() == 3);
  std::sort(objs.begin(), objs.end(), [](auto& a, auto& b) { return a.filled.count() > b.filled.count(); });
  const auto& c = objs[0];
  const auto& b = objs[1];
  const auto& a = objs[2];
  CHECK(inside(a, b));
  CHECK(inside(b, c));
  CHECK(inside(a, c));
  // pixel oracle: every pixel of the inner object is reachable only through
  // the outer one, i.e. not connected to the image border in the background
  for (const auto* p : {&a, &b}) {
    bool all_in = true;
    p->mask.for_each([&](int x, int y) { all_in = all_in && c.filled.test(x, y) && !c.mask.test(x, y); });
    CHECK(all_in);
  }
}

TEST_CASE("inside is irreflexive and antisymmetric") {
  Rng rng(11);
  std::uniform_real_distribution<double> pos(30, 130), rad(5, 28);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < 40; ++k) {
    SceneSpec spec;
    for (int j = 0; j < 5; ++j) {
      double r = rad(rng);
      double x = std::clamp(pos(rng), r, 160 - r), y = std::clamp(pos(rng), r, 160 - r);
      spec.shapes.push_back(coin(rng) ? disk(x, y, r, coin(rng)) : square(x, y, r * 0.7, coin(rng)));
    }
    spec.shapes.push_back(disk(80, 80, 70, false));
    auto objs = objects(spec);
    for (std::size_t i = 0; i < objs.size(); ++i) {
      CHECK_FALSE(inside(objs[i], objs[i]));
      for (std::size_t j = 0; j < objs.size(); ++j)
        if (i != j) CHECK_FALSE((inside(objs[i], objs[j]) && inside(objs[j], objs[i])));
    }
  }
}

TEST_CASE("hull and hole transforms") {
  auto sq = single(square(80, 80, 20));
  auto hull = transform({sq}, TransformKind::Hulls);
  REQUIRE(hull.size() == 1);
  CHECK(hull[0].mask.same_pixels(sq.mask));
  CHECK(hull[0].synthetic);

  auto ring = single(disk(80, 80, 30, false));
  auto holes = transform({ring}, TransformKind::Holes);
  REQUIRE(holes.size() == 1);
  CHECK(holes[0].shape == ShapeClass::Circle);
  CHECK(holes[0].fill == FillClass::Solid);

  CHECK(transform({single(disk(80, 80, 30))}, TransformKind::Holes).empty());
  CHECK(transform({}, TransformKind::Hulls).empty());
}

TEST_CASE("hulls are idempotent and hole-free") {
  Rng rng(5);
  std::uniform_real_distribution<double> radius(10, 60);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < 60; ++k) {
    auto s = random_shape(static_cast<ShapeKind>(k % 4), radius(rng), coin(rng), rng, k % 8 < 4 ? 4 : 9);
    s.cx = s.cy = 80;
    auto objs = objects(scene({s}));
    auto once = transform(objs, TransformKind::Hulls);
    auto twice = transform(once, TransformKind::Hulls);
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i].mask.same_pixels(twice[i].mask));
    CHECK(transform(once, TransformKind::Holes).empty());
  }
}

TEST_CASE("pair distances") {
  BinaryImage img(100, 40);
  for (int y = 10; y < 20; ++y)
    for (int x = 0; x < 10; ++x) img.set(x, y), img.set(x + 40, y);
  auto sq = segment(img);
  REQUIRE(sq.size() == 2);
  CHECK(std::abs(min_pair_distance(sq[0], sq[1]) - 30.0) <= 1.0);

  auto touching = segment(render(scene({disk(60, 80, 20), disk(100, 80, 20)})));
  // they share a tangent point, so render as one component
  CHECK(touching.size() == 1);

  // touching masks never come out of segmentation as two objects
  Mask left(40, 40, Box{0, 0, 10, 10}), right(40, 40, Box{10, 5, 20, 15});
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 10; ++x) left.set(x, y), right.set(x + 10, y + 5);
  CHECK(min_pair_distance(FigureObject::from_mask(left, 0), FigureObject::from_mask(right, 1)) == 0.0);

  auto nested = objects(scene({disk(80, 80, 50, false), square(80, 80, 12)}));
  REQUIRE(nested.size() == 2);
  const double d = min_pair_distance(nested[0], nested[1]);
  CHECK(d > 0.0);
  CHECK(d == doctest::Approx(brute_distance(nested[0], nested[1])));
}

TEST_CASE("pair distance matches brute force on random scenes") {
  Rng rng(19);
  std::uniform_real_distribution<double> pos(20, 140), rad(5, 18);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < 30; ++k) {
    SceneSpec spec;
    for (int j = 0; j < 3; ++j) spec.shapes.push_back(coin(rng) ? disk(pos(rng), pos(rng), rad(rng), coin(rng))
                                                                  : triangle(pos(rng), pos(rng), rad(rng), coin(rng), pos(rng)));
    auto objs = objects(spec);
    for (std::size_t i = 0; i < objs.size(); ++i)
      for (std::size_t j = i + 1; j < objs.size(); ++j)
        CHECK(min_pair_distance(objs[i], objs[j]) == doctest::Approx(brute_distance(objs[i], objs[j])));
  }
}

TEST_CASE("doubling scale") {
  const std::vector<ShapeSpec> shapes = {disk(80, 80, 16), square(80, 80, 14, true, 0.3), triangle(80, 80, 18, true, 0.5),
                                         bar(80, 80, 20, 1.1)};
  for (const auto& s : shapes) {
    auto big = s;
    big.scale *= 2;
    auto a = single(s).attributes;
    auto b = single(big).attributes;
    CHECK(b.size - a.size == doctest::Approx(std::log(4.0)).epsilon(0.05 / std::log(4.0)));
    CHECK(std::abs(b.convexity - a.convexity) <= 0.05);
    CHECK(std::abs(b.compactness - a.compactness) <= 0.05);
    CHECK(std::abs(b.elongation - a.elongation) <= 0.05);
    if (a.elongation > 1.2) CHECK(angle_gap(a.orientation, b.orientation) <= 0.05);
  }
}

TEST_CASE("rotating a bar") {
  const auto base = single(bar(80, 80, 36, 0.2)).attributes;
  for (double theta : {0.3, 0.9, 1.7, 2.6, 3.5}) {
    const auto r = single(bar(80, 80, 36, 0.2 + theta)).attributes;
    CHECK(angle_gap(r.orientation, base.orientation + theta) <= 0.05);
    CHECK(std::abs(r.compactness - base.compactness) <= 0.05);
    CHECK(std::abs(r.convexity - base.convexity) <= 0.05);
  }
}
