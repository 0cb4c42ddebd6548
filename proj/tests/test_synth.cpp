#include <doctest.h>

#include <filesystem>

#include "bongard/error.hpp"
#include "bongard/likelihood.hpp"
#include "bongard/segment.hpp"
#include "bongard/synth.hpp"
#include "support.hpp"

using namespace bongard;
using namespace bongard::testing;

namespace {

std::vector<FigureObject> objects(const BinaryImage& img) {
  auto objs = segment(img);
  for (auto& o : objs) describe(o);
  return objs;
}

}  // namespace

TEST_CASE("render closes the loop with feature extraction") {
  auto objs = objects(render(scene({disk(80, 80, 25)})));
  REQUIRE(objs.size() == 1);
  CHECK(objs[0].shape == ShapeClass::Circle);
  CHECK(objs[0].fill == FillClass::Solid);

  auto nested = objects(render(scene({disk(80, 80, 50, false), triangle(80, 85, 16)})));
  REQUIRE(nested.size() == 2);
  const auto& outer = nested[0].shape == ShapeClass::Circle ? nested[0] : nested[1];
  const auto& inner = nested[0].shape == ShapeClass::Circle ? nested[1] : nested[0];
  CHECK(inside(inner, outer));

  auto blank = render(scene({}));
  CHECK(blank.width() == 160);
  CHECK(blank.foreground_count() == 0);
  CHECK(objects(blank).empty());
}

TEST_CASE("render rejects bad specs") {
  CHECK_THROWS_AS(render(scene({disk(10, 80, 20)})), InputError);
  CHECK_THROWS_AS(render(scene({square(150, 80, 20)})), InputError);
  auto thin = disk(80, 80, 20, false);
  thin.stroke = 1.5;
  CHECK_THROWS_AS(render(scene({thin})), InputError);
  ShapeSpec poly;
  poly.kind = ShapeKind::Polygon;
  poly.cx = poly.cy = 80;
  poly.vertices = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(render(scene({poly})), InputError);
}

TEST_CASE("shape geometry helpers") {
  auto sq = square(80, 80, 10);
  CHECK(shape_polygon(sq).size() == 4);
  CHECK(shape_radius(sq) == doctest::Approx(10 * std::sqrt(2.0)));
  CHECK(shape_radius(disk(0, 0, 7)) == 7.0);
  CHECK(expected_class(triangle(0, 0, 5)) == ShapeClass::Triangle);
  Rng rng(1);
  auto quad = random_shape(ShapeKind::Polygon, 20, true, rng);
  CHECK(quad.vertices.size() == 4);
  CHECK(expected_class(quad) == ShapeClass::Other);
  CHECK(shape_radius(quad) <= 20.0 + 1e-9);
}

TEST_CASE("templates are deterministic per seed") {
  for (auto name : template_names()) {
    auto a = make_problem(name, 7);
    auto b = make_problem(name, 7);
    CHECK(all_images(a) == all_images(b));
    CHECK(a.left.size() == 6);
    CHECK(a.right.size() == 6);
  }
  CHECK(all_images(make_problem("bp1_empty_vs_nonempty", 1)) != all_images(make_problem("bp1_empty_vs_nonempty", 2)));
  CHECK_THROWS_AS(make_problem("bp99_unknown", 1), InputError);
  CHECK_THROWS_AS(intended_rules("bp99_unknown"), InputError);
}

TEST_CASE("written problems load back identically") {
  auto p = make_problem("bp23_one_vs_two", 3);
  auto dir = std::filesystem::temp_directory_path() / "bongard_test_synth" / "bp23";
  auto m = write_problem(p, dir);
  CHECK(std::filesystem::exists(dir / "manifest.txt"));
  auto back = load_manifest(dir / "manifest.txt");
  REQUIRE(back.left.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(load_binary_image(back.left[k]) == p.left[k]);
    CHECK(load_binary_image(back.right[k]) == p.right[k]);
  }
}

TEST_CASE("bp3 fills and bp2 areas") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto p3 = make_problem("bp3_outline_vs_solid", seed);
    for (std::size_t k = 0; k < kSceneCount; ++k)
      for (const auto& s : p3.scenes[k].shapes) CHECK(s.solid == (k >= kScenesPerSide));
    auto ctx3 = build_problem(p3.left, p3.right);
    for (const auto& s : ctx3.scenes())
      for (std::size_t i = 0; i < s.original_count(); ++i)
        CHECK((s.object(i).fill == FillClass::Outline) == (s.side() == Side::Left));

    auto p2 = make_problem("bp2_large_vs_small", seed);
    std::size_t smallest_left = SIZE_MAX, largest_right = 0;
    for (const auto& img : p2.left) smallest_left = std::min(smallest_left, img.foreground_count());
    for (const auto& img : p2.right) largest_right = std::max(largest_right, img.foreground_count());
    CHECK(smallest_left >= 4 * largest_right);
  }
}

TEST_CASE("intended rules hold for 100 consecutive seeds") {
  for (auto name : template_names()) {
    const auto rules = intended_rules(name);
    REQUIRE(!rules.empty());
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      auto p = make_problem(name, seed);
      auto ctx = build_problem(p.left, p.right);
      for (const auto& text : rules) {
        auto rep = compatibility(parse_rule(text), ctx);
        INFO(name << " seed " << seed << " " << text);
        CHECK(rep.compatible);
        CHECK(rep.mistakes == 0);
        CHECK(rep.informative);
      }
    }
  }
}
