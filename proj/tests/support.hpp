#pragma once

// Fixture helpers shared by the unit tests.

#include <array>
#include <vector>

#include "bongard/problem.hpp"
#include "bongard/synth.hpp"

namespace bongard::testing {

inline ShapeSpec disk(double cx, double cy, double r, bool solid = true) {
  ShapeSpec s;
  s.kind = ShapeKind::Circle;
  s.cx = cx;
  s.cy = cy;
  s.scale = r;
  s.solid = solid;
  return s;
}

inline ShapeSpec square(double cx, double cy, double half, bool solid = true, double rotation = 0.0) {
  ShapeSpec s;
  s.kind = ShapeKind::Rectangle;
  s.cx = cx;
  s.cy = cy;
  s.scale = half;
  s.aspect = 1.0;
  s.rotation = rotation;
  s.solid = solid;
  return s;
}

inline ShapeSpec triangle(double cx, double cy, double r, bool solid = true, double rotation = 0.0) {
  ShapeSpec s;
  s.kind = ShapeKind::Triangle;
  s.cx = cx;
  s.cy = cy;
  s.scale = r;
  s.rotation = rotation;
  s.solid = solid;
  return s;
}

inline SceneSpec scene(std::vector<ShapeSpec> shapes, int size = 160) {
  SceneSpec s;
  s.width = size;
  s.height = size;
  s.shapes = std::move(shapes);
  return s;
}

/// Renders six left then six right scene specs into a context.
inline ProblemContext problem(const std::array<SceneSpec, kSceneCount>& scenes, const ProblemOptions& options = {}) {
  std::vector<BinaryImage> left, right;
  for (std::size_t k = 0; k < kSceneCount; ++k) (k < kScenesPerSide ? left : right).push_back(render(scenes[k]));
  return build_problem(left, right, options);
}

/// Every scene of a side the same.
inline ProblemContext problem(const SceneSpec& left, const SceneSpec& right) {
  std::array<SceneSpec, kSceneCount> s;
  for (std::size_t k = 0; k < kSceneCount; ++k) s[k] = k < kScenesPerSide ? left : right;
  return problem(s);
}

}  // namespace bongard::testing
