#include "disp/core.hpp"

#include <algorithm>
#include <limits>

namespace disp {

const char* to_string(Mode mode) {
  return mode == Mode::Plane ? "plane" : "line";
}

const char* to_string(Method method) {
  switch (method) {
    case Method::Greedy:
      return "greedy";
    case Method::Framework:
      return "framework";
    case Method::BruteForce:
      return "oracle";
  }
  return "?";
}

void Instance::validate() const {
  if (gamma != 1 && gamma != 2) {
    throw InvalidInstance("gamma must be 1 or 2");
  }
  if (k < gamma + 1 || k > n()) {
    throw InvalidInstance("k must satisfy gamma+1 <= k <= n");
  }
  for (const Point& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidInstance("point coordinates must be finite");
    }
    if (mode == Mode::Line && p.y != 0.0) {
      throw InvalidInstance("line-mode points must have y = 0");
    }
  }
}

Instance make_instance(std::vector<Point> points, int k, int gamma,
                       Mode mode) {
  Instance inst;
  inst.points = std::move(points);
  inst.k = k;
  inst.gamma = gamma;
  inst.mode = mode;
  inst.validate();
  return inst;
}

namespace {

struct TwoNearest {
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = std::numeric_limits<double>::infinity();
  int i1 = -1;
  int i2 = -1;
  int count = 0;  // members of s other than p
};

// Two nearest members of s to points[p], excluding p; (distance, index)
// lexicographic order decides ties.
TwoNearest two_nearest(std::span<const Point> points, int p,
                       std::span<const int> s) {
  const int n = static_cast<int>(points.size());
  if (p < 0 || p >= n) {
    throw InvalidInstance("point index out of range");
  }
  TwoNearest near;
  for (int idx : s) {
    if (idx < 0 || idx >= n) {
      throw InvalidInstance("member index out of range");
    }
    if (idx == p) {
      continue;
    }
    ++near.count;
    const double d = dist(points[p], points[idx]);
    if (d < near.d1 || (d == near.d1 && idx < near.i1)) {
      near.d2 = near.d1;
      near.i2 = near.i1;
      near.d1 = d;
      near.i1 = idx;
    } else if (d < near.d2 || (d == near.d2 && idx < near.i2)) {
      near.d2 = d;
      near.i2 = idx;
    }
  }
  return near;
}

void check_gamma(int gamma) {
  if (gamma != 1 && gamma != 2) {
    throw InvalidInstance("gamma must be 1 or 2");
  }
}

}  // namespace

double cost_point(std::span<const Point> points, int p, std::span<const int> s,
                  int gamma) {
  check_gamma(gamma);
  const TwoNearest near = two_nearest(points, p, s);
  if (near.count < gamma) {
    throw TooFewNeighbors("point has fewer than gamma neighbors in the set");
  }
  return gamma == 1 ? near.d1 : near.d1 + near.d2;
}

double cost_set(std::span<const Point> points, std::span<const int> s,
                int gamma) {
  check_gamma(gamma);
  if (static_cast<int>(s.size()) < gamma + 1) {
    throw TooFewNeighbors("set needs at least gamma+1 members");
  }
  double best = std::numeric_limits<double>::infinity();
  for (int idx : s) {
    best = std::min(best, cost_point(points, idx, s, gamma));
  }
  return best;
}

std::vector<int> nearest_indices(std::span<const Point> points, int p,
                                 std::span<const int> s, int gamma) {
  check_gamma(gamma);
  const TwoNearest near = two_nearest(points, p, s);
  if (near.count < gamma) {
    throw TooFewNeighbors("point has fewer than gamma neighbors in the set");
  }
  if (gamma == 1) {
    return {near.i1};
  }
  return {near.i1, near.i2};
}

double cost_point(const Instance& inst, int p, std::span<const int> s) {
  return cost_point(inst.points, p, s, inst.gamma);
}

double cost_set(const Instance& inst, std::span<const int> s) {
  return cost_set(inst.points, s, inst.gamma);
}

}  // namespace disp
