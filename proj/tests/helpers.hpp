#pragma once

// Plain transcriptions of the solver semantics. They recompute everything
// from scratch through the public cost functions, so the optimized library
// paths can be checked against them bit for bit.

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "disp/core.hpp"
#include "disp/instances.hpp"
#include "disp/rng.hpp"
#include "disp/solvers.hpp"

namespace testutil {

using namespace disp;

inline bool contains(const std::vector<int>& s, int q) {
  return std::find(s.begin(), s.end(), q) != s.end();
}

inline std::optional<std::vector<int>> naive_grow_filtered(
    const Instance& inst, std::vector<int> s, double rho) {
  std::sort(s.begin(), s.end());
  const double rho_t = rho * (1.0 - 1e-12);
  while (static_cast<int>(s.size()) < inst.k) {
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int q = 0; q < inst.n(); ++q) {
      if (contains(s, q)) continue;
      std::vector<int> u = s;
      u.push_back(q);
      if (cost_set(inst.points, u, inst.gamma) < rho_t) continue;
      const double own = cost_point(inst.points, q, s, inst.gamma);
      if (own < best_cost) {
        best_cost = own;
        best = q;
      }
    }
    if (best < 0) return std::nullopt;
    s.push_back(best);
    std::sort(s.begin(), s.end());
  }
  return s;
}

inline std::optional<std::vector<int>> naive_grow_literal(const Instance& inst,
                                                          std::vector<int> s,
                                                          double rho) {
  std::sort(s.begin(), s.end());
  const double rho_t = rho * (1.0 - 1e-12);
  while (static_cast<int>(s.size()) < inst.k) {
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int q = 0; q < inst.n(); ++q) {
      if (contains(s, q)) continue;
      const double own = cost_point(inst.points, q, s, inst.gamma);
      if (own < best_cost) {
        best_cost = own;
        best = q;
      }
    }
    if (best < 0) return std::nullopt;
    std::vector<int> u = s;
    u.push_back(best);
    if (cost_set(inst.points, u, inst.gamma) < rho_t) return std::nullopt;
    s.push_back(best);
    std::sort(s.begin(), s.end());
  }
  return s;
}

inline std::optional<std::vector<int>> naive_grow(const Instance& inst,
                                                  std::vector<int> s,
                                                  double rho,
                                                  GrowthRule rule) {
  if (static_cast<int>(s.size()) == inst.k) {
    std::sort(s.begin(), s.end());
    return s;
  }
  return rule == GrowthRule::FilteredMin
             ? naive_grow_filtered(inst, std::move(s), rho)
             : naive_grow_literal(inst, std::move(s), rho);
}

struct NaiveFrameworkResult {
  bool solved = false;
  std::vector<int> indices;
  double cost = 0.0;
  double beta = 0.0;
};

inline NaiveFrameworkResult naive_framework(
    const Instance& inst, GrowthRule rule = GrowthRule::FilteredMin) {
  const double lambda = lambda_for(inst.gamma, inst.mode);
  const int m = inst.gamma + 1;
  std::vector<int> seed(m);
  for (int i = 0; i < m; ++i) seed[i] = i;

  NaiveFrameworkResult result;
  for (;;) {
    const double alpha = cost_set(inst.points, seed, inst.gamma);
    const double rho = alpha / lambda;
    if (rho > result.beta) {
      auto grown = naive_grow(inst, seed, rho, rule);
      if (grown) {
        result.solved = true;
        result.beta = rho;
        result.indices = *grown;
      }
    }
    // next lexicographic combination
    int pos = m - 1;
    while (pos >= 0 && seed[pos] == inst.n() - m + pos) --pos;
    if (pos < 0) break;
    ++seed[pos];
    for (int j = pos + 1; j < m; ++j) seed[j] = seed[j - 1] + 1;
  }
  if (result.solved) {
    result.cost = cost_set(inst.points, result.indices, inst.gamma);
  }
  return result;
}

inline Solution naive_greedy(const Instance& inst) {
  const auto pts = std::span<const Point>(inst.points);
  const int n = inst.n();
  double best_cost = -std::numeric_limits<double>::infinity();
  std::vector<int> s;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) {
        const std::vector<int> tri = {i, j, l};
        const double c = cost_set(pts, tri, 2);
        if (c > best_cost) {
          best_cost = c;
          s = tri;
        }
      }
    }
  }
  while (static_cast<int>(s.size()) < inst.k) {
    int best = -1;
    double best_union = -std::numeric_limits<double>::infinity();
    for (int q = 0; q < n; ++q) {
      if (contains(s, q)) continue;
      std::vector<int> u = s;
      u.push_back(q);
      const double c = cost_set(pts, u, 2);
      if (c > best_union) {
        best_union = c;
        best = q;
      }
    }
    s.push_back(best);
    std::sort(s.begin(), s.end());
  }
  std::sort(s.begin(), s.end());
  Solution sol;
  sol.cost = cost_set(pts, s, 2);
  sol.indices = std::move(s);
  sol.method = Method::Greedy;
  return sol;
}

// Mixed bag of instance shapes for differential testing: the generator
// families plus coordinate quantization (ties) and literal duplicates.
inline Instance random_instance(Xoshiro256StarStar& rng, int n_min, int n_max,
                                int gamma, int k_cap) {
  const int n = static_cast<int>(rng.next_in(n_min, n_max));
  const int k_hi = std::min(k_cap, n);
  const int k = static_cast<int>(rng.next_in(gamma + 1, k_hi));
  const int shape = static_cast<int>(rng.next_in(0, 4));

  GeneratorSpec spec;
  spec.n = n;
  spec.k = k;
  spec.gamma = gamma;
  spec.seed = rng.next();
  switch (shape) {
    case 0:
      spec.family = Family::Uniform;
      break;
    case 1:
      spec.family = Family::Grid;
      break;
    case 2:
      spec.family = Family::Clustered;
      break;
    case 3:
      spec.family = Family::Collinear;
      break;
    default:
      spec.family = Family::Uniform;  // quantized below
      break;
  }
  if (spec.family == Family::Collinear && gamma == 1) {
    spec.family = Family::Uniform;  // no gamma=1 line regime
  }
  Instance inst = generate(spec);

  if (shape == 4) {
    // quantize to a coarse lattice: plenty of exact distance ties
    for (Point& p : inst.points) {
      p.x = std::round(p.x * 4.0) / 4.0;
      p.y = std::round(p.y * 4.0) / 4.0;
    }
  }
  if (rng.next_in(0, 3) == 0 && n >= 2) {
    // duplicate one point on top of another
    const int a = static_cast<int>(rng.next_in(0, n - 1));
    const int b = static_cast<int>(rng.next_in(0, n - 1));
    inst.points[a] = inst.points[b];
  }
  return inst;
}

}  // namespace testutil
