#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "disp/core.hpp"

namespace disp {

// Guarantee factor lambda the seed-and-grow solver certifies against:
// gamma=2 Plane -> 2*sqrt(3), gamma=1 Plane -> 2, any gamma Line -> 1
// (exact), except (gamma=1, Line) which no solver supports.
double lambda_for(int gamma, Mode mode);

// How a growth step picks the next point from the threshold pool.
//  FilteredMin: cheapest point among those keeping the set cost above the
//               threshold (the default; carries the guarantees).
//  LiteralMin:  globally cheapest point, admitted only if it keeps the set
//               cost above the threshold; otherwise the attempt stalls.
//               Kept for side-by-side study, no guarantees.
enum class GrowthRule { FilteredMin, LiteralMin };

struct FrameworkOptions {
  int threads = 1;  // 0 = hardware concurrency
  GrowthRule rule = GrowthRule::FilteredMin;
};

// Snapshot of the seed scan after one seed has been processed.
struct FrameworkState {
  double lambda = 0.0;
  double alpha = 0.0;  // cost of the seed just processed
  double rho = 0.0;    // alpha / lambda
  double beta = 0.0;   // best certified threshold so far
  std::optional<std::vector<int>> best;  // current incumbent, sorted
};

using SeedTrace = std::function<void(const FrameworkState&)>;

// Farthest-insertion baseline; requires gamma = 2, Plane mode.
Solution greedy_dispersion(const Instance& inst);

// Grows seed to k points, only ever adding points that keep the set cost at
// or above rho * (1 - 1e-12); nullopt when the pool runs dry first. A seed
// that already has k members is returned as-is.
std::optional<std::vector<int>> framework_grow(
    const Instance& inst, std::span<const int> seed, double rho,
    GrowthRule rule = GrowthRule::FilteredMin);

// Seed-and-grow over every (gamma+1)-subset in lexicographic order. The
// returned lower_bound is beta, the largest threshold any grown seed
// certified; cost / lower_bound never exceeds lambda_for(gamma, mode).
Solution framework_solve(const Instance& inst,
                         const FrameworkOptions& options = {});

// Same scan, invoking trace after each seed; forces a single thread.
Solution framework_solve(const Instance& inst, const FrameworkOptions& options,
                         const SeedTrace& trace);

// Exhaustive optimum; throws BudgetExceeded when C(n, k) tops the budget.
Solution brute_force_opt(const Instance& inst,
                         std::uint64_t subset_budget = 10'000'000);

// min(C(n, k), cap + 1) without overflow; supports budget checks.
std::uint64_t binomial_capped(int n, int k, std::uint64_t cap);

}  // namespace disp
