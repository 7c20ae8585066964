#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disp/core.hpp"
#include "disp/instances.hpp"
#include "disp/solvers.hpp"

namespace disp {

struct Disk {
  Point center;
  double radius = 0.0;
};

enum class Containment { Outside, OnBoundary, ProperlyContained };

// Classifies with a relative band of 1e-12 around the boundary, so points
// put on a circle analytically are not misfiled by rounding.
Containment containment(const Disk& disk, const Point& p);

// Radius of the packing argument's disks for an optimal solution:
// cost / lambda, always with the plane factor for the instance's gamma.
double packing_radius(const Instance& inst, const Solution& opt);

// Every point of the instance lies strictly inside at most gamma of the
// disks of packing_radius centered on optimal members.
bool check_opt_disk_lemma(const Instance& inst, const Solution& opt);

// For a partial set which is still feasible at the optimal threshold
// (cost_set(partial) >= rho up to the growth slack, |partial| < k), some
// optimal member's disk holds at most gamma-1 partial members strictly
// inside. Throws PreconditionUnmet when the hypothesis fails.
bool check_counting_lemma(const Instance& inst, const Solution& opt,
                          std::span<const int> partial);

// Containment limits implied by the packing argument: each point lies in
// at most gamma+1 optimal disks (boundary included) and strictly inside at
// most gamma of them.
bool check_containment_corollaries(const Instance& inst, const Solution& opt);

// Line-mode gamma=2 structure of an optimum: every cost-attaining member is
// interior in left-to-right order, its two nearest optimal members are its
// order-neighbors, and those straddle it. Throws PreconditionUnmet unless
// mode is Line and gamma is 2.
bool check_line_structure(const Instance& inst, const Solution& opt);

struct RatioReport {
  int trial = 0;
  int n = 0;
  int k = 0;
  int gamma = 0;
  Mode mode = Mode::Plane;
  std::uint64_t seed = 0;
  double oracle_cost = 0.0;
  double alg_cost = 0.0;
  double ratio = 0.0;  // oracle_cost / alg_cost
  double bound = 0.0;  // lambda_for(gamma, mode)
  bool pass = false;   // ratio <= bound + 1e-9
  bool budget_exceeded = false;
};

struct SweepSpec {
  Family family = Family::Uniform;
  int n_min = 0;
  int n_max = 0;
  int k_min = 0;
  int k_max = 0;
  int gamma = 2;
  std::uint64_t seed = 0;
  double extent = 1.0;

  void validate() const;  // throws InvalidSpec
};

// Runs `trials` generated instances through one solver and the exhaustive
// oracle. Per-trial sizes and generator seeds derive deterministically from
// the sweep seed. A trial whose oracle exceeds the budget is reported with
// budget_exceeded set and pass false.
std::vector<RatioReport> run_ratio_sweep(const SweepSpec& spec, int trials,
                                         Method algorithm,
                                         std::uint64_t oracle_budget =
                                             10'000'000);

}  // namespace disp
