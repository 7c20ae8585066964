#include "disp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "disp/rng.hpp"

namespace disp {

namespace {

void validate_solution_indices(const Instance& inst, const Solution& sol) {
  if (static_cast<int>(sol.indices.size()) != inst.k) {
    throw InvalidInstance("solution size does not match k");
  }
  std::vector<int> sorted = sol.indices;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= inst.n()) {
      throw InvalidInstance("solution index out of range");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw InvalidInstance("solution indices must be distinct");
    }
  }
}

int count_contained(std::span<const Point> pts, const Disk& disk,
                    std::span<const int> members, bool proper_only) {
  int count = 0;
  for (int m : members) {
    const Containment c = containment(disk, pts[m]);
    if (c == Containment::ProperlyContained ||
        (!proper_only && c == Containment::OnBoundary)) {
      ++count;
    }
  }
  return count;
}

}  // namespace

Containment containment(const Disk& disk, const Point& p) {
  const double u = dist(disk.center, p);
  const double band = kBoundaryBand * std::max(disk.radius, u);
  if (std::abs(u - disk.radius) <= band) {
    return Containment::OnBoundary;
  }
  return u < disk.radius ? Containment::ProperlyContained
                         : Containment::Outside;
}

double packing_radius(const Instance& inst, const Solution& opt) {
  inst.validate();
  validate_solution_indices(inst, opt);
  // The packing argument is planar; its factor applies on a line as well,
  // where disks are intervals. The line-exactness factor 1 would shrink
  // nothing and the claim below would be false with it.
  return opt.cost / lambda_for(inst.gamma, Mode::Plane);
}

bool check_opt_disk_lemma(const Instance& inst, const Solution& opt) {
  const double rho = packing_radius(inst, opt);
  const auto pts = std::span<const Point>(inst.points);
  for (int p = 0; p < inst.n(); ++p) {
    int inside = 0;
    for (int j : opt.indices) {
      if (containment(Disk{pts[j], rho}, pts[p]) ==
          Containment::ProperlyContained) {
        ++inside;
      }
    }
    if (inside > inst.gamma) {
      return false;
    }
  }
  return true;
}

bool check_counting_lemma(const Instance& inst, const Solution& opt,
                          std::span<const int> partial) {
  const double rho = packing_radius(inst, opt);
  const auto pts = std::span<const Point>(inst.points);

  if (static_cast<int>(partial.size()) < inst.gamma + 1) {
    throw PreconditionUnmet("partial set needs at least gamma+1 members");
  }
  if (static_cast<int>(partial.size()) >= inst.k) {
    throw PreconditionUnmet("partial set must have fewer than k members");
  }
  std::vector<int> sorted(partial.begin(), partial.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= inst.n()) {
      throw InvalidInstance("partial index out of range");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw InvalidInstance("partial indices must be distinct");
    }
  }
  // Same slack as growth acceptance, so sets produced by a growth run at
  // threshold rho satisfy the hypothesis by construction.
  const double partial_cost = cost_set(pts, partial, inst.gamma);
  if (partial_cost < rho * (1.0 - kThresholdSlack)) {
    throw PreconditionUnmet("partial set cost is below the threshold");
  }

  for (int j : opt.indices) {
    const int inside =
        count_contained(pts, Disk{pts[j], rho}, partial, /*proper_only=*/true);
    if (inside <= inst.gamma - 1) {
      return true;
    }
  }
  return false;
}

bool check_containment_corollaries(const Instance& inst, const Solution& opt) {
  const double rho = packing_radius(inst, opt);
  const auto pts = std::span<const Point>(inst.points);
  for (int p = 0; p < inst.n(); ++p) {
    int closed = 0;
    int proper = 0;
    for (int j : opt.indices) {
      const Containment c = containment(Disk{pts[j], rho}, pts[p]);
      if (c == Containment::ProperlyContained) {
        ++proper;
        ++closed;
      } else if (c == Containment::OnBoundary) {
        ++closed;
      }
    }
    if (closed > inst.gamma + 1 || proper > inst.gamma) {
      return false;
    }
  }
  return true;
}

bool check_line_structure(const Instance& inst, const Solution& opt) {
  inst.validate();
  if (inst.mode != Mode::Line) {
    throw PreconditionUnmet("line structure check needs Line mode");
  }
  if (inst.gamma != 2) {
    throw PreconditionUnmet("line structure check needs gamma = 2");
  }
  validate_solution_indices(inst, opt);
  const auto pts = std::span<const Point>(inst.points);

  std::vector<int> order = opt.indices;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    return a < b;
  });
  std::vector<int> rank(inst.n(), -1);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    rank[order[i]] = i;
  }

  const double cost = cost_set(pts, opt.indices, inst.gamma);
  const int last = static_cast<int>(order.size()) - 1;
  for (int m : opt.indices) {
    const double cp = cost_point(pts, m, opt.indices, inst.gamma);
    if (cp > cost * (1.0 + kRelTol)) {
      continue;  // not a cost attainer
    }
    const int i = rank[m];
    if (i == 0 || i == last) {
      return false;
    }
    const int left = order[i - 1];
    const int right = order[i + 1];
    std::vector<int> nn = nearest_indices(pts, m, opt.indices, inst.gamma);
    std::sort(nn.begin(), nn.end());
    std::vector<int> expected = {left, right};
    std::sort(expected.begin(), expected.end());
    if (nn != expected) {
      return false;
    }
    if (!(pts[left].x < pts[m].x && pts[m].x < pts[right].x)) {
      return false;
    }
  }
  return true;
}

void SweepSpec::validate() const {
  if (gamma != 1 && gamma != 2) {
    throw InvalidSpec("gamma must be 1 or 2");
  }
  if (family == Family::Collinear && gamma == 1) {
    throw InvalidSpec("gamma=1 on a line is not supported");
  }
  if (n_min < gamma + 1 || n_min > n_max) {
    throw InvalidSpec("need gamma+1 <= n_min <= n_max");
  }
  if (k_min > k_max) {
    throw InvalidSpec("need k_min <= k_max");
  }
  if (std::max(k_min, gamma + 1) > std::min(k_max, n_min)) {
    throw InvalidSpec("k range admits no valid k for the smallest n");
  }
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw InvalidSpec("extent must be positive and finite");
  }
}

std::vector<RatioReport> run_ratio_sweep(const SweepSpec& spec, int trials,
                                         Method algorithm,
                                         std::uint64_t oracle_budget) {
  spec.validate();
  if (trials < 1) {
    throw InvalidSpec("trials must be >= 1");
  }
  if (algorithm == Method::Greedy &&
      (spec.gamma != 2 || spec.family == Family::Collinear)) {
    throw InvalidSpec("greedy sweeps need gamma=2 plane families");
  }

  SplitMix64 seeder(spec.seed);
  std::vector<RatioReport> reports;
  reports.reserve(trials);

  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t n_draw = seeder.next();
    const std::uint64_t k_draw = seeder.next();
    const std::uint64_t gen_seed = seeder.next();

    const int n = spec.n_min +
                  static_cast<int>(n_draw % (spec.n_max - spec.n_min + 1));
    const int k_lo = std::max(spec.k_min, spec.gamma + 1);
    const int k_hi = std::min(spec.k_max, n);
    const int k = k_lo + static_cast<int>(k_draw % (k_hi - k_lo + 1));

    GeneratorSpec gen;
    gen.family = spec.family;
    gen.n = n;
    gen.k = k;
    gen.gamma = spec.gamma;
    gen.seed = gen_seed;
    gen.extent = spec.extent;
    const Instance inst = generate(gen);

    RatioReport rep;
    rep.trial = trial;
    rep.n = n;
    rep.k = k;
    rep.gamma = spec.gamma;
    rep.mode = inst.mode;
    rep.seed = gen_seed;
    rep.bound = lambda_for(spec.gamma, inst.mode);

    try {
      const Solution oracle = brute_force_opt(inst, oracle_budget);
      Solution sol;
      switch (algorithm) {
        case Method::Greedy:
          sol = greedy_dispersion(inst);
          break;
        case Method::Framework:
          sol = framework_solve(inst);
          break;
        case Method::BruteForce:
          sol = oracle;
          break;
      }
      rep.oracle_cost = oracle.cost;
      rep.alg_cost = sol.cost;
      if (sol.cost > 0.0) {
        rep.ratio = oracle.cost / sol.cost;
      } else {
        rep.ratio = oracle.cost == 0.0
                        ? 1.0
                        : std::numeric_limits<double>::infinity();
      }
      rep.pass = rep.ratio <= rep.bound + kRelTol;
    } catch (const BudgetExceeded&) {
      rep.budget_exceeded = true;
      rep.oracle_cost = std::numeric_limits<double>::quiet_NaN();
      rep.alg_cost = std::numeric_limits<double>::quiet_NaN();
      rep.ratio = std::numeric_limits<double>::quiet_NaN();
      rep.pass = false;
    }
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace disp
