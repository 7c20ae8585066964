#include "disp/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace disp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double growth_threshold(double rho) { return rho * (1.0 - kThresholdSlack); }

// cost_set of a pair/triple, matching cost_set bit for bit without the
// index bookkeeping. Used by the seed scans.
double pair_cost(const Point& a, const Point& b) { return dist(a, b); }

double triple_cost(const Point& a, const Point& b, const Point& c) {
  const double dab = dist(a, b);
  const double dac = dist(a, c);
  const double dbc = dist(b, c);
  return std::min({dab + dac, dab + dbc, dac + dbc});
}

double seed_cost(std::span<const Point> pts, std::span<const int> seed,
                 int gamma) {
  if (gamma == 1) {
    return pair_cost(pts[seed[0]], pts[seed[1]]);
  }
  return triple_cost(pts[seed[0]], pts[seed[1]], pts[seed[2]]);
}

// Advances c to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) {
        c[j] = c[j - 1] + 1;
      }
      return true;
    }
  }
  return false;
}

// Maintains cost_gamma(S ∪ {q}) for every candidate q while points are
// appended to S. All derived values equal a fresh cost_point / cost_set
// evaluation bit for bit: squared distances are used only to decide which
// exact values to (re)compute, never as substitutes for them.
//
// Per member p it stores the one/two nearest member distances (value and
// squared) and the member's own cost. Per candidate q it stores the
// one/two nearest member distances (own cost cown = cost_gamma(q, S)) and
// cterm = min over members p of cost_gamma(p, S ∪ {q}). Both only ever
// decrease as S grows, so a running minimum stays exact: whenever a
// member's nearest pair changes, its term is re-evaluated against every
// live candidate in the same step.
//
// In threshold mode a candidate whose union cost drops below the threshold
// is retired permanently; monotonicity makes that sound.
class UnionCostEvaluator {
 public:
  UnionCostEvaluator(std::span<const Point> pts, int gamma)
      : pts_(pts),
        gamma_(gamma),
        n_(static_cast<int>(pts.size())),
        md1_(n_), md2_(n_), md1sq_(n_), md2sq_(n_), mcost_(n_),
        cs1_(n_), cs2_(n_), csq1_(n_), csq2_(n_),
        cown_(n_), cterm_(n_),
        in_set_(n_, 0), alive_(n_, 0) {}

  // Threshold engaged: candidates below it are dropped from the pool.
  void reset(std::span<const int> members, std::optional<double> threshold) {
    threshold_ = threshold;
    members_.assign(members.begin(), members.end());
    std::fill(in_set_.begin(), in_set_.end(), char{0});
    for (int m : members_) {
      in_set_[m] = 1;
    }
    for (int m : members_) {
      double b1sq = kInf;
      double b2sq = kInf;
      for (int other : members_) {
        if (other == m) continue;
        const double dsq = dist_sq(pts_[m], pts_[other]);
        if (dsq < b1sq) {
          b2sq = b1sq;
          b1sq = dsq;
        } else if (dsq < b2sq) {
          b2sq = dsq;
        }
      }
      set_member_pair(m, b1sq, b2sq);
    }
    for (int q = 0; q < n_; ++q) {
      if (in_set_[q]) continue;
      double b1sq = kInf;
      double b2sq = kInf;
      double term = kInf;
      for (int m : members_) {
        const double dsq = dist_sq(pts_[q], pts_[m]);
        if (dsq < b1sq) {
          b2sq = b1sq;
          b1sq = dsq;
        } else if (dsq < b2sq) {
          b2sq = dsq;
        }
        term = std::min(term, member_term(m, dsq));
      }
      csq1_[q] = b1sq;
      cs1_[q] = std::sqrt(b1sq);
      if (gamma_ == 2) {
        csq2_[q] = b2sq;
        cs2_[q] = std::sqrt(b2sq);
        cown_[q] = cs1_[q] + cs2_[q];
      } else {
        cown_[q] = cs1_[q];
      }
      cterm_[q] = term;
      alive_[q] = threshold_ ? (union_cost(q) >= *threshold_ ? 1 : 0) : 1;
    }
  }

  void add(int q_new) {
    in_set_[q_new] = 1;
    alive_[q_new] = 0;

    double b1sq = kInf;
    double b2sq = kInf;
    for (int m : members_) {
      const double dsq = dist_sq(pts_[q_new], pts_[m]);
      if (dsq < b1sq) {
        b2sq = b1sq;
        b1sq = dsq;
      } else if (dsq < b2sq) {
        b2sq = dsq;
      }
    }
    set_member_pair(q_new, b1sq, b2sq);

    changed_.clear();
    for (int m : members_) {
      const double dsq = dist_sq(pts_[m], pts_[q_new]);
      if (gamma_ == 2) {
        if (dsq < md2sq_[m]) {
          if (dsq < md1sq_[m]) {
            md2sq_[m] = md1sq_[m];
            md2_[m] = md1_[m];
            md1sq_[m] = dsq;
            md1_[m] = std::sqrt(dsq);
          } else {
            md2sq_[m] = dsq;
            md2_[m] = std::sqrt(dsq);
          }
          mcost_[m] = md1_[m] + md2_[m];
          changed_.push_back(m);
        }
      } else {
        if (dsq < md1sq_[m]) {
          md1sq_[m] = dsq;
          md1_[m] = std::sqrt(dsq);
          mcost_[m] = md1_[m];
          changed_.push_back(m);
        }
      }
    }
    members_.push_back(q_new);

    for (int q = 0; q < n_; ++q) {
      if (in_set_[q] || (threshold_ && !alive_[q])) continue;
      const double dsq = dist_sq(pts_[q], pts_[q_new]);
      double d = -1.0;
      if (gamma_ == 2) {
        if (dsq < csq2_[q]) {
          d = std::sqrt(dsq);
          if (dsq < csq1_[q]) {
            csq2_[q] = csq1_[q];
            cs2_[q] = cs1_[q];
            csq1_[q] = dsq;
            cs1_[q] = d;
          } else {
            csq2_[q] = dsq;
            cs2_[q] = d;
          }
          cown_[q] = cs1_[q] + cs2_[q];
        }
      } else {
        if (dsq < csq1_[q]) {
          d = std::sqrt(dsq);
          csq1_[q] = dsq;
          cs1_[q] = d;
          cown_[q] = cs1_[q];
        }
      }
      double term = cterm_[q];
      term = std::min(term, member_term_lazy(q_new, dsq, d));
      for (int m : changed_) {
        const double dsqm = dist_sq(pts_[q], pts_[m]);
        term = std::min(term, member_term(m, dsqm));
      }
      cterm_[q] = term;
      if (threshold_ && std::min(cown_[q], term) < *threshold_) {
        alive_[q] = 0;
      }
    }
  }

  double own_cost(int q) const { return cown_[q]; }
  double union_cost(int q) const { return std::min(cown_[q], cterm_[q]); }

  // Smallest own cost among pool candidates, ties to the smaller index.
  int pick_min_own() const {
    int best = -1;
    double best_cost = kInf;
    for (int q = 0; q < n_; ++q) {
      if (in_set_[q] || !alive_[q]) continue;
      if (cown_[q] < best_cost) {
        best_cost = cown_[q];
        best = q;
      }
    }
    return best;
  }

  // Largest union cost among all candidates, ties to the smaller index.
  int pick_max_union() const {
    int best = -1;
    double best_cost = -kInf;
    for (int q = 0; q < n_; ++q) {
      if (in_set_[q]) continue;
      const double c = union_cost(q);
      if (c > best_cost) {
        best_cost = c;
        best = q;
      }
    }
    return best;
  }

 private:
  void set_member_pair(int m, double b1sq, double b2sq) {
    md1sq_[m] = b1sq;
    md1_[m] = std::sqrt(b1sq);
    if (gamma_ == 2) {
      md2sq_[m] = b2sq;
      md2_[m] = std::sqrt(b2sq);
      mcost_[m] = md1_[m] + md2_[m];
    } else {
      mcost_[m] = md1_[m];
    }
  }

  // cost_gamma(m, S ∪ {q}) given the squared distance between m and q. The
  // shortcut branch returns the stored cost: when q is no nearer than m's
  // current gamma-th neighbor the value is unchanged, and on exact value
  // ties both branches agree.
  double member_term(int m, double dsq) const {
    if (gamma_ == 2) {
      return dsq >= md2sq_[m] ? mcost_[m] : md1_[m] + std::sqrt(dsq);
    }
    return dsq >= md1sq_[m] ? mcost_[m] : std::sqrt(dsq);
  }

  // Same, reusing an already-computed distance value when available.
  double member_term_lazy(int m, double dsq, double d) const {
    if (gamma_ == 2) {
      if (dsq >= md2sq_[m]) return mcost_[m];
      if (d < 0.0) d = std::sqrt(dsq);
      return md1_[m] + d;
    }
    if (dsq >= md1sq_[m]) return mcost_[m];
    return d < 0.0 ? std::sqrt(dsq) : d;
  }

  std::span<const Point> pts_;
  int gamma_;
  int n_;
  std::vector<int> members_;
  std::vector<int> changed_;
  std::vector<double> md1_, md2_, md1sq_, md2sq_, mcost_;
  std::vector<double> cs1_, cs2_, csq1_, csq2_;
  std::vector<double> cown_, cterm_;
  std::vector<char> in_set_;
  std::vector<char> alive_;
  std::optional<double> threshold_;
};

void validate_seed(const Instance& inst, std::span<const int> seed) {
  if (static_cast<int>(seed.size()) < inst.gamma + 1 ||
      static_cast<int>(seed.size()) > inst.k) {
    throw InvalidInstance("seed size must lie in [gamma+1, k]");
  }
  std::vector<int> sorted(seed.begin(), seed.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= inst.n()) {
      throw InvalidInstance("seed index out of range");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw InvalidInstance("seed indices must be distinct");
    }
  }
}

// Growth under GrowthRule::FilteredMin. Equivalent to rescanning the full
// pool {q : cost(S ∪ {q}) >= rho_t} each step and taking the pool member
// with the smallest attachment cost; the evaluator's retired candidates
// can never re-enter that pool because union costs only decrease.
std::optional<std::vector<int>> grow_filtered(UnionCostEvaluator& ev,
                                              const Instance& inst,
                                              std::vector<int> s, double rho) {
  if (static_cast<int>(s.size()) == inst.k) {
    return s;
  }
  const double rho_t = growth_threshold(rho);
  // cost(S ∪ {q}) <= cost(S) for every q, so nothing can ever qualify.
  if (cost_set(inst.points, s, inst.gamma) < rho_t) {
    return std::nullopt;
  }
  ev.reset(s, rho_t);
  while (static_cast<int>(s.size()) < inst.k) {
    const int pick = ev.pick_min_own();
    if (pick < 0) {
      return std::nullopt;
    }
    ev.add(pick);
    s.push_back(pick);
  }
  std::sort(s.begin(), s.end());
  return s;
}

// Growth under GrowthRule::LiteralMin: the globally cheapest point is the
// only one considered, and the attempt stalls if it breaks the threshold.
std::optional<std::vector<int>> grow_literal(UnionCostEvaluator& ev,
                                             const Instance& inst,
                                             std::vector<int> s, double rho) {
  if (static_cast<int>(s.size()) == inst.k) {
    return s;
  }
  const double rho_t = growth_threshold(rho);
  ev.reset(s, std::nullopt);
  while (static_cast<int>(s.size()) < inst.k) {
    const int pick = ev.pick_min_own();
    if (pick < 0 || ev.union_cost(pick) < rho_t) {
      return std::nullopt;
    }
    ev.add(pick);
    s.push_back(pick);
  }
  std::sort(s.begin(), s.end());
  return s;
}

std::optional<std::vector<int>> grow(UnionCostEvaluator& ev,
                                     const Instance& inst,
                                     std::span<const int> seed, double rho,
                                     GrowthRule rule) {
  std::vector<int> s(seed.begin(), seed.end());
  std::sort(s.begin(), s.end());
  if (rule == GrowthRule::FilteredMin) {
    return grow_filtered(ev, inst, std::move(s), rho);
  }
  return grow_literal(ev, inst, std::move(s), rho);
}

struct SeedOutcome {
  double rho = -1.0;
  std::vector<int> seed;
  std::vector<int> grown;

  // Deterministic preference: larger rho first, then the earlier seed.
  bool better_than(const SeedOutcome& other) const {
    if (other.rho < 0.0) return rho >= 0.0;
    if (rho != other.rho) return rho > other.rho;
    return seed < other.seed;
  }
};

Solution finish_framework(const Instance& inst, const SeedOutcome& winner) {
  if (winner.rho < 0.0) {
    // No seed grew to k at a positive threshold. A seed built from an
    // optimal member and its nearest optimal neighbors always grows at
    // opt/lambda, so this happens exactly when every k-subset costs zero.
    throw NoSolution(
        "every k-point selection has zero cost; no positive dispersion "
        "threshold can be certified");
  }
  Solution sol;
  sol.indices = winner.grown;
  sol.cost = cost_set(inst.points, sol.indices, inst.gamma);
  sol.method = Method::Framework;
  sol.lower_bound = winner.rho;
  return sol;
}

Solution framework_sequential(const Instance& inst,
                              const FrameworkOptions& options,
                              const SeedTrace* trace) {
  const double lambda = lambda_for(inst.gamma, inst.mode);
  const int n = inst.n();
  const int seed_size = inst.gamma + 1;
  UnionCostEvaluator ev(inst.points, inst.gamma);

  double beta = 0.0;
  SeedOutcome winner;
  std::vector<int> seed(seed_size);
  for (int i = 0; i < seed_size; ++i) {
    seed[i] = i;
  }
  do {
    const double alpha = seed_cost(inst.points, seed, inst.gamma);
    const double rho = alpha / lambda;
    if (rho > beta) {
      auto grown = grow(ev, inst, seed, rho, options.rule);
      if (grown) {
        beta = rho;
        winner.rho = rho;
        winner.seed = seed;
        winner.grown = std::move(*grown);
      }
    }
    if (trace) {
      FrameworkState state;
      state.lambda = lambda;
      state.alpha = alpha;
      state.rho = rho;
      state.beta = beta;
      if (winner.rho >= 0.0) {
        state.best = winner.grown;
      }
      (*trace)(state);
    }
  } while (next_combination(seed, n));

  return finish_framework(inst, winner);
}

Solution framework_parallel(const Instance& inst,
                            const FrameworkOptions& options, int threads) {
  const double lambda = lambda_for(inst.gamma, inst.mode);
  const int n = inst.n();
  const int seed_size = inst.gamma + 1;

  std::atomic<double> shared_beta{0.0};
  std::atomic<int> next_first{0};
  std::vector<SeedOutcome> local(threads);

  auto worker = [&](int w) {
    UnionCostEvaluator ev(inst.points, inst.gamma);
    SeedOutcome& best = local[w];
    std::vector<int> seed(seed_size);
    for (;;) {
      const int first = next_first.fetch_add(1, std::memory_order_relaxed);
      if (first > n - seed_size) {
        break;
      }
      seed[0] = first;
      for (int i = 1; i < seed_size; ++i) {
        seed[i] = first + i;
      }
      // Iterate all seeds whose smallest index is `first`: the tail runs
      // through the combinations of {first+1 .. n-1}.
      for (;;) {
        const double alpha = seed_cost(inst.points, seed, inst.gamma);
        const double rho = alpha / lambda;
        // `>=` rather than `>` so that on exact rho ties every contender
        // still grows; the final reduction then picks the earliest seed,
        // matching the sequential scan no matter the interleaving.
        if (rho > 0.0 && rho >= shared_beta.load(std::memory_order_relaxed)) {
          auto grown = grow(ev, inst, seed, rho, options.rule);
          if (grown) {
            SeedOutcome candidate;
            candidate.rho = rho;
            candidate.seed = seed;
            candidate.grown = std::move(*grown);
            if (candidate.better_than(best)) {
              best = std::move(candidate);
            }
            double cur = shared_beta.load(std::memory_order_relaxed);
            while (cur < rho && !shared_beta.compare_exchange_weak(
                                    cur, rho, std::memory_order_relaxed)) {
            }
          }
        }
        // advance the tail combination; stop when it wraps
        int pos = seed_size - 1;
        while (pos >= 1 && seed[pos] == n - seed_size + pos) {
          --pos;
        }
        if (pos < 1) {
          break;
        }
        ++seed[pos];
        for (int j = pos + 1; j < seed_size; ++j) {
          seed[j] = seed[j - 1] + 1;
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back(worker, w);
  }
  for (auto& t : pool) {
    t.join();
  }

  SeedOutcome winner;
  for (const SeedOutcome& cand : local) {
    if (cand.rho >= 0.0 && cand.better_than(winner)) {
      winner = cand;
    }
  }
  return finish_framework(inst, winner);
}

}  // namespace

double lambda_for(int gamma, Mode mode) {
  if (gamma != 1 && gamma != 2) {
    throw InvalidInstance("gamma must be 1 or 2");
  }
  if (mode == Mode::Line) {
    if (gamma == 1) {
      throw UnsupportedRegime("gamma=1 on a line is not supported");
    }
    return 1.0;
  }
  return gamma == 2 ? 2.0 * std::sqrt(3.0) : 2.0;
}

Solution greedy_dispersion(const Instance& inst) {
  inst.validate();
  if (inst.gamma != 2 || inst.mode != Mode::Plane) {
    throw UnsupportedRegime("greedy solver requires gamma=2 in plane mode");
  }
  const auto pts = std::span<const Point>(inst.points);
  const int n = inst.n();

  // Exhaustive best triple; lexicographically first on cost ties.
  double best_cost = -kInf;
  int bi = 0, bj = 1, bl = 2;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) {
        const double c = triple_cost(pts[i], pts[j], pts[l]);
        if (c > best_cost) {
          best_cost = c;
          bi = i;
          bj = j;
          bl = l;
        }
      }
    }
  }

  std::vector<int> s = {bi, bj, bl};
  UnionCostEvaluator ev(pts, inst.gamma);
  ev.reset(s, std::nullopt);
  while (static_cast<int>(s.size()) < inst.k) {
    const int pick = ev.pick_max_union();
    ev.add(pick);
    s.push_back(pick);
  }
  std::sort(s.begin(), s.end());

  Solution sol;
  sol.cost = cost_set(pts, s, inst.gamma);
  sol.indices = std::move(s);
  sol.method = Method::Greedy;
  return sol;
}

std::optional<std::vector<int>> framework_grow(const Instance& inst,
                                               std::span<const int> seed,
                                               double rho, GrowthRule rule) {
  inst.validate();
  validate_seed(inst, seed);
  if (!std::isfinite(rho)) {
    throw InvalidInstance("rho must be finite");
  }
  UnionCostEvaluator ev(inst.points, inst.gamma);
  return grow(ev, inst, seed, rho, rule);
}

Solution framework_solve(const Instance& inst,
                         const FrameworkOptions& options) {
  inst.validate();
  int threads = options.threads;
  if (threads == 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  if (threads < 0) {
    throw InvalidSpec("threads must be >= 0");
  }
  threads = std::max(1, threads);
  if (threads == 1) {
    return framework_sequential(inst, options, nullptr);
  }
  return framework_parallel(inst, options, threads);
}

Solution framework_solve(const Instance& inst, const FrameworkOptions& options,
                         const SeedTrace& trace) {
  inst.validate();
  return framework_sequential(inst, options, &trace);
}

Solution brute_force_opt(const Instance& inst, std::uint64_t subset_budget) {
  inst.validate();
  const int n = inst.n();
  const int k = inst.k;
  if (binomial_capped(n, k, subset_budget) > subset_budget) {
    throw BudgetExceeded("C(n, k) exceeds the subset budget of " +
                         std::to_string(subset_budget));
  }
  const auto pts = std::span<const Point>(inst.points);
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) {
    comb[i] = i;
  }
  double best_cost = -kInf;
  std::vector<int> best;
  do {
    const double c = cost_set(pts, comb, inst.gamma);
    if (c > best_cost) {
      best_cost = c;
      best = comb;
    }
  } while (next_combination(comb, n));

  Solution sol;
  sol.indices = std::move(best);
  sol.cost = best_cost;
  sol.method = Method::BruteForce;
  return sol;
}

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) /
        static_cast<unsigned __int128>(i);
    if (r > cap) {
      return cap + 1;
    }
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace disp
