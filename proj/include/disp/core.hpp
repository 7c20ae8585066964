#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace disp {

// Default relative tolerance for cost comparisons.
inline constexpr double kRelTol = 1e-9;
// Growth acceptance slack: a candidate passes a threshold rho when its cost
// is at least rho * (1 - kThresholdSlack).
inline constexpr double kThresholdSlack = 1e-12;
// Relative band around a disk boundary inside which a point counts as "on"
// the boundary rather than strictly inside or outside.
inline constexpr double kBoundaryBand = 1e-12;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a point has fewer than gamma other members to measure against.
struct TooFewNeighbors : Error {
  using Error::Error;
};
// Raised when an instance or argument violates a documented precondition.
struct InvalidInstance : Error {
  using Error::Error;
};
// Raised for (gamma, mode) combinations no solver supports.
struct UnsupportedRegime : Error {
  using Error::Error;
};
// Raised when an enumeration would exceed its work budget.
struct BudgetExceeded : Error {
  using Error::Error;
};
// Raised when a solver cannot produce any feasible solution.
struct NoSolution : Error {
  using Error::Error;
};
// Raised when stored data contradicts the format's semantic rules.
struct InvariantViolation : Error {
  using Error::Error;
};
// Raised by structural checks whose hypothesis does not hold.
struct PreconditionUnmet : Error {
  using Error::Error;
};
// Raised for malformed generator or sweep parameters.
struct InvalidSpec : Error {
  using Error::Error;
};
// Raised by the instance reader; carries the 1-based offending line.
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& what)
      : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point() = default;
  Point(double px, double py) : x(px), y(py) {
    if (!std::isfinite(px) || !std::isfinite(py)) {
      throw InvalidInstance("point coordinates must be finite");
    }
  }
};

enum class Mode { Plane, Line };

const char* to_string(Mode mode);

struct Instance {
  std::vector<Point> points;
  int k = 0;
  int gamma = 0;
  Mode mode = Mode::Plane;

  int n() const noexcept { return static_cast<int>(points.size()); }
  // Throws InvalidInstance unless gamma in {1,2}, gamma+1 <= k <= n, and
  // every Line-mode point sits exactly on y = 0.
  void validate() const;
};

Instance make_instance(std::vector<Point> points, int k, int gamma,
                       Mode mode = Mode::Plane);

enum class Method { Greedy, Framework, BruteForce };

const char* to_string(Method method);

struct Solution {
  std::vector<int> indices;  // sorted ascending
  double cost = 0.0;
  Method method = Method::BruteForce;
  // Framework only: the certified floor cost/lambda the winning seed proved.
  std::optional<double> lower_bound;
};

inline double dist(const Point& p, const Point& q) noexcept {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline double dist_sq(const Point& p, const Point& q) noexcept {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return dx * dx + dy * dy;
}

// Sum of distances from points[p] to its gamma nearest members of s,
// excluding p itself. Ties break toward the smaller index.
double cost_point(std::span<const Point> points, int p, std::span<const int> s,
                  int gamma);

// min over members of cost_point; s needs at least gamma+1 members.
double cost_set(std::span<const Point> points, std::span<const int> s,
                int gamma);

// Indices of the gamma nearest members of s to points[p] (p excluded),
// ordered nearest first; ties break toward the smaller index.
std::vector<int> nearest_indices(std::span<const Point> points, int p,
                                 std::span<const int> s, int gamma);

// Convenience overloads evaluating against an instance's point set.
double cost_point(const Instance& inst, int p, std::span<const int> s);
double cost_set(const Instance& inst, std::span<const int> s);

}  // namespace disp
