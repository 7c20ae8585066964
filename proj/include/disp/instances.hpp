#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "disp/core.hpp"

namespace disp {

enum class Family { Uniform, Collinear, Grid, Clustered };

const char* to_string(Family family);
Family family_from_string(std::string_view text);  // throws InvalidSpec

struct GeneratorSpec {
  Family family = Family::Uniform;
  int n = 0;
  int k = 0;
  int gamma = 2;
  std::uint64_t seed = 0;
  double extent = 1.0;  // bounding-box side (Collinear: segment length)

  void validate() const;  // throws InvalidSpec
};

// Deterministic instance construction; equal specs produce bit-identical
// point sets on every platform. Collinear instances come out in Line mode,
// all other families in Plane mode.
Instance generate(const GeneratorSpec& spec);

// Text format, one instance per stream:
//   <n> <k> <gamma> <plane|line>
//   <x> <y>          (n times)
// Lines whose first non-space character is '#' and blank lines are skipped.
// Coordinates use shortest round-trip decimal form, locale-independent.
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(const Instance& inst, std::ostream& out);
std::string write_instance_string(const Instance& inst);
void write_instance_file(const Instance& inst, const std::string& path);

// Canonical fixture location relative to a fixture root:
// <family>/<n>_<k>_<gamma>_<seed>.txt
std::string fixture_relpath(const GeneratorSpec& spec);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);
// General format rounded to 12 significant digits (report output).
std::string format_sig12(double value);

}  // namespace disp
