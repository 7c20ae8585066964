#include <cmath>
#include <sstream>

#include "disp/instances.hpp"
#include "disp/rng.hpp"
#include "doctest.h"

using namespace disp;

TEST_CASE("write then read returns the identical instance, bit for bit") {
  for (const Family family :
       {Family::Uniform, Family::Collinear, Family::Grid, Family::Clustered}) {
    GeneratorSpec spec;
    spec.family = family;
    spec.n = 17;
    spec.k = 5;
    spec.gamma = 2;
    spec.seed = 99;
    spec.extent = 3.5;
    const Instance inst = generate(spec);

    const std::string text = write_instance_string(inst);
    std::istringstream in(text);
    const Instance back = read_instance(in);

    REQUIRE(back.n() == inst.n());
    CHECK(back.k == inst.k);
    CHECK(back.gamma == inst.gamma);
    CHECK(back.mode == inst.mode);
    for (int i = 0; i < inst.n(); ++i) {
      CHECK(back.points[i].x == inst.points[i].x);
      CHECK(back.points[i].y == inst.points[i].y);
    }
    // a second serialization is byte-identical
    CHECK(write_instance_string(back) == text);
  }
}

TEST_CASE("reader skips comments, blank lines, and CRLF endings") {
  const std::string text =
      "# layout fixture\r\n"
      "\r\n"
      "4 3 2 line\r\n"
      "0 0\r\n"
      "  # interior comment\r\n"
      "1 0\r\n"
      "2 0\r\n"
      "\r\n"
      "3 0\r\n";
  std::istringstream in(text);
  const Instance inst = read_instance(in);
  CHECK(inst.n() == 4);
  CHECK(inst.k == 3);
  CHECK(inst.mode == Mode::Line);
  CHECK(inst.points[3].x == 3.0);
}

TEST_CASE("reader reports the offending line") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_instance(in);
  };

  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("3 3 2\n0 0\n1 0\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse("3 3 2 plane\n0 0\n1 zero\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse("3 3 2 plane\n0 0\n1 0\n2 0\n9 9\n"), ParseError);
  CHECK_THROWS_AS(parse("3 3 2 plane\n0 0\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse("3 3 2 orbit\n0 0\n1 0\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse("3 3 2 plane\n0 0\n1 inf\n2 0\n"), ParseError);

  try {
    parse("# c\n3 3 2 plane\n0 0\nbad bad\n2 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
  }
}

TEST_CASE("semantic violations raise InvariantViolation") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_instance(in);
  };
  // k out of range
  CHECK_THROWS_AS(parse("3 9 2 plane\n0 0\n1 0\n2 0\n"), InvariantViolation);
  CHECK_THROWS_AS(parse("3 2 2 plane\n0 0\n1 0\n2 0\n"), InvariantViolation);
  // gamma out of range
  CHECK_THROWS_AS(parse("3 3 5 plane\n0 0\n1 0\n2 0\n"), InvariantViolation);
  // line mode with off-axis point
  CHECK_THROWS_AS(parse("3 3 2 line\n0 0\n1 0.25\n2 0\n"), InvariantViolation);
}

TEST_CASE("generation is deterministic and seed-sensitive") {
  GeneratorSpec spec;
  spec.family = Family::Uniform;
  spec.n = 30;
  spec.k = 6;
  spec.gamma = 2;
  spec.seed = 7;

  const Instance a = generate(spec);
  const Instance b = generate(spec);
  REQUIRE(a.n() == b.n());
  for (int i = 0; i < a.n(); ++i) {
    CHECK(a.points[i].x == b.points[i].x);
    CHECK(a.points[i].y == b.points[i].y);
  }

  spec.seed = 8;
  const Instance c = generate(spec);
  bool differs = false;
  for (int i = 0; i < a.n(); ++i) {
    differs = differs || a.points[i].x != c.points[i].x;
  }
  CHECK(differs);
}

TEST_CASE("pinned stream: uniform seed 7 starts at the frozen coordinates") {
  GeneratorSpec spec;
  spec.family = Family::Uniform;
  spec.n = 3;
  spec.k = 3;
  spec.gamma = 2;
  spec.seed = 7;
  const Instance inst = generate(spec);
  // regression pin for the documented draw order (x then y per point)
  CHECK(format_double(inst.points[0].x) == "0.7005764821796896");
  CHECK(format_double(inst.points[0].y) == "0.2787512294737843");
}

TEST_CASE("family shapes") {
  GeneratorSpec spec;
  spec.n = 9;
  spec.k = 4;
  spec.gamma = 2;
  spec.seed = 3;
  spec.extent = 2.0;

  spec.family = Family::Collinear;
  const Instance line = generate(spec);
  CHECK(line.mode == Mode::Line);
  for (const Point& p : line.points) {
    CHECK(p.y == 0.0);
    CHECK(p.x >= 0.0);
    CHECK(p.x < 2.0);
  }

  spec.family = Family::Grid;
  const Instance grid = generate(spec);
  CHECK(grid.mode == Mode::Plane);
  // 9 points form the full 3x3 lattice with spacing extent/2
  CHECK(grid.points[0].x == 0.0);
  CHECK(grid.points[1].x == 1.0);
  CHECK(grid.points[2].x == 2.0);
  CHECK(grid.points[3].y == 1.0);
  CHECK(grid.points[8].x == 2.0);
  CHECK(grid.points[8].y == 2.0);

  spec.family = Family::Uniform;
  const Instance uni = generate(spec);
  for (const Point& p : uni.points) {
    CHECK(p.x >= 0.0);
    CHECK(p.x < 2.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y < 2.0);
  }

  spec.family = Family::Clustered;
  const Instance clu = generate(spec);
  CHECK(clu.mode == Mode::Plane);
  CHECK(clu.n() == 9);
}

TEST_CASE("generator spec validation") {
  GeneratorSpec spec;
  spec.family = Family::Uniform;
  spec.n = 5;
  spec.k = 3;
  spec.gamma = 2;
  CHECK_NOTHROW(spec.validate());
  spec.k = 6;
  CHECK_THROWS_AS(spec.validate(), InvalidSpec);
  spec.k = 2;
  CHECK_THROWS_AS(spec.validate(), InvalidSpec);
  spec.k = 3;
  spec.gamma = 4;
  CHECK_THROWS_AS(spec.validate(), InvalidSpec);
  spec.gamma = 2;
  spec.extent = -1.0;
  CHECK_THROWS_AS(spec.validate(), InvalidSpec);
  spec.extent = 1.0;
  spec.n = 0;
  CHECK_THROWS_AS(spec.validate(), InvalidSpec);
}

TEST_CASE("fixture path layout") {
  GeneratorSpec spec;
  spec.family = Family::Grid;
  spec.n = 10;
  spec.k = 4;
  spec.gamma = 2;
  spec.seed = 7;
  CHECK(fixture_relpath(spec) == "grid/10_4_2_7.txt");
  spec.family = Family::Clustered;
  spec.gamma = 1;
  CHECK(fixture_relpath(spec) == "clustered/10_4_1_7.txt");
}

TEST_CASE("format_double round-trips exactly") {
  Xoshiro256StarStar rng(5);
  for (int t = 0; t < 1000; ++t) {
    const double v = (rng.next_double() - 0.5) * std::pow(10.0, (int)rng.next_in(0, 6));
    const std::string s = format_double(v);
    std::istringstream in("2 2 1 plane\n" + s + " 0\n" + s + " 1\n");
    // reuse the instance parser as the decimal reader
    const Instance inst = read_instance(in);
    CHECK(inst.points[0].x == v);
  }
}

TEST_CASE("family names round-trip") {
  for (const Family f :
       {Family::Uniform, Family::Collinear, Family::Grid, Family::Clustered}) {
    CHECK(family_from_string(to_string(f)) == f);
  }
  CHECK_THROWS_AS(family_from_string("ring"), InvalidSpec);
}
