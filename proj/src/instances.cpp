#include "disp/instances.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "disp/rng.hpp"

namespace disp {

namespace {

constexpr int kMaxPoints = 10'000'000;

bool is_blank(const std::string& line) {
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

bool is_comment(const std::string& line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      continue;
    }
    return c == '#';
  }
  return false;
}

std::vector<std::string_view> tokenize(const std::string& line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() &&
           std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i > start) {
      tokens.emplace_back(line.data() + start, i - start);
    }
  }
  return tokens;
}

int parse_int(std::string_view token, int line_no, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(),
                                   value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line_no, std::string("expected integer for ") + what);
  }
  return value;
}

double parse_double(std::string_view token, int line_no, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(),
                                   value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line_no, std::string("expected number for ") + what);
  }
  if (!std::isfinite(value)) {
    throw ParseError(line_no, std::string(what) + " must be finite");
  }
  return value;
}

}  // namespace

const char* to_string(Family family) {
  switch (family) {
    case Family::Uniform:
      return "uniform";
    case Family::Collinear:
      return "collinear";
    case Family::Grid:
      return "grid";
    case Family::Clustered:
      return "clustered";
  }
  return "?";
}

Family family_from_string(std::string_view text) {
  if (text == "uniform") return Family::Uniform;
  if (text == "collinear") return Family::Collinear;
  if (text == "grid") return Family::Grid;
  if (text == "clustered") return Family::Clustered;
  throw InvalidSpec("unknown family: " + std::string(text));
}

void GeneratorSpec::validate() const {
  if (gamma != 1 && gamma != 2) {
    throw InvalidSpec("gamma must be 1 or 2");
  }
  if (n < 1 || n > kMaxPoints) {
    throw InvalidSpec("n out of range");
  }
  if (k < gamma + 1 || k > n) {
    throw InvalidSpec("k must satisfy gamma+1 <= k <= n");
  }
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw InvalidSpec("extent must be positive and finite");
  }
}

Instance generate(const GeneratorSpec& spec) {
  spec.validate();
  Xoshiro256StarStar rng(spec.seed);
  std::vector<Point> pts;
  pts.reserve(spec.n);
  Mode mode = Mode::Plane;

  switch (spec.family) {
    case Family::Uniform: {
      for (int t = 0; t < spec.n; ++t) {
        const double x = rng.next_double() * spec.extent;
        const double y = rng.next_double() * spec.extent;
        pts.emplace_back(x, y);
      }
      break;
    }
    case Family::Collinear: {
      mode = Mode::Line;
      for (int t = 0; t < spec.n; ++t) {
        pts.emplace_back(rng.next_double() * spec.extent, 0.0);
      }
      break;
    }
    case Family::Grid: {
      int m = 1;
      while (m * m < spec.n) {
        ++m;
      }
      const double spacing = m > 1 ? spec.extent / (m - 1) : 0.0;
      for (int t = 0; t < spec.n; ++t) {
        pts.emplace_back((t % m) * spacing, (t / m) * spacing);
      }
      break;
    }
    case Family::Clustered: {
      const int centers = (spec.n + 4) / 5;
      std::vector<Point> ctr;
      ctr.reserve(centers);
      for (int c = 0; c < centers; ++c) {
        const double x = rng.next_double() * spec.extent;
        const double y = rng.next_double() * spec.extent;
        ctr.emplace_back(x, y);
      }
      const double sigma = spec.extent / 20.0;
      for (int t = 0; t < spec.n; ++t) {
        const Point& c = ctr[t % centers];
        const double x = c.x + gaussian_irwin_hall(rng) * sigma;
        const double y = c.y + gaussian_irwin_hall(rng) * sigma;
        pts.emplace_back(x, y);
      }
      break;
    }
  }

  return make_instance(std::move(pts), spec.k, spec.gamma, mode);
}

Instance read_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  int header_line = 0;
  int n = 0;
  int k = 0;
  int gamma = 0;
  Mode mode = Mode::Plane;
  bool have_header = false;
  std::vector<Point> pts;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (is_blank(line) || is_comment(line)) {
      continue;
    }
    const auto tokens = tokenize(line);
    if (!have_header) {
      if (tokens.size() != 4) {
        throw ParseError(line_no, "header needs: n k gamma mode");
      }
      n = parse_int(tokens[0], line_no, "n");
      k = parse_int(tokens[1], line_no, "k");
      gamma = parse_int(tokens[2], line_no, "gamma");
      if (tokens[3] == "plane") {
        mode = Mode::Plane;
      } else if (tokens[3] == "line") {
        mode = Mode::Line;
      } else {
        throw ParseError(line_no, "mode must be 'plane' or 'line'");
      }
      if (n < 1 || n > kMaxPoints) {
        throw ParseError(line_no, "n out of range");
      }
      have_header = true;
      header_line = line_no;
      pts.reserve(n);
      continue;
    }
    if (static_cast<int>(pts.size()) == n) {
      throw ParseError(line_no, "content after the last point");
    }
    if (tokens.size() != 2) {
      throw ParseError(line_no, "point line needs: x y");
    }
    const double x = parse_double(tokens[0], line_no, "x");
    const double y = parse_double(tokens[1], line_no, "y");
    pts.emplace_back(x, y);
  }

  if (!have_header) {
    throw ParseError(line_no + 1, "missing header");
  }
  if (static_cast<int>(pts.size()) != n) {
    throw ParseError(line_no + 1, "expected " + std::to_string(n) +
                                      " points, got " +
                                      std::to_string(pts.size()));
  }

  Instance inst;
  inst.points = std::move(pts);
  inst.k = k;
  inst.gamma = gamma;
  inst.mode = mode;
  try {
    inst.validate();
  } catch (const InvalidInstance& err) {
    throw InvariantViolation("header at line " + std::to_string(header_line) +
                             ": " + err.what());
  }
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInstance("cannot open " + path);
  }
  return read_instance(in);
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) {
    throw Error("number formatting failed");
  }
  return std::string(buf, ptr);
}

std::string format_sig12(double value) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general,
                    12);
  if (ec != std::errc()) {
    throw Error("number formatting failed");
  }
  return std::string(buf, ptr);
}

void write_instance(const Instance& inst, std::ostream& out) {
  inst.validate();
  out << inst.n() << ' ' << inst.k << ' ' << inst.gamma << ' '
      << to_string(inst.mode) << '\n';
  for (const Point& p : inst.points) {
    out << format_double(p.x) << ' ' << format_double(p.y) << '\n';
  }
}

std::string write_instance_string(const Instance& inst) {
  std::ostringstream out;
  write_instance(inst, out);
  return out.str();
}

void write_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidInstance("cannot open " + path + " for writing");
  }
  write_instance(inst, out);
  if (!out.flush()) {
    throw Error("write to " + path + " failed");
  }
}

std::string fixture_relpath(const GeneratorSpec& spec) {
  std::ostringstream out;
  out << to_string(spec.family) << '/' << spec.n << '_' << spec.k << '_'
      << spec.gamma << '_' << spec.seed << ".txt";
  return out.str();
}

}  // namespace disp
