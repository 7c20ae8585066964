#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "disp/core.hpp"
#include "disp/instances.hpp"
#include "disp/solvers.hpp"
#include "disp/verify.hpp"

namespace {

using namespace disp;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidInstance("cannot open " + path);
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string format_fixed3(double v) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  if (ec != std::errc()) {
    return "nan";
  }
  return std::string(buf, ptr);
}

Method method_from_string(const std::string& name) {
  if (name == "greedy") return Method::Greedy;
  if (name == "framework") return Method::Framework;
  if (name == "oracle") return Method::BruteForce;
  throw InvalidSpec("unknown algorithm: " + name);
}

GrowthRule rule_from_string(const std::string& name) {
  if (name == "filtered") return GrowthRule::FilteredMin;
  if (name == "literal") return GrowthRule::LiteralMin;
  throw InvalidSpec("unknown growth rule: " + name);
}

double wall_ms_since(std::chrono::steady_clock::time_point t0) {
  const auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double, std::milli>(dt).count();
}

Solution run_method(Method method, const Instance& inst, int threads,
                    GrowthRule rule, std::uint64_t budget) {
  switch (method) {
    case Method::Greedy:
      return greedy_dispersion(inst);
    case Method::Framework: {
      FrameworkOptions opts;
      opts.threads = threads;
      opts.rule = rule;
      return framework_solve(inst, opts);
    }
    case Method::BruteForce:
      break;
  }
  return brute_force_opt(inst, budget);
}

struct SolveOpts {
  std::string path;
  std::string algorithm = "framework";
  std::string rule = "filtered";
  int threads = 1;
  std::uint64_t budget = 10'000'000;
};

int cmd_solve(const SolveOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string bytes = slurp(o.path);
  std::istringstream in(bytes);
  const Instance inst = read_instance(in);

  const Solution sol = run_method(method_from_string(o.algorithm), inst,
                                  o.threads, rule_from_string(o.rule),
                                  o.budget);

  std::cout << "instance " << o.path << '\n';
  std::cout << "digest " << hex16(fnv1a64(bytes)) << '\n';
  std::cout << "n " << inst.n() << " k " << inst.k << " gamma " << inst.gamma
            << " mode " << to_string(inst.mode) << '\n';
  std::cout << "algorithm " << to_string(sol.method) << '\n';
  std::cout << "indices";
  for (int idx : sol.indices) {
    std::cout << ' ' << idx;
  }
  std::cout << '\n';
  std::cout << "cost " << format_sig12(sol.cost) << '\n';
  if (sol.lower_bound) {
    std::cout << "lower_bound " << format_sig12(*sol.lower_bound) << '\n';
    std::cout << "guarantee "
              << format_sig12(lambda_for(inst.gamma, inst.mode)) << '\n';
  }
  std::cout << "wall_ms " << format_fixed3(wall_ms_since(t0)) << '\n';
  return 0;
}

struct GenOpts {
  std::string family = "uniform";
  int n = 0;
  int k = 0;
  int gamma = 2;
  std::uint64_t seed = 0;
  double extent = 1.0;
  std::string out;
  std::string fixture_root;
};

int cmd_gen(const GenOpts& o) {
  GeneratorSpec spec;
  spec.family = family_from_string(o.family);
  spec.n = o.n;
  spec.k = o.k;
  spec.gamma = o.gamma;
  spec.seed = o.seed;
  spec.extent = o.extent;
  const Instance inst = generate(spec);

  if (!o.fixture_root.empty()) {
    const std::filesystem::path path =
        std::filesystem::path(o.fixture_root) / fixture_relpath(spec);
    std::filesystem::create_directories(path.parent_path());
    write_instance_file(inst, path.string());
    std::cout << "wrote " << path.string() << '\n';
  } else if (!o.out.empty()) {
    write_instance_file(inst, o.out);
    std::cout << "wrote " << o.out << '\n';
  } else {
    write_instance(inst, std::cout);
  }
  return 0;
}

struct VerifyOpts {
  std::string family = "uniform";
  int n_min = 0;
  int n_max = 0;
  int k_min = 0;
  int k_max = 0;
  int gamma = 2;
  std::uint64_t seed = 0;
  double extent = 1.0;
  int trials = 100;
  std::string algorithm = "framework";
  std::uint64_t budget = 10'000'000;
};

int cmd_verify(const VerifyOpts& o) {
  SweepSpec spec;
  spec.family = family_from_string(o.family);
  spec.n_min = o.n_min;
  spec.n_max = o.n_max;
  spec.k_min = o.k_min;
  spec.k_max = o.k_max;
  spec.gamma = o.gamma;
  spec.seed = o.seed;
  spec.extent = o.extent;

  const auto reports =
      run_ratio_sweep(spec, o.trials, method_from_string(o.algorithm),
                      o.budget);

  std::cout << "trial,n,k,gamma,mode,seed,oracle_cost,alg_cost,ratio,bound,"
               "pass\n";
  bool any_fail = false;
  bool any_budget = false;
  for (const RatioReport& r : reports) {
    std::cout << r.trial << ',' << r.n << ',' << r.k << ',' << r.gamma << ','
              << to_string(r.mode) << ',' << r.seed << ','
              << format_sig12(r.oracle_cost) << ',' << format_sig12(r.alg_cost)
              << ',' << format_sig12(r.ratio) << ',' << format_sig12(r.bound)
              << ',' << (r.pass ? "true" : "false") << '\n';
    any_fail = any_fail || !r.pass;
    any_budget = any_budget || r.budget_exceeded;
  }
  if (any_budget) {
    return 3;
  }
  return any_fail ? 1 : 0;
}

struct BenchOpts {
  std::vector<int> sizes = {50, 100, 200, 400};
  int k = 10;
  int gamma = 2;
  std::string family = "collinear";
  std::uint64_t seed = 1;
  double extent = 1.0;
  std::string algorithm = "framework";
  int threads = 1;
};

int cmd_bench(const BenchOpts& o) {
  const Method method = method_from_string(o.algorithm);
  std::vector<double> log_n;
  std::vector<double> log_t;

  std::cout << "n,k,gamma,mode,algorithm,wall_ms\n";
  for (int n : o.sizes) {
    GeneratorSpec spec;
    spec.family = family_from_string(o.family);
    spec.n = n;
    spec.k = o.k;
    spec.gamma = o.gamma;
    spec.seed = o.seed;
    spec.extent = o.extent;
    const Instance inst = generate(spec);

    const auto t0 = std::chrono::steady_clock::now();
    const Solution sol = run_method(method, inst, o.threads,
                                    GrowthRule::FilteredMin, 10'000'000);
    const double ms = wall_ms_since(t0);
    std::cout << n << ',' << o.k << ',' << o.gamma << ','
              << to_string(inst.mode) << ',' << to_string(sol.method) << ','
              << format_fixed3(ms) << '\n';
    log_n.push_back(std::log(static_cast<double>(n)));
    log_t.push_back(std::log(std::max(ms, 1e-3)));
  }

  if (log_n.size() >= 2) {
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      mean_x += log_n[i];
      mean_y += log_t[i];
    }
    mean_x /= log_n.size();
    mean_y /= log_t.size();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      num += (log_n[i] - mean_x) * (log_t[i] - mean_y);
      den += (log_n[i] - mean_x) * (log_n[i] - mean_x);
    }
    std::cout << "slope," << format_sig12(num / den) << '\n';
  }
  return 0;
}

struct PlotOpts {
  std::string path;
  std::vector<int> solution;
  std::string algorithm;
  bool disks = false;
  std::string out;
};

void write_svg(const Instance& inst, const std::set<int>& selected,
               const std::vector<Disk>& disks, std::ostream& os) {
  const double width = 640.0;
  const double height = 640.0;
  const double margin = 24.0;

  double xmin = inst.points[0].x, xmax = inst.points[0].x;
  double ymin = inst.points[0].y, ymax = inst.points[0].y;
  for (const Point& p : inst.points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  for (const Disk& d : disks) {
    xmin = std::min(xmin, d.center.x - d.radius);
    xmax = std::max(xmax, d.center.x + d.radius);
    ymin = std::min(ymin, d.center.y - d.radius);
    ymax = std::max(ymax, d.center.y + d.radius);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double scale = (width - 2.0 * margin) / span;
  const auto sx = [&](double x) { return margin + (x - xmin) * scale; };
  const auto sy = [&](double y) { return height - margin - (y - ymin) * scale; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
     << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (const Disk& d : disks) {
    os << "<circle class=\"disk\" cx=\"" << format_sig12(sx(d.center.x))
       << "\" cy=\"" << format_sig12(sy(d.center.y)) << "\" r=\""
       << format_sig12(d.radius * scale)
       << "\" fill=\"none\" stroke=\"#4682b4\" stroke-opacity=\"0.6\"/>\n";
  }
  for (int i = 0; i < inst.n(); ++i) {
    const Point& p = inst.points[i];
    const bool sel = selected.count(i) > 0;
    os << "<circle class=\"" << (sel ? "sel" : "pt") << "\" cx=\""
       << format_sig12(sx(p.x)) << "\" cy=\"" << format_sig12(sy(p.y))
       << "\" r=\"" << (sel ? "5" : "3") << "\" fill=\""
       << (sel ? "#b22222" : "#555555") << "\"/>\n";
  }
  os << "</svg>\n";
}

int cmd_plot(const PlotOpts& o) {
  const Instance inst = read_instance_file(o.path);

  std::set<int> selected;
  double sel_cost = -1.0;
  if (!o.solution.empty()) {
    for (int idx : o.solution) {
      if (idx < 0 || idx >= inst.n()) {
        throw InvalidInstance("solution index out of range");
      }
      selected.insert(idx);
    }
    if (static_cast<int>(selected.size()) >= inst.gamma + 1) {
      std::vector<int> s(selected.begin(), selected.end());
      sel_cost = cost_set(inst.points, s, inst.gamma);
    }
  } else if (!o.algorithm.empty()) {
    const Solution sol =
        run_method(method_from_string(o.algorithm), inst, 1,
                   GrowthRule::FilteredMin, 10'000'000);
    selected.insert(sol.indices.begin(), sol.indices.end());
    sel_cost = sol.cost;
  }

  std::vector<Disk> disks;
  if (o.disks) {
    if (sel_cost < 0.0) {
      throw InvalidSpec("--disks needs a solution (via --solution or "
                        "--algorithm)");
    }
    const double radius = sel_cost / lambda_for(inst.gamma, Mode::Plane);
    for (int idx : selected) {
      disks.push_back(Disk{inst.points[idx], radius});
    }
  }

  if (o.out.empty()) {
    write_svg(inst, selected, disks, std::cout);
  } else {
    std::ofstream f(o.out);
    if (!f) {
      throw InvalidInstance("cannot open " + o.out + " for writing");
    }
    write_svg(inst, selected, disks, f);
    std::cout << "wrote " << o.out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euclidean gamma-dispersion: solvers, generators, checks"};
  app.require_subcommand(1);

  SolveOpts so;
  auto* solve = app.add_subcommand("solve", "Solve one instance file");
  solve->add_option("instance", so.path, "instance file")->required();
  solve->add_option("--algorithm", so.algorithm,
                    "greedy | framework | oracle");
  solve->add_option("--rule", so.rule, "growth rule: filtered | literal");
  solve->add_option("--threads", so.threads, "worker threads (0 = all)");
  solve->add_option("--budget", so.budget, "oracle subset budget");

  GenOpts go;
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--family", go.family,
                  "uniform | collinear | grid | clustered");
  gen->add_option("--n", go.n, "point count")->required();
  gen->add_option("--k", go.k, "selection size")->required();
  gen->add_option("--gamma", go.gamma, "1 or 2");
  gen->add_option("--seed", go.seed, "generator seed");
  gen->add_option("--extent", go.extent, "bounding box side");
  gen->add_option("-o,--out", go.out, "output file (default stdout)");
  gen->add_option("--fixture-root", go.fixture_root,
                  "write under <root>/<family>/<n>_<k>_<gamma>_<seed>.txt");

  VerifyOpts vo;
  auto* verify = app.add_subcommand(
      "verify", "Sweep random instances against the exhaustive oracle");
  verify->add_option("--family", vo.family,
                     "uniform | collinear | grid | clustered");
  verify->add_option("--n-min", vo.n_min, "smallest n")->required();
  verify->add_option("--n-max", vo.n_max, "largest n")->required();
  verify->add_option("--k-min", vo.k_min, "smallest k")->required();
  verify->add_option("--k-max", vo.k_max, "largest k")->required();
  verify->add_option("--gamma", vo.gamma, "1 or 2");
  verify->add_option("--seed", vo.seed, "sweep seed");
  verify->add_option("--extent", vo.extent, "bounding box side");
  verify->add_option("--trials", vo.trials, "number of instances");
  verify->add_option("--algorithm", vo.algorithm,
                     "greedy | framework | oracle");
  verify->add_option("--budget", vo.budget, "oracle subset budget");

  BenchOpts bo;
  auto* bench = app.add_subcommand("bench", "Time the solver across sizes");
  bench->add_option("--sizes", bo.sizes, "point counts")->delimiter(',');
  bench->add_option("--k", bo.k, "selection size");
  bench->add_option("--gamma", bo.gamma, "1 or 2");
  bench->add_option("--family", bo.family, "instance family");
  bench->add_option("--seed", bo.seed, "generator seed");
  bench->add_option("--extent", bo.extent, "bounding box side");
  bench->add_option("--algorithm", bo.algorithm,
                    "greedy | framework | oracle");
  bench->add_option("--threads", bo.threads, "worker threads (0 = all)");

  PlotOpts po;
  auto* plot = app.add_subcommand("plot", "Render an instance to SVG");
  plot->add_option("instance", po.path, "instance file")->required();
  plot->add_option("--solution", po.solution, "indices to highlight")
      ->delimiter(',');
  plot->add_option("--algorithm", po.algorithm,
                   "solve first: greedy | framework | oracle");
  plot->add_flag("--disks", po.disks, "draw packing disks around selection");
  plot->add_option("-o,--out", po.out, "output file (default stdout)");

  int rc = 0;
  solve->callback([&] { rc = cmd_solve(so); });
  gen->callback([&] { rc = cmd_gen(go); });
  verify->callback([&] { rc = cmd_verify(vo); });
  bench->callback([&] { rc = cmd_bench(bo); });
  plot->callback([&] { rc = cmd_plot(po); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const disp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidInstance& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidSpec& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedRegime& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const NoSolution& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
