#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"
#include "rieszlab/capacity.hpp"
#include "rieszlab/counterexamples.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/measures.hpp"
#include "rieszlab/parallel.hpp"
#include "rieszlab/symmetrization.hpp"
#include "rieszlab/transforms.hpp"

using namespace rieszlab;
using cli::Json;
using cli::Report;

namespace {

enum Exit { kOk = 0, kUsage = 1, kViolation = 2, kSolver = 3 };

struct Common {
  unsigned threads = 0;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
};

// Raised after the report has been marked partial and flushed.
struct Finished {
  int code;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--threads", c.threads, "worker thread cap (0 = all cores)");
  app->add_option("--out", c.out, "output file (default stdout)");
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--seed", c.seed, "seed for randomized sweeps");
}

cli::Format format_of(const Common& c) { return c.format == "json" ? cli::Format::json : cli::Format::csv; }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
  return s;
}

std::string point_text(const Point& p) {
  std::string s;
  for (int k = 0; k < p.dim(); ++k) s += (k ? " " : "") + cli::format_cell(Json(p[k]));
  return s;
}

// Runs body(report) and writes the report; on an exception the rows produced
// so far are flushed with the partial marker.
int run(Report& report, const Common& common, const std::function<int(Report&)>& body) {
  set_thread_limit(common.threads);
  report.config("seed", common.seed);
  int code = kOk;
  try {
    code = body(report);
  } catch (const ParameterError& e) {
    std::cerr << "rieszlab: " << e.what() << "\n";
    report.mark_partial();
    code = kUsage;
  } catch (const DomainError& e) {
    std::cerr << "rieszlab: " << e.what() << "\n";
    report.mark_partial();
    code = kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "rieszlab: " << e.what() << "\n";
    report.mark_partial();
    code = kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "rieszlab: " << e.what() << "\n";
    report.mark_partial();
    code = kSolver;
  }
  report.write(format_of(common), common.out);
  return code;
}

// ---------------------------------------------------------------- symcheck

struct SymcheckArgs {
  std::size_t count = 100000;
  std::vector<std::string> checks{"positivity", "identity", "collinear"};
  std::vector<double> alphas{0.25, 0.5, 0.75};
};

int symcheck(Report& r, const SymcheckArgs& a, std::uint64_t seed) {
  r.config("count", a.count);
  r.config("checks", a.checks);
  r.config("alpha", a.alphas);
  bool violated = false;
  auto emit = [&](const sym::SweepReport& s) {
    std::string witness;
    if (s.witness)
      for (int k = 0; k < 3; ++k) witness += (k ? ";" : "") + point_text((*s.witness)[k]);
    r.row({sym::to_string(s.check), s.dim, s.alpha, s.samples, s.violations[0], s.violations[1], s.degenerate_nonzero,
           s.max_error[0], s.max_error[1], witness});
    violated = violated || s.total_violations() > 0;
  };
  std::uint64_t stream = 0;
  for (const auto& c : a.checks) {
    if (c == "positivity") {
      for (int n = 2; n <= 5; ++n) emit(sym::sweep(sym::SweepCheck::positivity, n, 1.0, a.count, seed + stream++));
    } else if (c == "identity") {
      emit(sym::sweep(sym::SweepCheck::plane_identity, 2, 1.0, a.count, seed + stream++, {1e-10, 1e-12}));
    } else if (c == "collinear") {
      for (int n = 2; n <= 5; ++n) emit(sym::sweep(sym::SweepCheck::collinear, n, 1.0, a.count, seed + stream++, {1e-13}));
    } else if (c == "sandwich") {
      for (double alpha : a.alphas)
        for (int n = 2; n <= 3; ++n)
          emit(sym::sweep(sym::SweepCheck::sandwich, n, alpha, a.count, seed + stream++, {1e-12, 0.0, true}));
    } else {
      throw ParameterError("symcheck: unknown check '" + c + "' (positivity, identity, collinear, sandwich)");
    }
  }
  return violated ? kViolation : kOk;
}

// ---------------------------------------------------------------- energy

struct EnergyArgs {
  std::string measure = "cantor4";
  int g = 3;
  double alpha = 1.0;
  int component = 1;
  std::string eps = "auto";
  std::size_t atoms = 40;
  int dim = 2;
};

measures::DiscreteMeasure energy_measure(const EnergyArgs& a, std::uint64_t seed) {
  if (a.measure == "cantor4") return measures::cantor_corner_quarter(a.g);
  if (a.measure == "cantor_linear") return measures::cantor_linear(a.alpha < 1.0 ? a.alpha : 0.5, a.g, a.dim);
  if (a.measure == "random") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0), m(0.1, 1.0);
    std::vector<Point> pts;
    std::vector<double> masses;
    for (std::size_t k = 0; k < a.atoms; ++k) {
      Point p(a.dim);
      for (int j = 0; j < a.dim; ++j) p[j] = u(rng);
      pts.push_back(p);
      masses.push_back(m(rng));
    }
    return measures::DiscreteMeasure(a.dim, std::move(pts), std::move(masses));
  }
  throw ParameterError("energy: unknown measure '" + a.measure + "' (cantor4, cantor_linear, random)");
}

int energy(Report& r, const EnergyArgs& a, std::uint64_t seed) {
  r.config("measure", a.measure);
  r.config("g", a.g);
  r.config("alpha", a.alpha);
  r.config("component", a.component);
  r.config("eps", a.eps);
  r.config("atoms", a.atoms);
  r.config("dim", a.dim);
  const auto mu = energy_measure(a, seed);
  double eps = 0.0;
  if (a.eps == "auto") {
    eps = mu.min_separation() / 2.0;
  } else {
    try {
      eps = std::stod(a.eps);
    } catch (const std::exception&) {
      throw ParameterError("energy: --eps must be a number or 'auto'");
    }
  }
  r.result("atoms", mu.size());
  r.result("min_separation", mu.min_separation());
  r.result("eps_used", eps);
  const bool exact_regime = eps < mu.min_separation();
  bool violated = false;
  double component_sum = 0.0;
  std::vector<int> comps;
  if (a.component == 0) {
    for (int j = 1; j <= mu.dim(); ++j) comps.push_back(j);
  } else {
    comps.push_back(a.component);
  }
  for (int j : comps) {
    const auto e = transforms::energy_identity(mu, j, a.alpha, eps);
    const double rel = std::abs(e.residual) / (1.0 + e.l2_energy);
    violated = violated || (exact_regime && rel > 1e-9);
    component_sum += e.l2_energy;
    r.row({std::to_string(j), a.alpha, eps, e.l2_energy, e.perm_energy, e.diagonal, e.residual, rel});
  }
  if (a.component == 0) {
    const double v = transforms::vector_energy(mu, a.alpha, eps);
    const double rel = std::abs(v - component_sum) / std::max(v, 1e-300);
    violated = violated || rel > 1e-12;
    r.row({"vector", a.alpha, eps, v, Json(nullptr), Json(nullptr), v - component_sum, rel});
  }
  return violated ? kViolation : kOk;
}

// ---------------------------------------------------------------- capacity

struct CapacityArgs {
  std::string geometry = "disk";
  double h = 1.0 / 32.0;
  double delta = 0.0;
  double alpha = 1.0;
  int exclude = 0;
  std::vector<int> components;
  bool growth = false;
  std::string experiment = "none";
  int g = 5;
  int directions = 16;
  bool masses = false;
};

std::vector<Json> solution_cells(const std::string& geometry, double h, double delta, double alpha,
                                 const std::string& j, const capacity::CapacitySolution& s) {
  return {geometry, h, delta, alpha, j, s.value, capacity::to_string(s.status), s.upper_bound, s.max_violation,
          s.lp_rows, s.lp_columns, s.rounds, s.pivots};
}

int solution_code(const capacity::CapacitySolution& s) {
  if (s.status != capacity::SolverStatus::optimal) return kSolver;
  return s.max_violation > 1e-8 ? kViolation : kOk;
}

int capacity_run(Report& r, const CapacityArgs& a) {
  r.config("geometry", a.geometry);
  r.config("h", a.h);
  r.config("delta", a.delta);
  r.config("alpha", a.alpha);
  r.config("exclude_component", a.exclude);
  r.config("component", a.components);
  r.config("growth", a.growth);
  r.config("experiment", a.experiment);
  r.config("directions", a.directions);
  if (!(a.h > 0.0)) throw ParameterError("capacity: --h must be positive");
  const double delta = a.delta == 0.0 ? a.h / 2.0 : a.delta;
  int code = kOk;
  auto worst = [&](int c) { code = std::max(code, c); };

  if (a.experiment == "comparability") {
    std::vector<capacity::Geometry> gs;
    for (const char* name : {"disk", "segment", "square", "cantor1", "cantor2", "cantor3"})
      gs.push_back(capacity::parse_geometry(name));
    const int k = a.exclude == 0 ? 1 : a.exclude;
    double lo = INFINITY, hi = 0.0;
    for (const auto& row : capacity::comparability_experiment(gs, k, a.h)) {
      r.row({row.geometry, row.h, row.delta, 1.0, "plus", row.plus.value, capacity::to_string(row.plus.status),
             row.plus.upper_bound, row.plus.max_violation, row.plus.lp_rows, row.plus.lp_columns, row.plus.rounds,
             row.plus.pivots});
      r.row({row.geometry, row.h, row.delta, 1.0, "hat" + std::to_string(k), row.hat_plus.value,
             capacity::to_string(row.hat_plus.status), row.hat_plus.upper_bound, row.hat_plus.max_violation,
             row.hat_plus.lp_rows, row.hat_plus.lp_columns, row.hat_plus.rounds, row.hat_plus.pivots});
      lo = std::min(lo, row.ratio);
      hi = std::max(hi, row.ratio);
      worst(solution_code(row.plus));
      worst(solution_code(row.hat_plus));
    }
    r.result("ratio_min", lo);
    r.result("ratio_max", hi);
    return code;
  }
  if (a.experiment == "separation") {
    const double alpha = a.alpha < 1.0 ? a.alpha : 0.5;
    for (const auto& row : capacity::alpha_separation_experiment(alpha, a.g)) {
      const std::string geom = "cantor_linear_g" + std::to_string(row.generation);
      auto c1 = solution_cells(geom, row.h, row.h / 2.0, alpha, "2+growth", row.hat_with_growth);
      auto c2 = solution_cells(geom, row.h, row.h / 2.0, alpha, "1 2", row.all_components);
      r.row(std::move(c1));
      r.row(std::move(c2));
      worst(solution_code(row.hat_with_growth));
      worst(solution_code(row.all_components));
    }
    return code;
  }
  if (a.experiment != "none") throw ParameterError("capacity: unknown experiment '" + a.experiment + "'");

  const auto geom = capacity::parse_geometry(a.geometry);
  const auto support = geom.support(a.h);
  capacity::BuildOptions o;
  o.h = a.h;
  o.delta = delta;
  o.directions = a.directions;
  capacity::CapacitySolution s;
  std::string jtext;
  if (!a.components.empty()) {
    o.with_growth = a.growth;
    s = capacity::solve(capacity::build_problem(support, a.components, a.alpha, o));
    jtext = join(a.components) + (a.growth ? "+growth" : "");
  } else if (a.exclude != 0) {
    s = capacity::gamma_hat_plus(support, o, a.exclude, a.alpha);
    jtext = "hat" + std::to_string(a.exclude);
  } else {
    s = capacity::gamma_plus(support, o, a.alpha);
    jtext = "vector";
  }
  r.row(solution_cells(geom.name(), a.h, delta, a.alpha, jtext, s));
  r.result("support_points", support.size());
  r.result("duality_gap", s.duality_gap);
  if (a.masses) r.result("masses", s.masses);
  return solution_code(s);
}

// ---------------------------------------------------------------- counterexample

struct CounterArgs {
  std::string which = "tent";
  int nmax = 12;
  bool calibrated = false;
};

int counterexample(Report& r, const CounterArgs& a) {
  r.config("which", a.which);
  r.config("nmax", a.nmax);
  r.config("calibrated", a.calibrated);
  if (a.which == "tent") {
    const counterexamples::TentSpec spec{a.nmax, a.calibrated ? counterexamples::kTentCalibration : 1.0};
    const auto sup = counterexamples::tent_grid_sup(spec, 100, 100);
    r.result("grid_points", sup.points);
    r.result("sup_k1", sup.k1);
    r.result("sup_k2", sup.k2);
    bool violated = sup.k1 > spec.c;
    for (int n = 1; n <= a.nmax; ++n) {
      const auto g = counterexamples::tent_growth_ratio(spec, n);
      r.row({n, g.ratio, g.flux_ratio, g.mismatch});
      violated = violated || g.mismatch > 1e-6;
    }
    return violated ? kViolation : kOk;
  }
  if (a.which == "log") {
    const auto mu = counterexamples::log_measure_discretization(14);
    const auto rep = measures::growth_constant(mu, 1.0, std::ldexp(1.0, 1 - a.nmax));
    for (int j = 1; j <= a.nmax; ++j) {
      const double side = std::ldexp(1.0, 1 - j);
      Json disc = nullptr;
      for (const auto& s : rep.per_scale)
        if (s.scale == side) disc = s.max_ratio;
      r.row({j, counterexamples::log_measure_growth(j), disc});
    }
    return kOk;
  }
  throw ParameterError("counterexample: --which must be tent or log");
}

// ---------------------------------------------------------------- cantor

struct CantorArgs {
  int g = 3;
  double alpha = 0.0;
  bool atoms = false;
};

int cantor(Report& r, const CantorArgs& a) {
  r.config("g", a.g);
  r.config("alpha", a.alpha);
  r.config("atoms", a.atoms);
  const auto mu = a.alpha > 0.0 ? measures::cantor_linear(a.alpha, a.g, 2) : measures::cantor_corner_quarter(a.g);
  const double growth_alpha = a.alpha > 0.0 ? a.alpha : 1.0;
  r.result("points", mu.size());
  r.result("total_mass", mu.total_mass());
  r.result("min_separation", mu.min_separation());
  if (a.atoms) {
    for (std::size_t k = 0; k < mu.size(); ++k) r.row({mu.point(k)[0], mu.point(k)[1], mu.mass(k)});
    return kOk;
  }
  const auto rep = measures::growth_constant(mu, growth_alpha, mu.min_separation());
  r.result("growth_constant", rep.overall);
  for (const auto& s : rep.per_scale) r.row({s.scale, s.max_ratio, point_text(s.witness)});
  return kOk;
}

// ---------------------------------------------------------------- hilbert

struct HilbertArgs {
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t count = 201;
  std::vector<double> ys;
};

int hilbert(Report& r, const HilbertArgs& a) {
  r.config("x_min", a.x_min);
  r.config("x_max", a.x_max);
  r.config("count", a.count);
  r.config("y", a.ys);
  if (a.count < 2 || !(a.x_max > a.x_min)) throw ParameterError("hilbert: need --count >= 2 and --x-max > --x-min");
  const auto sup = counterexamples::hilbert_logplus_sup(a.x_min, a.x_max, a.count);
  r.result("sup_abs_hf", sup.sup);
  r.result("argmax", sup.argmax);
  bool violated = false;
  for (std::size_t k = 0; k < a.count; ++k) {
    const double x = a.x_min + (a.x_max - a.x_min) * k / (a.count - 1);
    if (a.ys.empty()) {
      const double hf = counterexamples::hilbert_logplus(x);
      Json sub = nullptr, full = nullptr;
      if (std::abs(x) > 1.0) sub = counterexamples::hilbert_logplus_substitution(x);
      if (std::abs(x) < 1.0) full = counterexamples::hilbert_log_fullline(x);
      r.row({x, hf, sub, full});
    } else {
      for (double y : a.ys) {
        const auto p = counterexamples::log_measure_potential(x, y);
        violated = violated || p.mismatch > 1e-4;
        r.row({x, y, p.value, p.poisson_route, p.mismatch});
      }
    }
  }
  return violated ? kViolation : kOk;
}

// ---------------------------------------------------------------- recover

struct RecoverArgs {
  std::string measure = "cantor4";
  int g = 2;
  std::vector<double> center{0.5, 0.5};
  double inner = 1.0;
  double outer = 2.0;
  double h = 0.0;
  double T = 0.0;
};

int recover(Report& r, const RecoverArgs& a) {
  r.config("measure", a.measure);
  r.config("g", a.g);
  r.config("center", a.center);
  r.config("inner", a.inner);
  r.config("outer", a.outer);
  r.config("h", a.h);
  r.config("T", a.T);
  if (a.center.size() != 2) throw ParameterError("recover: --center takes two numbers");
  measures::DiscreteMeasure mu = a.measure == "dirac" ? measures::DiscreteMeasure(2, {Point{0.0, 0.0}}, {1.0})
                                 : a.measure == "cantor4"
                                     ? measures::cantor_corner_quarter(a.g)
                                     : throw ParameterError("recover: --measure must be cantor4 or dirac");
  const transforms::RadialBump phi{Point{a.center[0], a.center[1]}, a.inner, a.outer};
  double exact = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) exact += mu.mass(k) * phi.value(mu.point(k));
  const auto res = transforms::recover_pairing(mu, phi, {a.h, a.T});
  r.row({exact, res.value, res.value_2T, res.tail_change, res.value - exact});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for Riesz kernels, their energies and capacities"};
  app.set_version_flag("--version", std::string(cli::version()));
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);

  Common common;
  std::function<int()> action;

  SymcheckArgs sa;
  auto* sc = app.add_subcommand("symcheck", "randomized symmetrization sweeps");
  add_common(sc, common);
  sc->add_option("--count", sa.count, "triples per sweep");
  sc->add_option("--checks", sa.checks, "positivity, identity, collinear, sandwich");
  sc->add_option("--alpha", sa.alphas, "alphas for the sandwich sweep");
  sc->callback([&] {
    action = [&] {
      Report r("symcheck", {"check", "dim", "alpha", "samples", "violations", "violations_2", "degenerate_nonzero",
                            "max_error", "max_error_2", "witness"});
      return run(r, common, [&](Report& rep) { return symcheck(rep, sa, common.seed); });
    };
  });

  EnergyArgs ea;
  auto* en = app.add_subcommand("energy", "exact discrete energy identity");
  add_common(en, common);
  en->add_option("--measure", ea.measure, "cantor4, cantor_linear or random");
  en->add_option("--g", ea.g, "Cantor generation");
  en->add_option("--alpha", ea.alpha, "kernel homogeneity, in (0, 1]");
  en->add_option("--component,--i", ea.component, "coordinate (0 = all plus the vector energy)");
  en->add_option("--eps", ea.eps, "truncation radius or 'auto' (= min separation / 2)");
  en->add_option("--atoms", ea.atoms, "atoms of the random measure");
  en->add_option("--dim", ea.dim, "ambient dimension of random / linear Cantor measures");
  en->callback([&] {
    action = [&] {
      Report r("energy", {"component", "alpha", "eps", "l2_energy", "perm_energy", "diagonal", "residual",
                          "relative_residual"});
      return run(r, common, [&](Report& rep) { return energy(rep, ea, common.seed); });
    };
  });

  CapacityArgs ca;
  auto* cp = app.add_subcommand("capacity", "LP estimates of positive capacities");
  add_common(cp, common);
  cp->add_option("--geometry", ca.geometry, "disk, segment, square or cantor<g>");
  cp->add_option("--h", ca.h, "constraint lattice spacing");
  cp->add_option("--delta", ca.delta, "exclusion radius (0 = h / 2)");
  cp->add_option("--alpha", ca.alpha, "kernel homogeneity");
  cp->add_option("--exclude-component", ca.exclude, "gamma_hat_plus with this coordinate left free");
  cp->add_option("--component", ca.components, "explicit component set J (component rows)");
  cp->add_flag("--growth", ca.growth, "add growth rows to an explicit J");
  cp->add_option("--experiment", ca.experiment, "none, comparability or separation");
  cp->add_option("--g", ca.g, "largest generation for the separation experiment");
  cp->add_option("--directions", ca.directions, "polygon directions for the vector bound");
  cp->add_flag("--masses", ca.masses, "include the optimal masses in the results");
  cp->callback([&] {
    action = [&] {
      Report r("capacity", {"geometry", "h", "delta", "alpha", "J", "value", "status", "upper_bound",
                            "max_violation", "lp_rows", "lp_columns", "rounds", "pivots"});
      return run(r, common, [&](Report& rep) { return capacity_run(rep, ca); });
    };
  });

  CounterArgs ce;
  auto* cx = app.add_subcommand("counterexample", "the tent and log+ counterexamples");
  add_common(cx, common);
  cx->add_option("--which", ce.which, "tent or log");
  cx->add_option("--nmax", ce.nmax, "number of tents / dyadic scales");
  cx->add_flag("--calibrated", ce.calibrated, "use c = 2 pi in the tent potentials");
  cx->callback([&] {
    action = [&] {
      const bool tent = ce.which != "log";
      Report r("counterexample", tent ? std::vector<std::string>{"n", "ratio", "flux_ratio", "mismatch"}
                                      : std::vector<std::string>{"j", "growth", "discretized"});
      return run(r, common, [&](Report& rep) { return counterexample(rep, ce); });
    };
  });

  CantorArgs ka;
  auto* ct = app.add_subcommand("cantor", "Cantor measures and their growth");
  add_common(ct, common);
  ct->add_option("--g", ka.g, "generation");
  ct->add_option("--alpha", ka.alpha, "linear Cantor of dimension alpha (0 = corner quarter)");
  ct->add_flag("--atoms", ka.atoms, "list the atoms instead of the growth table");
  ct->callback([&] {
    action = [&] {
      Report r("cantor", ka.atoms ? std::vector<std::string>{"x", "y", "mass"}
                                  : std::vector<std::string>{"scale", "max_ratio", "witness"});
      return run(r, common, [&](Report& rep) { return cantor(rep, ka); });
    };
  });

  HilbertArgs ha;
  auto* hb = app.add_subcommand("hilbert", "Hilbert transform of log+ and its conjugate Poisson extension");
  add_common(hb, common);
  hb->add_option("--x-min", ha.x_min);
  hb->add_option("--x-max", ha.x_max);
  hb->add_option("--count", ha.count);
  hb->add_option("--y", ha.ys, "heights: emit the potential grid instead of Hf");
  hb->callback([&] {
    action = [&] {
      Report r("hilbert", ha.ys.empty() ? std::vector<std::string>{"x", "hf", "substitution", "fullline"}
                                        : std::vector<std::string>{"x", "y", "value", "poisson_route", "mismatch"});
      return run(r, common, [&](Report& rep) { return hilbert(rep, ha); });
    };
  });

  RecoverArgs ra;
  auto* rc = app.add_subcommand("recover", "recover <mu, phi> from the first-coordinate potential");
  add_common(rc, common);
  rc->add_option("--measure", ra.measure, "cantor4 or dirac");
  rc->add_option("--g", ra.g);
  rc->add_option("--center", ra.center)->expected(2);
  rc->add_option("--inner", ra.inner);
  rc->add_option("--outer", ra.outer);
  rc->add_option("--h", ra.h, "quadrature step (0 = (outer - inner) / 32)");
  rc->add_option("--T", ra.T, "half-line length (0 = automatic)");
  rc->callback([&] {
    action = [&] {
      Report r("recover", {"exact", "value", "value_2T", "tail_change", "error"});
      return run(r, common, [&](Report& rep) { return recover(rep, ra); });
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "rieszlab: " << e.what() << "\n";
    return kUsage;
  }
}
