// wres: command-line front end of the residue verification engine.
//
//   wres                                   same as: wres verify --dim 4 --seeds 10
//   wres verify --dim 6 --seeds 20 --json --out report.json
//   wres einstein --dim 4 --curvature constant --u e1 --v e1 --eval 1 1
//   wres parts --dim 6 --seed 3
//
// Exit status: 0 when every comparison matched, 1 on a mismatch, 2 on usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wres/residue.hpp"

namespace {

using namespace wres;

constexpr int kExitMatch = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  int dim = 4;
  bool dim_given = false;
  int seeds = 10;
  std::string seed_list;
  std::optional<std::uint64_t> seed;
  std::string curvature = "random";
  std::string u, v;
  bool json = false;
  std::vector<std::string> eval;
  std::string out;
  unsigned threads = 0;
};

std::uint64_t seed_base() {
  const char* env = std::getenv("WRES_SEED_BASE");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const auto v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw UsageError(std::string("WRES_SEED_BASE is not an integer: ") + env);
  return v;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (item.empty() || pos != item.size() || item[0] == '-') throw UsageError("malformed seed list: " + text);
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty seed list");
  return out;
}

Dimension make_dimension(int n) {
  try {
    return Dimension(n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

/// Fills dim and the curvature source of a config from the options.
VerifyConfig base_config(const RunOptions& o) {
  int n = o.dim;
  VerifyConfig cfg;
  const auto& src = o.curvature;
  if (src == "random") {
    cfg.source = CurvatureSource::random;
  } else if (src == "constant") {
    cfg.source = CurvatureSource::constant;
  } else if (src == "flat") {
    cfg.source = CurvatureSource::flat;
  } else {
    std::ifstream in(src);
    if (!in) throw UsageError("cannot open curvature file: " + src);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      cfg.file_tensor = riemann_from_json(buf.str());
    } catch (const std::exception& e) {
      throw UsageError(src + ": " + e.what());
    }
    const int fn = cfg.file_tensor->dim().n();
    if (o.dim_given && fn != n)
      throw UsageError(src + " holds an n = " + std::to_string(fn) + " tensor but --dim is " + std::to_string(n));
    n = fn;
    cfg.source = CurvatureSource::file;
    cfg.file_name = src;
  }
  cfg.dim = make_dimension(n);
  cfg.threads = o.threads;
  auto vec = [&](const std::string& text) -> std::optional<FrameVector> {
    if (text.empty()) return std::nullopt;
    try {
      return parse_frame_vector(cfg.dim, text);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  };
  cfg.u = vec(o.u);
  cfg.v = vec(o.v);
  if (cfg.u.has_value() != cfg.v.has_value()) throw UsageError("--u and --v must be given together");
  return cfg;
}

std::uint64_t single_seed(const RunOptions& o) { return o.seed ? *o.seed : seed_base(); }

std::string curvature_label(const VerifyConfig& cfg) {
  switch (cfg.source) {
    case CurvatureSource::random: return "random";
    case CurvatureSource::constant: return "constant";
    case CurvatureSource::flat: return "flat";
    case CurvatureSource::file: return cfg.file_name;
  }
  return "?";
}

struct EvalPoint {
  Rational a0, b0;
};

std::optional<EvalPoint> eval_point(const RunOptions& o) {
  if (o.eval.empty()) return std::nullopt;
  if (o.eval.size() != 2) throw UsageError("--eval takes two values: a0 b0");
  try {
    return EvalPoint{parse_rational(o.eval[0]), parse_rational(o.eval[1])};
  } catch (const std::exception& e) {
    throw UsageError(std::string("--eval: ") + e.what());
  }
}

Rational rational_pow(const Rational& x, int p) {
  Rational out = 1;
  for (int k = 0; k < std::abs(p); ++k) out *= x;
  if (p < 0) {
    if (out == 0) throw UsageError("--eval point makes (a0 b0) vanish under a negative power");
    out = 1 / out;
  }
  return out;
}

/// Vol(S^{n-1}) = 2 pi^m / (m-1)! as (rational coefficient, pi exponent).
Rational volume_coefficient(Dimension dim) {
  Rational f = 1;
  for (int k = 2; k < dim.m(); ++k) f *= k;
  return Rational(2) / f;
}

std::string pi_power(const Rational& coeff, int m) {
  std::string pi = m == 1 ? "pi" : "pi^" + std::to_string(m);
  if (coeff == 1) return pi;
  if (coeff.get_den() == 1) return coeff.get_str() + "*" + pi;
  return coeff.get_num().get_str() + "*" + pi + "/" + coeff.get_den().get_str();
}

std::string vol_name(Dimension dim) { return "Vol(S^" + std::to_string(dim.n() - 1) + ")"; }

struct Evaluated {
  Rational density;  // coefficient of Vol
  Rational pi_coeff;  // coefficient of pi^m
  double value;
  bool real;
};

Evaluated evaluate(const FunctionalDensity& d, Dimension dim, const EvalPoint& p) {
  const auto z = poly_eval(d.core, p.a0, p.b0);
  Evaluated e;
  e.real = z.im == 0;
  e.density = z.re * rational_pow(p.a0 * p.b0, d.ab_power);
  e.pi_coeff = e.density * volume_coefficient(dim);
  e.value = e.pi_coeff.get_d() * std::pow(M_PI, dim.m());
  return e;
}

std::string format_decimal(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

std::string evaluated_text(const FunctionalDensity& d, Dimension dim, const EvalPoint& p) {
  const auto e = evaluate(d, dim, p);
  std::string s = e.density.get_str() + " * " + pi_power(volume_coefficient(dim), dim.m());
  if (e.density != 0 && e.density != 1) s += " = " + pi_power(e.pi_coeff, dim.m());
  s += " ~ " + format_decimal(e.value);
  if (!e.real) s += " (imaginary part dropped)";
  return s;
}

std::string density_text(const FunctionalDensity& d, Dimension dim) {
  const auto nd = d.normalized();
  if (nd.is_zero()) return "0";
  return nd.core.to_string() + " * " + vol_name(dim) + ", prefactor (a0*b0)^" + std::to_string(nd.ab_power);
}

void emit(const RunOptions& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

std::string check_mark(bool ok) { return ok ? "ok" : "FAIL"; }

std::string instance_summary(const InstanceReport& r) {
  std::size_t good = 0;
  for (const auto& p : r.parts) good += p.match;
  std::ostringstream os;
  os << "seed " << r.seed << ": " << good << "/" << r.parts.size() << " parts, sum I " << check_mark(r.i_sum_match)
     << ", sum II " << check_mark(r.ii_sum_match) << ", metric " << check_mark(r.metric_match) << ", einstein "
     << check_mark(r.einstein_match) << ", split " << check_mark(r.n1_split_match) << ", symmetric "
     << check_mark(r.einstein_symmetric) << ", real " << check_mark(r.all_real) << "  "
     << (r.all_match() ? "MATCH" : "MISMATCH") << "\n";
  if (!r.all_match()) {
    for (const auto& p : r.parts)
      if (!p.match || !p.real)
        os << "  " << part_name(p.id) << ": computed " << p.computed.to_string() << ", expected "
           << p.expected.to_string() << "\n";
    if (!r.metric_match)
      os << "  metric: computed " << r.metric.to_string() << ", expected " << r.metric_expected.to_string() << "\n";
    if (!r.einstein_match)
      os << "  einstein: computed " << r.einstein.to_string() << ", expected " << r.einstein_expected.to_string()
         << "\n";
    if (!r.diagnostic.empty()) os << r.diagnostic << "\n";
  }
  return os.str();
}

int cmd_verify(const RunOptions& o) {
  auto cfg = base_config(o);
  if (!o.seed_list.empty()) {
    cfg.seeds = parse_seed_list(o.seed_list);
  } else if (o.seed) {
    cfg.seeds = {*o.seed};
  } else {
    if (o.seeds < 1) throw UsageError("--seeds must be positive");
    const auto base = seed_base();
    for (int k = 0; k < o.seeds; ++k) cfg.seeds.push_back(base + static_cast<std::uint64_t>(k));
  }
  const auto report = verify_all(cfg);
  if (o.json) {
    emit(o, report_to_json(report) + "\n");
  } else {
    std::ostringstream os;
    os << "n = " << cfg.dim.n() << ", curvature " << curvature_label(cfg) << ", " << cfg.seeds.size()
       << " instance(s)\n";
    std::size_t good = 0;
    for (const auto& inst : report.instances) {
      os << instance_summary(inst);
      good += inst.all_match();
    }
    os << good << "/" << report.instances.size() << " instances match\n";
    emit(o, os.str());
  }
  return report.all_match() ? kExitMatch : kExitMismatch;
}

/// Curvature and vectors of a single-instance command.
struct Instance {
  VerifyConfig cfg;
  std::uint64_t seed;
  RiemannTensor r;
  FrameVector u, v;
};

Instance single_instance(const RunOptions& o, bool need_vectors) {
  auto cfg = base_config(o);
  if (need_vectors && !cfg.u) throw UsageError("this command needs explicit --u and --v");
  const auto seed = single_seed(o);
  auto r = config_curvature(cfg, seed);
  auto u = cfg.u ? *cfg.u : random_frame_vector(cfg.dim, seed, 0);
  auto v = cfg.v ? *cfg.v : random_frame_vector(cfg.dim, seed, 1);
  return Instance{std::move(cfg), seed, std::move(r), std::move(u), std::move(v)};
}

int cmd_einstein(const RunOptions& o) {
  const auto ev = eval_point(o);
  const auto in = single_instance(o, true);
  const auto dim = in.cfg.dim;
  const auto res = einstein_functional(in.r, in.u, in.v, false);
  if (o.json) {
    nlohmann::json j;
    auto dens = [](const FunctionalDensity& d) {
      const auto nd = d.normalized();
      return nlohmann::json{{"core", nlohmann::json::parse(poly_to_json(nd.core))},
                            {"ab_power", nd.ab_power},
                            {"text", nd.to_string()}};
    };
    j["dim"] = dim.n();
    j["curvature"] = curvature_label(in.cfg);
    j["seed"] = in.seed;
    j["u"] = in.u.to_string();
    j["v"] = in.v.to_string();
    j["n1"] = dens(res.n1);
    j["n2"] = dens(res.n2);
    j["einstein"] = dens(res.total);
    j["expected"] = dens(res.expected);
    j["match"] = res.match;
    j["real"] = res.total.is_real();
    if (ev) {
      const auto e = evaluate(res.total, dim, *ev);
      j["eval"] = {{"a0", ev->a0.get_str()},
                   {"b0", ev->b0.get_str()},
                   {"vol_coefficient", e.density.get_str()},
                   {"pi_power_coefficient", e.pi_coeff.get_str()},
                   {"value", e.value}};
    }
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "n = " << dim.n() << ", curvature " << curvature_label(in.cfg);
    if (in.cfg.source == CurvatureSource::random) os << ", seed " << in.seed;
    os << "\nu = " << in.u.to_string() << "\nv = " << in.v.to_string() << "\n";
    os << "N1 = " << density_text(res.n1, dim) << "\n";
    os << "N2 = " << density_text(res.n2, dim) << "\n";
    os << "N  = " << density_text(res.total, dim) << "\n";
    os << "expected -2^n * G(u,v) / 6 = " << density_text(res.expected, dim) << "\n";
    if (ev)
      os << "at a0 = " << ev->a0.get_str() << ", b0 = " << ev->b0.get_str() << ": "
         << evaluated_text(res.total, dim, *ev) << "\n";
    os << (res.match ? "MATCH" : "MISMATCH") << "\n";
    emit(o, os.str());
  }
  return res.match ? kExitMatch : kExitMismatch;
}

int cmd_parts(const RunOptions& o) {
  const auto ev = eval_point(o);
  const auto in = single_instance(o, false);
  const auto dim = in.cfg.dim;
  const auto rep = verify_instance(in.r, in.u, in.v);
  if (o.json) {
    emit(o, instance_to_json(rep) + "\n");
  } else {
    std::ostringstream os;
    os << "n = " << dim.n() << ", curvature " << curvature_label(in.cfg);
    if (in.cfg.source == CurvatureSource::random) os << ", seed " << in.seed;
    os << "\nu = " << in.u.to_string() << "\nv = " << in.v.to_string() << "\n";
    os << "values are cores times Vol(S^" << dim.n() - 1 << ")\n\n";
    auto row = [&](const std::string& id, const FunctionalDensity& c, const FunctionalDensity& e, bool ok) {
      os << std::left << std::setw(6) << id << "  " << (ok ? "ok  " : "FAIL") << "  computed " << c.to_string();
      if (!ok) os << "  expected " << e.to_string();
      if (ev) os << "  [" << evaluated_text(c, dim, *ev) << "]";
      os << "\n";
    };
    for (const auto& p : rep.parts) row(part_name(p.id), p.computed, p.expected, p.match && p.real);
    os << "\n";
    row("I", rep.i_sum, rep.i_sum_expected, rep.i_sum_match);
    row("II", rep.ii_sum, rep.ii_sum_expected, rep.ii_sum_match);
    row("metric", rep.metric, rep.metric_expected, rep.metric_match);
    row("N", rep.einstein, rep.einstein_expected, rep.einstein_match);
    os << "\n" << (rep.all_match() ? "MATCH" : "MISMATCH") << "\n";
    if (!rep.diagnostic.empty()) os << rep.diagnostic << "\n";
    emit(o, os.str());
  }
  return rep.all_match() ? kExitMatch : kExitMismatch;
}

void add_common(CLI::App* sub, RunOptions& o) {
  sub->add_option("--dim", o.dim, "Manifold dimension (even, 2..8)")->each([&o](const std::string&) {
    o.dim_given = true;
  });
  sub->add_option("--curvature", o.curvature, "random, constant, flat or a curvature JSON file");
  sub->add_option("--u", o.u, "Vector u: e<j> or comma-separated rationals");
  sub->add_option("--v", o.v, "Vector v: e<j> or comma-separated rationals");
  sub->add_flag("--json", o.json, "Emit the JSON report");
  sub->add_option("--out", o.out, "Write the report to a file");
  sub->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact residue verification of the spectral Einstein functional"};
  app.require_subcommand(0, 1);
  RunOptions o;

  auto* verify = app.add_subcommand("verify", "Check every part and the functionals for a list of seeds");
  add_common(verify, o);
  verify->add_option("--seeds", o.seeds, "Number of seeds, starting at WRES_SEED_BASE (default 1)");
  verify->add_option("--seed-list", o.seed_list, "Explicit comma-separated seeds");
  verify->add_option("--seed", o.seed, "Single seed");

  auto* einstein = app.add_subcommand("einstein", "Compute the Einstein functional for explicit u, v");
  add_common(einstein, o);
  einstein->add_option("--seed", o.seed, "Seed of a random curvature tensor");
  einstein->add_option("--eval", o.eval, "Numeric rendering at a0 b0")->expected(2);

  auto* parts = app.add_subcommand("parts", "Per-part table for one instance");
  add_common(parts, o);
  parts->add_option("--seed", o.seed, "Seed of the curvature tensor and random vectors");
  parts->add_option("--eval", o.eval, "Numeric rendering at a0 b0")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*einstein) return cmd_einstein(o);
    if (*parts) return cmd_parts(o);
    return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "wres: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "wres: error: " << e.what() << "\n";
    return kExitMismatch;
  }
}
