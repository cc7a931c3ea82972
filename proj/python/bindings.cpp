#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wres/residue.hpp"
#include "wres/sphere.hpp"

namespace py = pybind11;
using namespace wres;

namespace {

VerifyConfig make_config(int dim, const std::string& curvature) {
  VerifyConfig cfg;
  cfg.dim = Dimension(dim);
  if (curvature == "random") {
    cfg.source = CurvatureSource::random;
  } else if (curvature == "constant") {
    cfg.source = CurvatureSource::constant;
  } else if (curvature == "flat") {
    cfg.source = CurvatureSource::flat;
  } else {
    std::string text = curvature;
    if (!curvature.empty() && curvature.front() != '{') {
      std::ifstream in(curvature);
      if (!in) throw std::invalid_argument("cannot open curvature file: " + curvature);
      std::stringstream buf;
      buf << in.rdbuf();
      text = buf.str();
      cfg.file_name = curvature;
    } else {
      cfg.file_name = "<json>";
    }
    cfg.file_tensor = riemann_from_json(text);
    if (!(cfg.file_tensor->dim() == cfg.dim))
      throw std::invalid_argument("curvature tensor dimension differs from dim");
    cfg.source = CurvatureSource::file;
  }
  return cfg;
}

py::dict density_dict(const FunctionalDensity& d) {
  const auto nd = d.normalized();
  py::dict out;
  out["terms"] = poly_to_json(nd.core);
  out["ab_power"] = nd.ab_power;
  out["text"] = nd.to_string();
  return out;
}

struct Inputs {
  RiemannTensor r;
  FrameVector u, v;
};

Inputs inputs(int dim, const std::string& u, const std::string& v, const std::string& curvature, std::uint64_t seed) {
  const auto cfg = make_config(dim, curvature);
  return Inputs{config_curvature(cfg, seed), parse_frame_vector(cfg.dim, u), parse_frame_vector(cfg.dim, v)};
}

}  // namespace

PYBIND11_MODULE(_wres, m) {
  m.doc() = "Exact residue computations for the spectral Einstein functional";

  m.def(
      "verify",
      [](int dim, const std::vector<std::uint64_t>& seeds, const std::string& curvature, std::optional<std::string> u,
         std::optional<std::string> v, unsigned threads) {
        auto cfg = make_config(dim, curvature);
        cfg.seeds = seeds;
        cfg.threads = threads;
        if (u.has_value() != v.has_value()) throw std::invalid_argument("u and v must be given together");
        if (u) {
          cfg.u = parse_frame_vector(cfg.dim, *u);
          cfg.v = parse_frame_vector(cfg.dim, *v);
        }
        VerifyReport rep;
        {
          py::gil_scoped_release release;
          rep = verify_all(cfg);
        }
        return report_to_json(rep);
      },
      py::arg("dim") = 4, py::arg("seeds") = std::vector<std::uint64_t>{1}, py::arg("curvature") = "random",
      py::arg("u") = py::none(), py::arg("v") = py::none(), py::arg("threads") = 0,
      "Runs every check and returns the JSON report.");

  m.def(
      "einstein",
      [](int dim, const std::string& u, const std::string& v, const std::string& curvature, std::uint64_t seed) {
        const auto in = inputs(dim, u, v, curvature, seed);
        EinsteinResult res;
        {
          py::gil_scoped_release release;
          res = einstein_functional(in.r, in.u, in.v, false);
        }
        py::dict out;
        out["n1"] = density_dict(res.n1);
        out["n2"] = density_dict(res.n2);
        out["total"] = density_dict(res.total);
        out["expected"] = density_dict(res.expected);
        out["match"] = res.match;
        return out;
      },
      py::arg("dim"), py::arg("u"), py::arg("v"), py::arg("curvature") = "random", py::arg("seed") = 1);

  m.def(
      "metric",
      [](int dim, const std::string& u, const std::string& v, const std::string& curvature, std::uint64_t seed) {
        const auto in = inputs(dim, u, v, curvature, seed);
        return density_dict(metric_functional(in.r, in.u, in.v));
      },
      py::arg("dim"), py::arg("u"), py::arg("v"), py::arg("curvature") = "random", py::arg("seed") = 1);

  m.def(
      "part",
      [](const std::string& name, int dim, const std::string& u, const std::string& v, const std::string& curvature,
         std::uint64_t seed) {
        const auto id = parse_part(name);
        if (!id) throw std::invalid_argument("unknown part: " + name);
        const auto in = inputs(dim, u, v, curvature, seed);
        PartReport rep{*id, {}, {}, false, false};
        {
          py::gil_scoped_release release;
          rep = compute_part(*id, in.r, in.u, in.v);
        }
        py::dict out;
        out["id"] = part_name(rep.id);
        out["computed"] = density_dict(rep.computed);
        out["expected"] = density_dict(rep.expected);
        out["match"] = rep.match;
        out["real"] = rep.real;
        return out;
      },
      py::arg("name"), py::arg("dim"), py::arg("u"), py::arg("v"), py::arg("curvature") = "random",
      py::arg("seed") = 1);

  m.def("part_names", [] {
    std::vector<std::string> out;
    for (auto p : all_parts()) out.push_back(part_name(p));
    return out;
  });

  m.def(
      "sphere_average",
      [](int dim, const std::vector<int>& alpha) { return sphere_average(Dimension(dim), alpha).get_str(); },
      py::arg("dim"), py::arg("alpha"), "Normalized sphere average of xi^alpha as a rational string.");

  m.def(
      "random_riemann", [](int dim, std::uint64_t seed) { return riemann_to_json(random_riemann(Dimension(dim), seed)); },
      py::arg("dim"), py::arg("seed"));

  m.def(
      "einstein_tensor",
      [](const std::string& riemann_json, const std::string& u, const std::string& v) {
        const auto r = riemann_from_json(riemann_json);
        return einstein_bilinear(r, parse_frame_vector(r.dim(), u), parse_frame_vector(r.dim(), v)).get_str();
      },
      py::arg("riemann_json"), py::arg("u"), py::arg("v"), "G(u, v) = Ric(u, v) - s g(u, v) / 2 as a rational string.");

  m.def("sphere_volume", [](int dim) { return sphere_volume(Dimension(dim)); }, py::arg("dim"));
}
