// Python bindings for the core operations: domains, regions, exponent
// fields, modulars and Luxemburg norms, kernel projections, the lower-bound
// verifier, and the modular-inequality falsifier. Points cross the boundary
// as plain sequences of floats; reports come back as small record classes.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "varmod/errors.hpp"
#include "varmod/exponents.hpp"
#include "varmod/falsifier.hpp"
#include "varmod/geometry.hpp"
#include "varmod/modular.hpp"
#include "varmod/operators.hpp"
#include "varmod/verifier.hpp"

namespace py = pybind11;
using namespace varmod;

namespace {

Point to_point(const std::vector<double>& coords) { return make_point(coords); }

std::vector<double> from_point(const Point& p) {
  return std::vector<double>(p.coord.begin(), p.coord.begin() + p.dim);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Variable-exponent modulars, Luxemburg norms, kernel projections, "
      "lower-bound verification, and the modular-inequality falsifier";

  py::register_exception<validation_error>(m, "ValidationError",
                                           PyExc_ValueError);
  py::register_exception<convergence_error>(m, "ConvergenceError",
                                            PyExc_RuntimeError);
  py::register_exception<no_exponent_gap>(m, "NoExponentGap",
                                          PyExc_RuntimeError);
  py::register_exception<nonpositive_infimum>(m, "NonpositiveInfimum",
                                              PyExc_RuntimeError);

  py::class_<Domain>(m, "Domain")
      .def_property_readonly("dimension",
                             [](const Domain& d) { return d.dimension; })
      .def("__repr__", [](const Domain& d) {
        return "<Domain dim=" + std::to_string(d.dimension) + ">";
      });
  m.def("disk_domain", &disk_domain, "Open unit disk with normalized area");
  m.def("halfplane_domain", &halfplane_domain, "Open upper half plane");
  m.def("halfspace_domain", &halfspace_domain, py::arg("n"),
        "Open upper half space in dimension n");

  py::class_<Region>(m, "Region")
      .def_property_readonly("dim", &Region::dim)
      .def("contains",
           [](const Region& r, const std::vector<double>& p) {
             return r.contains(to_point(p));
           },
           py::arg("point"))
      .def("bounding_box",
           [](const Region& r) {
             Point lo, hi;
             r.bounding_box(lo, hi);
             return py::make_tuple(from_point(lo), from_point(hi));
           })
      .def("measure",
           [](const Region& r, const Domain& d) { return measure(r, d); },
           py::arg("domain"));
  m.def("region_box",
        [](const std::vector<double>& lo, const std::vector<double>& hi) {
          return region_box(to_point(lo), to_point(hi));
        },
        py::arg("lo"), py::arg("hi"));
  m.def("region_disk",
        [](const std::vector<double>& center, double radius) {
          return region_disk(to_point(center), radius);
        },
        py::arg("center"), py::arg("radius"));
  m.def("region_annulus",
        [](const std::vector<double>& center, double inner, double outer) {
          return region_annulus(to_point(center), inner, outer);
        },
        py::arg("center"), py::arg("inner_radius"), py::arg("outer_radius"));
  m.def("region_union", &region_union, py::arg("members"));
  m.def("neighborhood_halfplane",
        [](const std::vector<double>& tau, double gamma) {
          return neighborhood_halfplane(to_point(tau), gamma);
        },
        py::arg("tau"), py::arg("gamma"));
  m.def("regions_intersect", &regions_intersect, py::arg("a"), py::arg("b"));
  m.def("region_inside_domain", &region_inside_domain, py::arg("region"),
        py::arg("domain"));

  py::class_<QuadratureGrid, std::shared_ptr<QuadratureGrid>>(m, "QuadratureGrid")
      .def_property_readonly("size", &QuadratureGrid::size)
      .def_property_readonly("resolution",
                             [](const QuadratureGrid& g) { return g.resolution; })
      .def("weight_sum", &QuadratureGrid::weight_sum)
      .def("__repr__", [](const QuadratureGrid& g) {
        return "<QuadratureGrid nodes=" + std::to_string(g.size()) + ">";
      });
  m.def("build_grid",
        [](const Region& r, const Domain& d, int resolution) {
          return std::make_shared<QuadratureGrid>(build_grid(r, d, resolution));
        },
        py::arg("region"), py::arg("domain"), py::arg("resolution"));

  py::class_<ExponentField>(m, "ExponentField")
      .def_property_readonly("p_minus",
                             [](const ExponentField& p) { return p.p_minus; })
      .def_property_readonly("p_plus",
                             [](const ExponentField& p) { return p.p_plus; })
      .def("__repr__", [](const ExponentField& p) {
        return "<ExponentField " + describe_exponent(p) + ">";
      });
  m.def("constant_exponent", &constant_exponent, py::arg("domain"),
        py::arg("value"));
  m.def("two_level_exponent", &two_level_exponent, py::arg("domain"),
        py::arg("region_minus"), py::arg("value_minus"), py::arg("region_plus"),
        py::arg("value_plus"), py::arg("background"));
  m.def("radial_exponent", &radial_exponent, py::arg("domain"),
        py::arg("coeffs"));
  m.def("describe_exponent", &describe_exponent, py::arg("p"));
  m.def("eval_exponent",
        [](const ExponentField& p, const std::vector<double>& z) {
          return eval_exponent(p, to_point(z));
        },
        py::arg("p"), py::arg("z"));
  m.def("essential_bounds",
        [](const ExponentField& p, const Region& r, int resolution) {
          return essential_bounds(p, r, resolution);
        },
        py::arg("p"), py::arg("region"), py::arg("resolution"));
  m.def("log_holder_modulus", &log_holder_modulus, py::arg("p"),
        py::arg("region"), py::arg("resolution"));

  py::class_<GapSets>(m, "GapSets")
      .def_readonly("k_minus", &GapSets::k_minus)
      .def_readonly("k_plus", &GapSets::k_plus)
      .def_readonly("s_minus", &GapSets::s_minus)
      .def_readonly("s_plus", &GapSets::s_plus);
  m.def("find_gap_sets",
        [](const ExponentField& p, const std::vector<double>& tau,
           const Region& nb, int resolution) {
          return find_gap_sets(p, to_point(tau), nb, resolution);
        },
        py::arg("p"), py::arg("tau"), py::arg("neighborhood"),
        py::arg("resolution"));

  py::class_<SampledFunction>(m, "SampledFunction");
  m.def("indicator", &indicator, py::arg("domain"), py::arg("support"));
  m.def("scaled_indicator", &scaled_indicator, py::arg("domain"),
        py::arg("scale"), py::arg("support"));
  m.def("polynomial", &polynomial, py::arg("domain"), py::arg("coeffs"));
  m.def("eval_function",
        [](const SampledFunction& f, const std::vector<double>& z) {
          return eval_function(f, to_point(z));
        },
        py::arg("f"), py::arg("z"));
  m.def("modular",
        [](const SampledFunction& f, const ExponentField& p,
           const std::shared_ptr<QuadratureGrid>& grid) {
          return modular(f, p, *grid);
        },
        py::arg("f"), py::arg("p"), py::arg("grid"));
  m.def("luxemburg_norm",
        [](const SampledFunction& f, const ExponentField& p,
           const std::shared_ptr<QuadratureGrid>& grid, double tol) {
          return luxemburg_norm(f, p, *grid, tol);
        },
        py::arg("f"), py::arg("p"), py::arg("grid"), py::arg("tol") = 1e-10);

  py::class_<KernelId>(m, "KernelId")
      .def_property_readonly("dimension",
                             [](const KernelId& id) { return id.dimension; })
      .def_property_readonly("constant",
                             [](const KernelId& id) { return id.constant; });
  m.def("bergman_disk_kernel", &bergman_disk_kernel);
  m.def("bergman_halfplane_kernel", &bergman_halfplane_kernel);
  m.def("harmonic_halfspace_kernel", &harmonic_halfspace_kernel, py::arg("n"));
  m.def("kernel_domain", &kernel_domain, py::arg("id"));
  m.def("kernel_value",
        [](const KernelId& id, const std::vector<double>& z,
           const std::vector<double>& w) {
          return kernel(id, to_point(z), to_point(w));
        },
        py::arg("id"), py::arg("z"), py::arg("w"));
  m.def("project",
        [](const KernelId& id, const SampledFunction& f,
           const std::vector<double>& z,
           const std::shared_ptr<QuadratureGrid>& grid) {
          return project(id, f, to_point(z), *grid);
        },
        py::arg("id"), py::arg("f"), py::arg("z"), py::arg("grid"));

  m.def("kernel_infimum", &kernel_infimum, py::arg("id"), py::arg("region"),
        py::arg("resolution"));
  m.def("halfplane_negativity_check", &halfplane_negativity_check,
        py::arg("region"), py::arg("resolution"));
  m.def("find_positive_box",
        [](const KernelId& id, const std::vector<double>& center,
           double halfwidth, int resolution) {
          return find_positive_box(id, to_point(center), halfwidth, resolution);
        },
        py::arg("id"), py::arg("center"), py::arg("initial_halfwidth"),
        py::arg("resolution"));

  py::class_<LemmaTrial>(m, "LemmaTrial")
      .def_readonly("e", &LemmaTrial::e)
      .def_property_readonly("z",
                             [](const LemmaTrial& t) { return from_point(t.z); })
      .def_readonly("lhs", &LemmaTrial::lhs)
      .def_readonly("bound", &LemmaTrial::bound)
      .def_readonly("margin", &LemmaTrial::margin);
  py::class_<LemmaReport>(m, "LemmaReport")
      .def_readonly("c_tau", &LemmaReport::c_tau)
      .def_readonly("trials", &LemmaReport::trials)
      .def_readonly("min_margin", &LemmaReport::min_margin)
      .def_readonly("tol_quadrature", &LemmaReport::tol_quadrature)
      .def_readonly("verified", &LemmaReport::verified);
  m.def("verify_lower_bound",
        [](const KernelId& id, const Region& k, int trials, int resolution,
           std::uint64_t seed) {
          return verify_lower_bound(id, k, trials, resolution, seed);
        },
        py::arg("id"), py::arg("region"), py::arg("trials"),
        py::arg("resolution"), py::arg("seed") = 0u);

  py::enum_<Verdict>(m, "Verdict")
      .value("Violated", Verdict::Violated)
      .value("Bounded", Verdict::Bounded);
  py::class_<FalsificationReport>(m, "FalsificationReport")
      .def_readonly("exponent", &FalsificationReport::exponent)
      .def_readonly("k_minus", &FalsificationReport::k_minus)
      .def_readonly("k_plus", &FalsificationReport::k_plus)
      .def_readonly("s_minus", &FalsificationReport::s_minus)
      .def_readonly("s_plus", &FalsificationReport::s_plus)
      .def_readonly("c_tau", &FalsificationReport::c_tau)
      .def_readonly("k_schedule", &FalsificationReport::k_schedule)
      .def_readonly("lhs", &FalsificationReport::lhs)
      .def_readonly("rhs", &FalsificationReport::rhs)
      .def_readonly("ratios", &FalsificationReport::ratios)
      .def_readonly("fitted_slope", &FalsificationReport::fitted_slope)
      .def_readonly("predicted_slope", &FalsificationReport::predicted_slope)
      .def_readonly("verdict", &FalsificationReport::verdict);
  m.def("geometric_schedule", &geometric_schedule, py::arg("k_min"),
        py::arg("k_max"), py::arg("count"));
  m.def("falsify",
        [](const KernelId& id, const ExponentField& p,
           const std::vector<double>& tau, const Region& k,
           const std::vector<double>& schedule, int resolution) {
          return falsify(id, p, to_point(tau), k, schedule, resolution);
        },
        py::arg("id"), py::arg("p"), py::arg("tau"), py::arg("region"),
        py::arg("k_schedule"), py::arg("resolution"));
  py::class_<ChainWitness>(m, "ChainWitness")
      .def_readonly("k_star", &ChainWitness::k_star)
      .def_readonly("lhs_bound", &ChainWitness::lhs_bound)
      .def_readonly("rhs_bound", &ChainWitness::rhs_bound);
  m.def("proof_chain_check", &proof_chain_check, py::arg("id"), py::arg("p"),
        py::arg("report"), py::arg("c_hypothetical"));
}
