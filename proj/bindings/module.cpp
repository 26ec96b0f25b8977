// Python bindings for the main operations: grids and fields, time evolution,
// charges and brackets, the exact algebra verdicts, conformal group actions,
// field-dependent transforms and the Schroedinger solver.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfluid/acceptance.hpp"
#include "cfluid/bargmann.hpp"
#include "cfluid/conformal_matrix.hpp"
#include "cfluid/dynamics.hpp"
#include "cfluid/emtensor.hpp"
#include "cfluid/liealg.hpp"
#include "cfluid/poisson.hpp"
#include "cfluid/schrodinger.hpp"

namespace py = pybind11;
using namespace cfluid;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  // The (count, data) constructor copies the buffer.
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> from_array(const py::array_t<double>& a) {
  auto buf = a.request();
  const double* p = static_cast<const double*>(buf.ptr);
  return std::vector<double>(p, p + buf.size);
}

Field1D make_field(const Grid1D& g, const py::array_t<double>& a) {
  return Field1D(g, from_array(a));
}

}  // namespace

PYBIND11_MODULE(_cfluid, m) {
  m.doc() = "1+1d isentropic fluid, its ten charges and the hidden o(3,2) "
            "symmetry structure";

  py::register_exception<Error>(m, "CfluidError");

  py::class_<Grid1D>(m, "Grid1D")
      .def(py::init<std::size_t, double>(), py::arg("n"), py::arg("length"))
      .def_readonly("n", &Grid1D::n)
      .def_readonly("length", &Grid1D::length)
      .def_property_readonly("spacing", &Grid1D::spacing)
      .def("x", [](const Grid1D& g) {
        std::vector<double> xs(g.n);
        for (std::size_t i = 0; i < g.n; ++i) xs[i] = g.x(i);
        return to_array(xs);
      });

  py::class_<FieldPair>(m, "FieldPair")
      .def(py::init([](const Grid1D& g, const py::array_t<double>& R,
                       const py::array_t<double>& Theta, double t) {
             return FieldPair(make_field(g, R), make_field(g, Theta), t);
           }),
           py::arg("grid"), py::arg("R"), py::arg("Theta"), py::arg("t") = 0.0)
      .def_property_readonly(
          "R", [](const FieldPair& s) { return to_array(s.R.values()); })
      .def_property_readonly(
          "Theta", [](const FieldPair& s) { return to_array(s.Theta.values()); })
      .def_readwrite("t", &FieldPair::t)
      .def_property_readonly(
          "grid", [](const FieldPair& s) { return s.R.grid(); });

  py::class_<Potential>(m, "Potential")
      .def_static("free", &Potential::free)
      .def_static("membrane", &Potential::membrane, py::arg("c"))
      .def_static("conformal", &Potential::conformal, py::arg("c"))
      .def_static("power_law", &Potential::power_law, py::arg("c"),
                  py::arg("omega"))
      .def_static("quantum_effective", &Potential::quantum_effective,
                  py::arg("c") = 0.0)
      .def_readonly("c", &Potential::c)
      .def_readonly("omega", &Potential::omega);

  m.def("standard_datum", &standard_datum, py::arg("n") = 512,
        py::arg("L") = 40.0, py::arg("pedestal") = 1e-6);
  m.def("unit_background_datum", &unit_background_datum, py::arg("n") = 512,
        py::arg("L") = 40.0);

  py::class_<FieldMap2D>(m, "Trajectory")
      .def_property_readonly(
          "times", [](const FieldMap2D& t) { return to_array(t.times()); })
      .def("slice", &FieldMap2D::slice)
      .def("__len__", &FieldMap2D::slice_count)
      .def("sample", &FieldMap2D::sample, py::arg("x"), py::arg("t"));

  m.def(
      "evolve",
      [](const FieldPair& initial, const Potential& pot, double dt,
         double t_final, std::size_t stride) {
        return evolve(initial, pot, EvolveOptions{dt, t_final, stride, true});
      },
      py::arg("initial"), py::arg("potential"), py::arg("dt") = 1e-3,
      py::arg("t_final") = 1.0, py::arg("stride") = 100);

  m.def("charge",
        [](const std::string& g, const FieldPair& s, const Potential& pot) {
          return charge(generator_from_name(g), s, pot);
        });
  m.def("charges", [](const FieldPair& s, const Potential& pot) {
    py::dict out;
    for (Generator g : kGenerators)
      out[py::str(std::string(generator_name(g)))] = charge(g, s, pot);
    return out;
  });
  m.def("conservation_report",
        [](const FieldMap2D& traj, const Potential& pot) {
          py::list out;
          for (const auto& row : conservation_report(traj, pot)) {
            py::dict d;
            d["generator"] = std::string(generator_name(row.g));
            d["initial"] = row.initial;
            d["final"] = row.final_value;
            d["max_drift"] = row.max_drift;
            out.append(d);
          }
          return out;
        });

  m.def("bracket",
        [](const std::string& a, const std::string& b, const FieldPair& s,
           const Potential& pot) {
          return poisson::bracket(generator_from_name(a),
                                  generator_from_name(b), s, pot);
        });
  m.def("verify_bracket_table",
        [](const FieldPair& s, const Potential& pot) {
          py::list out;
          for (const auto& chk : poisson::verify_table(s, pot)) {
            py::dict d;
            d["left"] = std::string(generator_name(chk.left));
            d["right"] = std::string(generator_name(chk.right));
            d["lhs"] = chk.lhs;
            d["rhs"] = chk.rhs;
            d["residual"] = chk.residual;
            out.append(d);
          }
          return out;
        });

  m.def("structure_table", [] {
    auto table = liealg::structure_table();
    py::dict out;
    out["closed"] = table.closed;
    out["sigma"] = table.sigma;
    out["sigma_unique"] = table.sigma_unique;
    py::list entries;
    for (const auto& e : table.entries) {
      py::dict d;
      d["left"] = std::string(generator_name(e.left));
      d["right"] = std::string(generator_name(e.right));
      py::dict rhs;
      for (std::size_t i = 0; i < kGenerators.size(); ++i)
        if (!e.coeffs[i].is_zero())
          rhs[py::str(std::string(generator_name(kGenerators[i])))] =
              e.coeffs[i].to_double();
      d["bracket"] = rhs;
      entries.append(d);
    }
    out["entries"] = entries;
    return out;
  });
  m.def("dictionary_exact",
        [] { return liealg::dictionary_check().all_exact; });
  m.def("conformal_factor", [](const std::string& g) {
    auto lam = liealg::conformal_factor(
        liealg::generator_field(generator_from_name(g)));
    return lam ? lam->str() : std::string("not conformal");
  });

  m.def("group_action",
        [](const std::string& g, double parameter,
           std::array<double, 3> point) {
          const conformal::Vec3 out = conformal::group_action(
              conformal::generator_matrix(generator_from_name(g), parameter),
              {point[0], point[1], point[2]});
          return std::array<double, 3>{out.x, out.t, out.s};
        });
  m.def("closed_form_action",
        [](const std::string& g, double parameter,
           std::array<double, 3> point) {
          const conformal::Vec3 out = conformal::closed_form_action(
              generator_from_name(g), parameter,
              {point[0], point[1], point[2]});
          return std::array<double, 3>{out.x, out.t, out.s};
        });
  m.def("schrodinger_condition", [](const std::string& g) {
    return conformal::schrodinger_condition(
        conformal::generator_matrix(generator_from_name(g)));
  });

  m.def(
      "transform_plane_wave",
      [](const std::string& flow, double parameter, double beta, double R0,
         std::size_t n, double L, double query_t) {
        PlaneWaveSource src(beta, R0);
        Grid1D grid(n, L);
        auto sol = bargmann::named_transform(generator_from_name(flow),
                                             parameter, src, grid, query_t);
        py::dict out;
        out["x"] = to_array([&] {
          std::vector<double> xs(grid.n);
          for (std::size_t i = 0; i < grid.n; ++i) xs[i] = grid.x(i);
          return xs;
        }());
        out["x_star"] = to_array(sol.x_star.values());
        out["t_star"] = to_array(sol.t_star.values());
        out["theta_star"] = to_array(sol.theta_star.values());
        out["R_star"] = to_array(sol.R_star.values());
        out["max_residual"] = sol.max_residual;
        return out;
      },
      py::arg("flow"), py::arg("parameter"), py::arg("beta") = 0.1,
      py::arg("R0") = 1.0, py::arg("n") = 256, py::arg("L") = 20.0,
      py::arg("query_t") = 0.3);

  m.def(
      "evolve_nls",
      [](const Grid1D& grid, const py::array_t<std::complex<double>>& psi0,
         double dt, double t_final, std::size_t stride, double quintic_c) {
        auto buf = psi0.request();
        const std::complex<double>* p =
            static_cast<const std::complex<double>*>(buf.ptr);
        nls::WaveField w(grid,
                         std::vector<std::complex<double>>(p, p + buf.size),
                         0.0);
        auto traj =
            nls::evolve_nls(w, nls::NlsOptions{dt, t_final, stride, quintic_c});
        py::dict out;
        out["times"] = to_array(traj.times);
        py::list psis;
        for (const auto& slice : traj.psi)
          psis.append(py::array_t<std::complex<double>>(
              static_cast<py::ssize_t>(slice.size()), slice.data()));
        out["psi"] = psis;
        return out;
      },
      py::arg("grid"), py::arg("psi0"), py::arg("dt") = 1e-4,
      py::arg("t_final") = 0.1, py::arg("stride") = 100,
      py::arg("quintic_c") = 0.0);

  m.def("hydro_decompose",
        [](const Grid1D& grid, const py::array_t<std::complex<double>>& psi,
           double t) {
          auto buf = psi.request();
          const std::complex<double>* p =
              static_cast<const std::complex<double>*>(buf.ptr);
          return nls::hydro_decompose(nls::WaveField(
              grid, std::vector<std::complex<double>>(p, p + buf.size), t));
        },
        py::arg("grid"), py::arg("psi"), py::arg("t") = 0.0);

  m.def("run_acceptance", [](unsigned seed) {
    py::list out;
    for (const auto& c : acceptance::run_all(seed)) {
      py::dict d;
      d["name"] = c.name;
      d["pass"] = c.pass;
      py::list items;
      for (const auto& item : c.items) {
        py::dict i;
        i["name"] = item.name;
        i["value"] = item.value;
        i["bound"] = item.bound;
        i["pass"] = item.pass;
        items.append(i);
      }
      d["items"] = items;
      out.append(d);
    }
    return out;
  },
  py::arg("seed") = 1);
}
