#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fy/combinatorics.hpp"
#include "fy/config.hpp"
#include "fy/error.hpp"
#include "fy/faddeev.hpp"
#include "fy/hardcore.hpp"
#include "fy/lattice.hpp"
#include "fy/yakubovsky.hpp"

namespace py = pybind11;

namespace {

fy::lattice::LatticeModel model_for(const std::string& preset, std::optional<int> core) {
  auto m = fy::lattice::preset(preset);
  m.core_radius = core;
  return m;
}

py::dict spectrum_check(std::uint64_t seed, std::size_t n, long d, bool hermitian, double tol) {
  const auto r = fy::faddeev::spectrum_union_check(fy::faddeev::random_split(seed, n, d, hermitian), tol);
  py::dict out;
  out["max_matching_distance"] = r.max_matching_distance;
  out["reverse_distance"] = r.reverse_distance;
  out["passed"] = r.passed;
  return out;
}

std::vector<double> oracle(const std::string& preset, std::size_t k, std::optional<int> core) {
  const auto m = model_for(preset, core);
  std::vector<double> out;
  if (core) {
    for (const auto& s : fy::hardcore::restricted_oracle(m, k).states) out.push_back(s.eigenvalue.real());
  } else {
    for (const auto& s : fy::lattice::dense_oracle_spectrum(m, k)) out.push_back(s.eigenvalue.real());
  }
  return out;
}

py::dict faddeev_ground(const std::string& preset) {
  const auto m = model_for(preset, std::nullopt);
  const auto split = fy::lattice::build_split(m);
  const auto g = fy::lattice::dense_oracle_spectrum(m, 1).front();
  const auto c = fy::faddeev::faddeev_components(split, g.eigenvalue.real(), g.eigenvector);
  py::dict out;
  out["eigenvalue"] = c.z;
  out["psi"] = g.eigenvector;
  out["components"] = c.components;
  out["residuals"] = fy::faddeev::faddeev_residual(split, c);
  return out;
}

py::dict yakubovsky_ground(const std::string& preset) {
  const auto m = model_for(preset, std::nullopt);
  const fy::yakubovsky::YakubovskySystem sys(fy::lattice::build_split(m));
  const auto g = fy::lattice::dense_oracle_spectrum(m, 1).front();
  const auto f = fy::faddeev::faddeev_components(sys.split(), g.eigenvalue.real(), g.eigenvector);
  const auto c = fy::yakubovsky::yakubovsky_components(sys, f.z, f);
  py::dict out;
  out["eigenvalue"] = c.z;
  out["residuals"] = fy::yakubovsky::yakubovsky_residual(sys, c);
  out["chain_sum_defects"] = fy::yakubovsky::chain_sum_consistency(sys, c, f).per_pair;
  return out;
}

py::dict hardcore3(const std::string& preset, int core, double target) {
  const auto m = model_for(preset, core);
  const auto sol = fy::hardcore::solve_hardcore3(m, target);
  const auto& st = sol.states.front();
  py::dict out;
  out["eigenvalue"] = st.pencil.eigenvalue.real();
  out["core_max"] = st.core_max;
  out["restricted_residual"] = st.restricted_residual;
  out["psi"] = st.psi;
  out["warnings"] = sol.warnings;
  return out;
}

py::dict hardcore4_defect(const std::string& preset, int core) {
  const auto m = model_for(preset, core);
  const fy::yakubovsky::YakubovskySystem sys(fy::lattice::build_split(m));
  const auto g = fy::hardcore::restricted_oracle(m, 1).states.front();
  const auto comps = fy::hardcore::hardcore4_components(sys, g.eigenvalue.real(), g.eigenvector);
  const auto d = fy::hardcore::assemble_hardcore4_constraints(sys, m).evaluate(comps.chains);
  py::dict out;
  out["constraint_sites"] = d.constraint_sites;
  out["max_defect"] = d.max_defect;
  out["max_defect_excluding_self"] = d.max_defect_excluding_self;
  out["component_scale"] = d.component_scale;
  return out;
}

}  // namespace

PYBIND11_MODULE(_fy, m) {
  m.doc() = "Faddeev and Yakubovsky component equations on small lattices";
  m.attr("__version__") = FY_VERSION;

  static py::exception<fy::Error> error(m, "FyError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const fy::Error& e) {
      py::set_error(error, (std::string(fy::to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("chains", [](int n) {
    std::vector<std::string> out;
    for (const auto& c : fy::combinatorics::enumerate_chains(n)) out.push_back(fy::combinatorics::format(c));
    return out;
  }, py::arg("n"));
  m.def("chain_orbit_sizes", [](int n) {
    std::vector<std::size_t> out;
    for (const auto& o : fy::combinatorics::chain_orbits(n).orbits) out.push_back(o.size());
    return out;
  }, py::arg("n"));
  m.def("presets", &fy::lattice::preset_names);
  m.def("spectrum_check", &spectrum_check, py::arg("seed"), py::arg("n"), py::arg("dim"),
        py::arg("hermitian") = false, py::arg("tol") = 1e-8);
  m.def("oracle", &oracle, "Lowest levels; with a core radius, of the restricted Hamiltonian.",
        py::arg("preset"), py::arg("k") = 5, py::arg("core_radius") = py::none());
  m.def("faddeev_ground", &faddeev_ground, py::arg("preset") = "tiny3");
  m.def("yakubovsky_ground", &yakubovsky_ground, py::arg("preset") = "tiny4");
  m.def("hardcore3", &hardcore3, py::arg("preset") = "tiny3", py::arg("core_radius") = 0,
        py::arg("target") = -8.0);
  m.def("hardcore4_defect", &hardcore4_defect, py::arg("preset") = "tiny4", py::arg("core_radius") = 0);
  m.def("config_echo", [](const std::string& path) {
    return fy::config::echo(fy::config::load_config(path));
  }, py::arg("path"), "Load a YAML run configuration and return its normalized echo.");
}
