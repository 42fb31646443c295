#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "normsol/constants.hpp"
#include "normsol/energy.hpp"
#include "normsol/runs.hpp"

namespace py = pybind11;
using namespace normsol;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

RadialFunction from_array(const GridPtr& grid, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1 || static_cast<std::size_t>(a.shape(0)) != grid->size()) {
    throw std::invalid_argument("values must be a 1-D array with one entry per grid node");
  }
  return RadialFunction(grid, std::vector<double>(a.data(), a.data() + a.shape(0)));
}

// Settings arrive as a dict of key -> value and go through the text parser,
// so Python sees exactly the keys and checks of the command line.
RunConfig make_config(const std::string& mode, const py::dict& settings) {
  RunConfig cfg;
  cfg.mode = mode;
  for (const auto& item : settings) {
    const std::string key = py::str(item.first);
    py::object value = py::reinterpret_borrow<py::object>(item.second);
    std::string text;
    if (py::isinstance<py::bool_>(value)) {
      text = value.cast<bool>() ? "true" : "false";
    } else if (py::isinstance<py::float_>(value)) {
      text = py::str(py::repr(value));
    } else {
      text = py::str(value);
    }
    apply_setting(cfg, key, text);
  }
  cfg.validate();
  return cfg;
}

py::dict energy_dict(const EnergyReport& e) {
  py::dict d;
  d["J"] = e.J;
  d["gradSq"] = e.gradSq;
  d["mass"] = e.mass;
  d["Q"] = e.Q;
  d["lambda"] = e.lambda;
  d["residualL2"] = e.residualL2;
  return d;
}

py::dict solve_py(const py::dict& settings) {
  const RunConfig cfg = make_config("solve", settings);
  DomainSolve ds = [&] {
    py::gil_scoped_release release;
    return solve_on_domain(cfg, cfg.mu, nullptr);
  }();
  const SolutionReport& rep = ds.report;
  py::dict d;
  d["r"] = to_array(ds.grid->nodes());
  d["u"] = to_array(rep.profile.values());
  d["converged"] = rep.converged;
  d["lambda"] = rep.lambda;
  d["gamma"] = rep.gamma;
  d["iterations"] = rep.iterations;
  d["newtonIterations"] = rep.newton_iterations;
  d["message"] = rep.message;
  d["energy"] = energy_dict(rep.energy);
  d["lambdaClosedFormError"] = lemma_lambda_error(rep, cfg.model(), cfg.solve.a);
  d["R"] = ds.grid->radius();
  return d;
}

py::dict sweep_py(const py::dict& settings) {
  const RunConfig cfg = make_config("sweep", settings);
  SweepResult res = [&] {
    py::gil_scoped_release release;
    return sweep(cfg);
  }();
  py::list records;
  for (const auto& r : res.records) {
    py::dict d;
    d["mu"] = r.mu;
    d["gamma"] = r.gamma;
    d["lambda"] = r.lambda;
    d["gradSq"] = r.grad_sq;
    d["massCheck"] = r.mass_check;
    d["converged"] = r.converged;
    d["R"] = r.radius;
    d["seededFrom"] = r.seeded_from ? py::object(py::float_(*r.seeded_from)) : py::object(py::none());
    records.append(d);
  }
  py::dict out;
  out["records"] = records;
  out["fittedSlope"] = res.fitted_slope ? py::object(py::float_(*res.fitted_slope)) : py::object(py::none());
  out["theoreticalExponent"] = res.theoretical_exponent;
  out["slopePassed"] = res.slope_passed;
  out["muStar"] = res.mu_star ? py::object(py::float_(*res.mu_star)) : py::object(py::none());
  return out;
}

py::list check_py(const py::dict& settings) {
  const RunConfig cfg = make_config("check", settings);
  std::vector<PropertyResult> results;
  {
    py::gil_scoped_release release;
    results = property_suite(cfg);
  }
  py::list out;
  for (const auto& r : results) {
    py::dict d;
    d["name"] = r.name;
    d["passed"] = r.passed;
    d["metric"] = r.metric;
    d["threshold"] = r.threshold;
    d["detail"] = r.detail;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Normalized solutions of -Delta u = lambda u + f(u) with prescribed L2 norm";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_RuntimeError);

  py::class_<RadialGrid, std::shared_ptr<RadialGrid>>(m, "Grid")
      .def(py::init([](int dimension, double radius, std::size_t nodes, double ratio) {
             const Grading g = ratio > 1.0 ? Grading::geometric(ratio) : Grading::uniform();
             return std::const_pointer_cast<RadialGrid>(make_grid(dimension, radius, nodes, g));
           }),
           py::arg("dimension"), py::arg("radius"), py::arg("nodes"), py::arg("ratio") = 1.0,
           "ratio > 1 selects geometric grading")
      .def_property_readonly("dimension", &RadialGrid::dimension)
      .def_property_readonly("radius", &RadialGrid::radius)
      .def_property_readonly("nodes", [](const RadialGrid& g) { return to_array(g.nodes()); })
      .def_property_readonly("weights", [](const RadialGrid& g) { return to_array(g.weights()); })
      .def("__len__", &RadialGrid::size);

  py::class_<NonlinearityModel>(m, "Model")
      .def_static("combined_power", &NonlinearityModel::combined_power, py::arg("mu"), py::arg("q"),
                  py::arg("dimension"))
      .def_static("exp_critical", &NonlinearityModel::exp_critical, py::arg("mu"), py::arg("p"))
      .def_property_readonly("mu", &NonlinearityModel::mu)
      .def_property_readonly("exponent", &NonlinearityModel::exponent)
      .def_property_readonly("dimension", &NonlinearityModel::dimension)
      .def_property_readonly("name", &NonlinearityModel::name)
      .def("f", [](const NonlinearityModel& mdl, double t) { return f_eval(mdl, t); })
      .def("F", [](const NonlinearityModel& mdl, double t) { return F_eval(mdl, t); });

  auto grid_ptr = [](const std::shared_ptr<RadialGrid>& g) { return GridPtr(g); };
  m.def("mass", [=](const std::shared_ptr<RadialGrid>& g, py::array_t<double> u) {
    return mass(from_array(grid_ptr(g), u));
  });
  m.def("grad_norm_sq", [=](const std::shared_ptr<RadialGrid>& g, py::array_t<double> u) {
    return grad_norm_sq(from_array(grid_ptr(g), u));
  });
  m.def("energy", [=](const std::shared_ptr<RadialGrid>& g, py::array_t<double> u, const NonlinearityModel& mdl) {
    return energy(from_array(grid_ptr(g), u), mdl);
  });
  m.def("pohozaev", [=](const std::shared_ptr<RadialGrid>& g, py::array_t<double> u, const NonlinearityModel& mdl) {
    return pohozaev(from_array(grid_ptr(g), u), mdl);
  });
  m.def("energy_report",
        [=](const std::shared_ptr<RadialGrid>& g, py::array_t<double> u, const NonlinearityModel& mdl) {
          return energy_dict(energy_report(from_array(grid_ptr(g), u), mdl));
        });
  m.def("sobolev_constant", [=](const std::shared_ptr<RadialGrid>& g) {
    const InequalityReport r = sobolev_constant(g->dimension(), grid_ptr(g));
    return py::make_tuple(r.value, r.parameters.at("eps"));
  }, "(S, eps at the minimum) over dilations of the Talenti bubble");

  m.def("solve", &solve_py, py::arg("settings") = py::dict(),
        "Solve at one mu; settings use the configuration keys of the command line");
  m.def("sweep", &sweep_py, py::arg("settings") = py::dict());
  m.def("check", &check_py, py::arg("settings") = py::dict());
  m.def("config_keys", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& k : config_keys()) out.emplace_back(k.name, k.help);
    return out;
  });
}
