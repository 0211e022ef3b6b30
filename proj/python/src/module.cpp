#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>

#include "schrolet/cli.hpp"
#include "schrolet/continuous.hpp"
#include "schrolet/io.hpp"

namespace py = pybind11;
using namespace schrolet;

namespace {

// reports cross the boundary as JSON text; the Python wrapper decodes them
std::string dump(const json& j) { return j.dump(); }

py::array_t<cplx> component_array(const SequenceSignal& f, std::size_t label) {
  const auto& comps = f.comps.at(label);
  py::array_t<cplx> a({comps.size(), f.grid.size()});
  auto m = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t q = 0; q < f.grid.size(); ++q) m(i, q) = comps[i][q];
  return a;
}

void set_component(SequenceSignal& f, std::size_t label, py::array_t<cplx, py::array::c_style | py::array::forcecast> a) {
  auto& comps = f.comps.at(label);
  if (a.ndim() != 2 || std::size_t(a.shape(0)) != comps.size() || std::size_t(a.shape(1)) != f.grid.size())
    throw py::value_error("component array must have shape (label_dim, grid size)");
  auto r = a.unchecked<2>();
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t q = 0; q < f.grid.size(); ++q) comps[i][q] = r(i, q);
}

ProfileSpec profile(const std::string& constant, double scale) {
  ProfileSpec p;
  p.mode = parse_constant_mode(constant);
  p.scale = scale;
  return p;
}

}  // namespace

PYBIND11_MODULE(_schrolet, m) {
  m.doc() = "discrete Schroedingerlet frames";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(e.kind == ErrorKind::io ? PyExc_OSError : PyExc_ValueError, e.what());
    }
  });

  py::class_<RadialGrid>(m, "RadialGrid")
      .def_readonly("omega_min_exp", &RadialGrid::omega_min_exp)
      .def_readonly("omega_max_exp", &RadialGrid::omega_max_exp)
      .def_readonly("Q", &RadialGrid::Q)
      .def("__len__", &RadialGrid::size)
      .def("nodes", [](const RadialGrid& g) {
        std::vector<double> v(g.size());
        for (std::size_t p = 0; p < v.size(); ++p) v[p] = g.node(p);
        return py::array_t<double>(v.size(), v.data());
      });
  m.def("make_log_grid", &make_log_grid, py::arg("omega_min_exp"), py::arg("omega_max_exp"), py::arg("Q"));

  py::class_<AngularLabel>(m, "AngularLabel")
      .def_readonly("d", &AngularLabel::d)
      .def_readonly("index", &AngularLabel::index)
      .def("__repr__", [](const AngularLabel& l) { return "AngularLabel(d=" + std::to_string(l.d) + ", " + std::to_string(l.index) + ")"; });

  py::class_<FiniteSubgroup>(m, "FiniteSubgroup")
      .def_readonly("d", &FiniteSubgroup::d)
      .def("order", &FiniteSubgroup::order)
      .def("character_table_json", [](const FiniteSubgroup& F) { return dump(to_json(F)); });
  m.def("make_finite_subgroup", [](const std::string& kind, int param) { return make_finite_subgroup(parse_subgroup_kind(kind), param); },
        py::arg("kind"), py::arg("param"));
  m.def("multiplicities", [](const FiniteSubgroup& F, int index) { return multiplicities(F, AngularLabel{F.d, index}); },
        py::arg("F"), py::arg("index"));

  py::class_<Generator>(m, "Generator")
      .def_readonly("d", &Generator::d)
      .def_readonly("L", &Generator::L)
      .def_readonly("c", &Generator::c)
      .def_readonly("id", &Generator::id)
      .def_readonly("grid", &Generator::grid)
      .def_readonly("labels", &Generator::labels)
      .def_property_readonly("slot_count", [](const Generator& g) { return g.slots.size(); })
      .def("norm_sq_exact", &Generator::norm_sq_exact, py::arg("include_tail") = false)
      .def("summary_json", [](const Generator& g) { return dump(to_json(g)); });
  m.def(
      "build_generator_2d",
      [](int L, int nmax, const RadialGrid& grid, const std::string& constant, double scale) {
        return build_generator_2d(profile(constant, scale), {}, L, nmax, grid);
      },
      py::arg("L"), py::arg("nmax"), py::arg("grid"), py::arg("constant") = "computed", py::arg("scale") = 1.0);
  m.def(
      "build_generator_3d",
      [](const std::string& kind, int param, int imax, const RadialGrid& grid, const std::string& constant) {
        AlphaSpec a;
        a.rule = AlphaRule::bijection;
        return build_generator_general(profile(constant, 1.0), a, make_finite_subgroup(parse_subgroup_kind(kind), param), imax, grid);
      },
      py::arg("kind"), py::arg("param"), py::arg("imax"), py::arg("grid"), py::arg("constant") = "computed");
  m.def(
      "check_continuous_admissibility",
      [](const Generator& g, double rescale, double tol) { return dump(to_json(check_continuous_admissibility(g, rescale, tol))); },
      py::arg("g"), py::arg("rescale") = 1.0, py::arg("tol") = 1e-10);
  m.def(
      "check_discrete_conditions",
      [](const Generator& g, double tol) {
        json arr = json::array();
        for (const auto& r : check_discrete_conditions(g, tol)) arr.push_back(to_json(r));
        arr.push_back(to_json(check_support_disjointness(g)));
        return dump(arr);
      },
      py::arg("g"), py::arg("tol") = 1e-12);

  py::class_<SequenceSignal>(m, "SequenceSignal")
      .def_static("zeros_2d", &SequenceSignal::labels_2d, py::arg("grid"), py::arg("nmax"))
      .def_static("zeros_3d", &SequenceSignal::labels_3d, py::arg("grid"), py::arg("imax"))
      .def_readonly("d", &SequenceSignal::d)
      .def_readonly("grid", &SequenceSignal::grid)
      .def_readonly("labels", &SequenceSignal::labels)
      .def("component", &component_array, py::arg("label_pos"))
      .def("set_component", &set_component, py::arg("label_pos"), py::arg("values"))
      .def("norm_sq", &SequenceSignal::norm_sq)
      .def("inner", [](const SequenceSignal& f, const SequenceSignal& g) { return inner(f, g); });

  py::class_<SamplingGrid>(m, "SamplingGrid")
      .def_readonly("jmin", &SamplingGrid::jmin)
      .def_readonly("jmax", &SamplingGrid::jmax)
      .def_readonly("K", &SamplingGrid::K)
      .def_readonly("L", &SamplingGrid::L)
      .def("__len__", &SamplingGrid::size);
  m.def("make_sampling_grid", &make_sampling_grid, py::arg("g"), py::arg("jmin"), py::arg("jmax"), py::arg("K"));

  py::class_<CoefficientTable>(m, "CoefficientTable")
      .def_readonly("grid", &CoefficientTable::grid)
      .def_readonly("generator_id", &CoefficientTable::generator_id)
      .def("sum_sq", &CoefficientTable::sum_sq)
      .def("values", [](const CoefficientTable& c) {
        py::array_t<cplx> a({std::size_t(c.grid.nj()), std::size_t(c.grid.nk()), std::size_t(c.grid.L)});
        std::copy(c.c.begin(), c.c.end(), a.mutable_data());
        return a;
      });

  m.def(
      "band_test_signal",
      [](const Generator& g, const SamplingGrid& s, std::uint64_t seed, int harmonics, double min_periods) {
        std::mt19937_64 rng(seed);
        return band_test_signal(g, s, rng, harmonics, min_periods).f;
      },
      py::arg("g"), py::arg("s"), py::arg("seed") = 1, py::arg("harmonics") = 2, py::arg("min_periods") = 8.0);
  m.def(
      "analyze", [](const SequenceSignal& f, const Generator& g, const SamplingGrid& s, bool direct) {
        return analyze(f, g, s, direct ? AnalysisPath::direct : AnalysisPath::fast);
      },
      py::arg("f"), py::arg("g"), py::arg("s"), py::arg("direct") = false, py::call_guard<py::gil_scoped_release>());
  m.def("synthesize", &synthesize, py::arg("c"), py::arg("g"), py::arg("shape"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "parseval_report",
      [](const SequenceSignal& f, const Generator& g, const SamplingGrid& s, double tol) { return dump(to_json(parseval_report(f, g, s, tol))); },
      py::arg("f"), py::arg("g"), py::arg("s"), py::arg("tol") = 1e-8);
  m.def("frame_inner_exact", &frame_inner_exact, py::arg("g"), py::arg("j1"), py::arg("k1"), py::arg("l1"), py::arg("j2"),
        py::arg("k2"), py::arg("l2"));

  m.def(
      "propagate",
      [](py::array_t<cplx, py::array::c_style | py::array::forcecast> values, double Xi, double b) {
        if (values.ndim() < 2 || values.ndim() > 3) throw py::value_error("expected a 2D or 3D cubic array");
        int d = int(values.ndim()), N = int(values.shape(0));
        for (int i = 1; i < d; ++i)
          if (values.shape(i) != N) throw py::value_error("array must be cubic");
        CartesianSignal f(d, N, Xi);
        std::copy(values.data(), values.data() + f.size(), f.values.begin());
        auto out = propagate(f, b);
        py::array_t<cplx> r(values.request().shape);
        std::copy(out.values.begin(), out.values.end(), r.mutable_data());
        return r;
      },
      py::arg("values"), py::arg("Xi"), py::arg("b"));

  m.def(
      "weil_constant",
      [](const std::function<double(double, py::array_t<double>)>& phi, int d, double u_min, double u_max, int n, int rotations) {
        WeilSpec s;
        s.d = d;
        s.u_min = u_min;
        s.u_max = u_max;
        s.n = n;
        s.rotations = rotations;
        HFunction h = [&](double a, const Rotation& R) {
          py::array_t<double> M({R.d, R.d});
          auto w = M.mutable_unchecked<2>();
          for (int i = 0; i < R.d; ++i)
            for (int j = 0; j < R.d; ++j) w(i, j) = R.M(i, j);
          return phi(a, M);
        };
        return dump(to_json(weil_constant(h, s)));
      },
      py::arg("phi"), py::arg("d") = 2, py::arg("u_min") = -3.0, py::arg("u_max") = 3.0, py::arg("n") = 256, py::arg("rotations") = 16);

  m.def(
      "run_command",
      [](const std::string& cmd, const std::string& config, const std::string& out_dir, int threads) {
        CliOptions o;
        o.config = config;
        o.out_dir = out_dir;
        o.threads = threads;
        std::ostringstream out, err;
        int rc = run_command(cmd, o, out, err);
        return py::make_tuple(rc, out.str(), err.str());
      },
      py::arg("command"), py::arg("config"), py::arg("out_dir") = "", py::arg("threads") = 0);
}
