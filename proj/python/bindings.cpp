#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <memory>

#include "mixtilt/hecke.hpp"
#include "mixtilt/job.hpp"
#include "mixtilt/serialize.hpp"
#include "mixtilt/tilting.hpp"

namespace py = pybind11;
using namespace mixtilt;

namespace {

py::int_ to_py(const Integer& z) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

py::dict to_py(const LaurentPoly& p) {
  py::dict d;
  for (const auto& [e, c] : p.terms()) d[py::int_(e)] = to_py(c);
  return d;
}

Side parse_side(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw py::value_error("side must be 'left' or 'right'");
}

// Owns the system and its Hecke caches; Python sees words only.
class PySystem {
 public:
  explicit PySystem(CoxeterDescriptor d)
      : sys_(std::make_unique<CoxeterSystem>(std::move(d))), hecke_(std::make_unique<HeckeContext>(*sys_)) {}

  const CoxeterSystem& sys() const { return *sys_; }
  const HeckeContext& hecke() const { return *hecke_; }
  Element el(const std::string& w) const { return sys_->parse(w); }

  std::vector<std::string> words(const OrderIdeal& ideal) const {
    std::vector<std::string> out;
    for (Element e : ideal) out.push_back(sys_->format(e));
    return out;
  }

  OrderIdeal truncation(const std::optional<std::string>& top, std::optional<std::size_t> max_length) const {
    if (top && max_length) throw py::value_error("give either top or max_length");
    if (top) return sys_->enumerate_ideal(el(*top));
    return sys_->enumerate_ball(max_length);
  }

  py::dict vector(const WeightVector& v) const {
    py::dict d;
    std::vector<Element> support = v.support();
    std::sort(support.begin(), support.end(), [&](Element a, Element b) { return sys_->shortlex_less(a, b); });
    for (Element e : support) d[py::str(sys_->format(e))] = to_py(v.at(e));
    return d;
  }

  py::dict matrix(const WeightMatrix& m) const {
    py::dict cols;
    for (std::size_t c = 0; c < m.size(); ++c) {
      py::dict col;
      for (std::size_t r = 0; r < m.size(); ++r)
        if (!m.at(r, c).is_zero()) col[py::str(sys_->format(m.index()[r]))] = to_py(m.at(r, c));
      cols[py::str(sys_->format(m.index()[c]))] = col;
    }
    return cols;
  }

 private:
  std::unique_ptr<CoxeterSystem> sys_;
  std::unique_ptr<HeckeContext> hecke_;
};

py::dict report_dict(const CrossValidationReport& r) {
  py::dict d;
  d["ideal_size"] = r.ideal_size;
  d["subsets_checked"] = r.subsets_checked;
  d["passed"] = r.passed();
  d["ringel_inversion"] = r.ringel.inversion_ok;
  d["w0_formula"] = r.ringel.w0_formula_ok ? py::object(py::bool_(*r.ringel.w0_formula_ok)) : py::none();
  py::list disc;
  for (const auto& x : r.discrepancies) disc.append(py::make_tuple(x.check, x.object, x.stratum, x.detail));
  d["discrepancies"] = disc;
  return d;
}

}  // namespace

PYBIND11_MODULE(_mixtilt, m) {
  m.doc() = "Weight polynomials of mixed tilting sheaves (C++ core)";
  m.attr("__version__") = MIXTILT_VERSION;

  py::register_exception<CoxeterError>(m, "CoxeterError", PyExc_ValueError);
  py::register_exception<SelfDualityError>(m, "SelfDualityError", PyExc_ArithmeticError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<PySystem>(m, "CoxeterSystem")
      .def(py::init([](const std::string& label) { return PySystem(CoxeterDescriptor::parse(label)); }),
           py::arg("label"))
      .def_static("from_cartan",
                  [](CartanMatrix c) { return PySystem(CoxeterDescriptor::from_cartan(std::move(c))); })
      .def_property_readonly("rank", [](const PySystem& s) { return s.sys().rank(); })
      .def_property_readonly("is_finite", [](const PySystem& s) { return s.sys().is_finite(); })
      .def_property_readonly("cartan", [](const PySystem& s) { return s.sys().cartan(); })
      .def("normalize", [](const PySystem& s, const std::string& w) { return s.sys().format(s.el(w)); })
      .def("length", [](const PySystem& s, const std::string& w) { return s.sys().length(s.el(w)); })
      .def("descents",
           [](const PySystem& s, const std::string& w, const std::string& side) {
             std::vector<int> out;
             for (int i : s.sys().descents(s.el(w), parse_side(side))) out.push_back(s.sys().to_label(i));
             return out;
           },
           py::arg("word"), py::arg("side") = "left")
      .def("multiply",
           [](const PySystem& s, const std::string& w, int label, const std::string& side) {
             return s.sys().format(s.sys().multiply(s.el(w), s.sys().to_internal(label), parse_side(side)));
           },
           py::arg("word"), py::arg("generator"), py::arg("side") = "right")
      .def("bruhat_leq",
           [](const PySystem& s, const std::string& x, const std::string& y) {
             return s.sys().bruhat_leq(s.el(x), s.el(y));
           })
      .def("ball",
           [](const PySystem& s, std::optional<std::size_t> L) { return s.words(s.sys().enumerate_ball(L)); },
           py::arg("max_length") = py::none())
      .def("ideal", [](const PySystem& s, const std::string& top) { return s.words(s.sys().enumerate_ideal(s.el(top))); })
      .def("longest_element", [](const PySystem& s) { return s.sys().format(s.sys().longest_element()); })
      .def("coset_representatives",
           [](const PySystem& s, const std::string& top, std::vector<int> labels) {
             std::vector<int> subset;
             for (int l : labels) subset.push_back(s.sys().to_internal(l));
             ParabolicData p(s.sys(), s.sys().enumerate_ideal(s.el(top)), subset, Side::Left);
             std::vector<std::string> out;
             for (Element e : p.representatives()) out.push_back(s.sys().format(e));
             return out;
           })
      .def("r_poly", [](const PySystem& s, const std::string& x, const std::string& y) {
        return to_py(s.hecke().r_poly(s.el(x), s.el(y)));
      })
      .def("kl_h", [](const PySystem& s, const std::string& x, const std::string& y) {
        return to_py(s.hecke().kl_h(s.el(x), s.el(y)));
      })
      .def("kl_P", [](const PySystem& s, const std::string& x, const std::string& y) {
        return to_py(s.hecke().kl_P(s.el(x), s.el(y)));
      })
      .def("mu", [](const PySystem& s, const std::string& x, const std::string& y) {
        return to_py(s.hecke().mu(s.el(x), s.el(y)));
      })
      .def("tilting_vector",
           [](const PySystem& s, const std::string& alpha) {
             Element a = s.el(alpha);
             return s.vector(tilting_vector(s.hecke(), a, s.sys().enumerate_ideal(a)));
           })
      .def("ic_vector",
           [](const PySystem& s, const std::string& w) {
             Element a = s.el(w);
             return s.vector(s.hecke().ic_weight_vector(a, s.sys().enumerate_ideal(a)));
           })
      .def("tilting_matrix",
           [](const PySystem& s, std::optional<std::string> top, std::optional<std::size_t> L) {
             return s.matrix(tilting_matrix(s.hecke(), s.truncation(top, L)));
           },
           py::arg("top") = py::none(), py::arg("max_length") = py::none())
      .def("inverted_tilting_matrix",
           [](const PySystem& s, std::optional<std::string> top, std::optional<std::size_t> L) {
             return s.matrix(tilting_from_inversion(s.hecke(), s.truncation(top, L)));
           },
           py::arg("top") = py::none(), py::arg("max_length") = py::none())
      .def("pushforward",
           [](const PySystem& s, const std::string& alpha, std::vector<int> labels) -> py::object {
             Element a = s.el(alpha);
             std::vector<int> subset;
             for (int l : labels) subset.push_back(s.sys().to_internal(l));
             auto r = pushforward_tilting(s.hecke(), a, subset, s.sys().enumerate_ideal(a));
             if (r.zero) return py::none();
             return s.vector(r.vector);
           })
      .def("verify",
           [](const PySystem& s, std::optional<std::string> top, std::optional<std::size_t> L) {
             OrderIdeal ideal = s.truncation(top, L);
             return report_dict(cross_validate(s.hecke(), ideal, all_parabolic_subsets(s.sys())));
           },
           py::arg("top") = py::none(), py::arg("max_length") = py::none());

  m.def(
      "run",
      [](const std::string& task, const std::string& type, std::optional<std::size_t> max_length,
         std::optional<std::string> top, std::optional<std::pair<std::string, std::string>> pair,
         std::optional<std::string> parabolic, const std::string& format) {
        JobSpec job;
        job.task = parse_task(task);
        job.system = CoxeterDescriptor::parse(type);
        job.max_length = max_length;
        job.top = top;
        job.pair = pair;
        job.parabolic = parabolic;
        job.format = parse_format(format);
        RunResult r = run(job);
        return py::make_tuple(r.exit_code, r.output, r.diagnostics);
      },
      py::arg("task"), py::arg("type"), py::arg("max_length") = py::none(), py::arg("top") = py::none(),
      py::arg("pair") = py::none(), py::arg("parabolic") = py::none(), py::arg("format") = "json",
      "Run one CLI job in-process; returns (exit_code, output, diagnostics).");
}
