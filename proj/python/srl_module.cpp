#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "srl/budget.hpp"
#include "srl/fourier.hpp"
#include "srl/generators.hpp"
#include "srl/io.hpp"
#include "srl/regularity.hpp"
#include "srl/stability.hpp"

namespace py = pybind11;
using namespace srl;

namespace {

py::object to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list l;
      for (const auto& v : j) l.append(to_py(v));
      return l;
    }
    default: {
      py::dict d;
      for (auto it = j.begin(); it != j.end(); ++it) d[py::str(it.key())] = to_py(it.value());
      return d;
    }
  }
}

using Digits = std::vector<std::uint8_t>;

std::vector<GroupElement> elements(const GroupContext& ctx, const std::vector<Digits>& v) {
  std::vector<GroupElement> out;
  for (const auto& d : v) out.emplace_back(ctx, d);
  return out;
}

Index element_index(const GroupContext& ctx, const Digits& d) { return GroupElement(ctx, d).index(); }

OrderWitness witness(const GroupContext& ctx, const std::vector<Digits>& a, const std::vector<Digits>& b) {
  return {elements(ctx, a), elements(ctx, b)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stable arithmetic regularity over F_p^n";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<GroupContext>(m, "GroupContext")
      .def(py::init(&GroupContext::make), py::arg("p"), py::arg("n"))
      .def_property_readonly("p", &GroupContext::p)
      .def_property_readonly("n", &GroupContext::n)
      .def_property_readonly("order", &GroupContext::order)
      .def("encode", &element_index, py::arg("digits"))
      .def("decode", [](const GroupContext& c, Index i) { return decode(c, i).digits(); }, py::arg("index"))
      .def("__repr__", [](const GroupContext& c) {
        return "GroupContext(p=" + std::to_string(c.p()) + ", n=" + std::to_string(c.n()) + ")";
      });

  py::class_<Subspace>(m, "Subspace")
      .def(py::init([](const GroupContext& ctx, const std::vector<Digits>& rows) {
             std::vector<Functional> f;
             for (const auto& r : rows) f.emplace_back(ctx, r);
             return Subspace::from_annihilator(ctx, f);
           }),
           py::arg("context"), py::arg("annihilator") = std::vector<Digits>{})
      .def_property_readonly("codim", &Subspace::codim)
      .def_property_readonly("size", &Subspace::size)
      .def_property_readonly("annihilator", [](const Subspace& H) {
        std::vector<Digits> out;
        for (const auto& r : H.annihilator()) out.push_back(r.digits());
        return out;
      })
      .def("contains", [](const Subspace& H, const Digits& x) { return H.contains(GroupElement(H.context(), x)); })
      .def("transversal", [](const Subspace& H) {
        std::vector<Digits> out;
        for (const auto& g : H.transversal()) out.push_back(g.digits());
        return out;
      })
      .def("intersect_hyperplane",
           [](const Subspace& H, const Digits& t) { return H.intersect_hyperplane(Functional(H.context(), t)); })
      .def("__eq__", [](const Subspace& a, const Subspace& b) { return a == b; });

  py::class_<SetIndicator>(m, "SetIndicator")
      .def(py::init([](const GroupContext& ctx, const std::vector<Digits>& members) {
             auto v = elements(ctx, members);
             return SetIndicator::from_elements(ctx, v);
           }),
           py::arg("context"), py::arg("members") = std::vector<Digits>{})
      .def_static("from_indices", [](const GroupContext& ctx, const std::vector<Index>& idx) {
        return SetIndicator::from_indices(ctx, idx);
      })
      .def_static("of_subspace", &SetIndicator::of_subspace)
      .def_property_readonly("context", &SetIndicator::context)
      .def_property_readonly("size", &SetIndicator::size)
      .def_property_readonly("source", &SetIndicator::source)
      .def("__len__", &SetIndicator::size)
      .def("__contains__", [](const SetIndicator& A, const Digits& x) { return A.contains(GroupElement(A.context(), x)); })
      .def("indices", &SetIndicator::elements)
      .def("complement", &SetIndicator::complement)
      .def("translate", [](const SetIndicator& A, const Digits& g) { return A.translate(GroupElement(A.context(), g)); })
      .def("__eq__", [](const SetIndicator& a, const SetIndicator& b) { return a == b; });

  m.def("sumset", &sumset);
  m.def("random_set", &random_set, py::arg("context"), py::arg("rate"), py::arg("seed"));
  m.def("random_subspace", &random_subspace, py::arg("context"), py::arg("codim"), py::arg("seed"));
  m.def("gen_union_of_cosets", &gen_union_of_cosets, py::arg("H"), py::arg("count"), py::arg("seed"));
  m.def(
      "gen_example",
      [](const std::string& name, unsigned p, unsigned n, std::uint64_t seed) {
        auto f = gen_example(name, p, n, seed);
        return py::make_tuple(f.set, to_py(to_json(f.spec)));
      },
      py::arg("name"), py::arg("p"), py::arg("n"), py::arg("seed") = 0);

  m.def(
      "dft",
      [](const GroupContext& ctx, const std::vector<Complex>& values) { return dft(DenseFunction{ctx, values}).values; },
      py::arg("context"), py::arg("values"));
  m.def(
      "inverse_dft",
      [](const GroupContext& ctx, const std::vector<Complex>& values) {
        return inverse_dft(Spectrum{ctx, values}).values;
      },
      py::arg("context"), py::arg("spectrum"));
  m.def(
      "balanced_function",
      [](const SetIndicator& A, const Subspace& H, const Digits& y) {
        return balanced_function(A, H, element_index(A.context(), y)).values;
      },
      py::arg("A"), py::arg("H"), py::arg("y"));

  m.def(
      "verify_order_witness",
      [](const SetIndicator& A, const std::vector<Digits>& a, const std::vector<Digits>& b) {
        return verify_order_witness(A, witness(A.context(), a, b));
      },
      py::arg("A"), py::arg("a"), py::arg("b"));
  m.def(
      "verify_tree_witness",
      [](const SetIndicator& A, unsigned d, const std::map<std::string, Digits>& leaves,
         const std::map<std::string, Digits>& nodes) {
        TreeWitness w;
        w.height = d;
        for (const auto& [k, v] : leaves) w.leaves.emplace(k, GroupElement(A.context(), v));
        for (const auto& [k, v] : nodes) w.nodes.emplace(k == "-" ? "" : k, GroupElement(A.context(), v));
        return verify_tree_witness(A, w);
      },
      py::arg("A"), py::arg("d"), py::arg("leaves"), py::arg("nodes"));
  m.def(
      "find_order_witness",
      [](const SetIndicator& A, unsigned k, std::uint64_t effort, unsigned threads) {
        const auto r = find_order_witness(A, k, {effort, threads});
        py::dict d;
        d["status"] = to_string(r.status);
        d["nodes"] = r.nodes;
        d["witness"] = r.witness ? to_py(to_json(*r.witness)) : py::none();
        return d;
      },
      py::arg("A"), py::arg("k"), py::arg("effort") = 100'000'000, py::arg("threads") = 1);
  m.def(
      "stability_number",
      [](const SetIndicator& A, unsigned k_max, std::uint64_t effort, unsigned threads) {
        const auto r = stability_number(A, k_max, {effort, threads});
        py::dict d;
        d["value"] = r.value;
        d["exact"] = r.exact;
        d["nodes"] = r.nodes;
        return d;
      },
      py::arg("A"), py::arg("k_max"), py::arg("effort") = 100'000'000, py::arg("threads") = 1);
  m.def(
      "cover_or_witness",
      [](const SetIndicator& A, unsigned k) {
        const auto r = cover_or_witness(A, k);
        py::dict d;
        if (r.is_cover()) {
          d["kind"] = "cover";
          d["certificate"] = to_py(to_json(std::get<CoverCertificate>(r.certificate)));
        } else {
          d["kind"] = "witness";
          d["side"] = to_string(r.witness_side);
          d["certificate"] = to_py(to_json(std::get<OrderWitness>(r.certificate)));
        }
        return d;
      },
      py::arg("A"), py::arg("k"));

  m.def(
      "uniformity",
      [](const SetIndicator& A, const Subspace& H, const Digits& y, double eps) {
        return to_py(to_json(uniformity(A, H, element_index(A.context(), y), eps)));
      },
      py::arg("A"), py::arg("H"), py::arg("y"), py::arg("epsilon"));
  m.def(
      "total_uniformity",
      [](const SetIndicator& A, const Subspace& H, double eps) { return to_py(to_json(total_uniformity(A, H, eps))); },
      py::arg("A"), py::arg("H"), py::arg("epsilon"));
  m.def(
      "goodness", [](const SetIndicator& A, const Subspace& H, double eps) { return to_py(to_json(goodness(A, H, eps))); },
      py::arg("A"), py::arg("H"), py::arg("epsilon"));
  m.def(
      "good_subspace_search",
      [](const SetIndicator& A, double eps, unsigned max_codim) {
        const auto r = good_subspace_search(A, eps, max_codim);
        if (const auto* g = std::get_if<GoodSubspace>(&r)) return py::tuple(py::make_tuple(g->H, to_py(to_json(*g))));
        return py::tuple(py::make_tuple(py::none(), to_py(to_json(std::get<FailureTrace>(r)))));
      },
      py::arg("A"), py::arg("epsilon"), py::arg("max_codim"));
  m.def(
      "dichotomy_tree_builder",
      [](const SetIndicator& A, unsigned k, double mu, unsigned max_codim, std::optional<double> working_epsilon,
         std::optional<double> theta, std::optional<unsigned> height) {
        const auto r = dichotomy_tree_builder(A, k, mu, max_codim, {working_epsilon, theta, height});
        py::dict d;
        if (const auto* g = std::get_if<GoodSubspace>(&r)) {
          d["kind"] = "good_subspace";
          d["report"] = to_py(to_json(*g));
        } else if (const auto* t = std::get_if<TreeResult>(&r)) {
          d["kind"] = "tree";
          d["witness"] = to_py(to_json(t->witness));
          d["report"] = to_py(to_json(t->info));
        } else {
          d["kind"] = "inconclusive";
          d["report"] = to_py(to_json(std::get<Inconclusive>(r)));
        }
        return d;
      },
      py::arg("A"), py::arg("k"), py::arg("mu"), py::arg("max_codim"), py::arg("working_epsilon") = py::none(),
      py::arg("theta") = py::none(), py::arg("height") = py::none());
  m.def(
      "coset_approximation",
      [](const SetIndicator& A, const Subspace& H, double eps) {
        const auto r = coset_approximation(A, H, eps);
        return py::make_tuple(r.X, to_py(to_json(r)));
      },
      py::arg("A"), py::arg("H"), py::arg("epsilon"));
  m.def(
      "cayley_partition_verify",
      [](const SetIndicator& A, const Subspace& H, double eps) {
        return to_py(to_json(cayley_partition_verify(A, H, eps)));
      },
      py::arg("A"), py::arg("H"), py::arg("epsilon"));
  m.def(
      "budget_eval",
      [](unsigned k, unsigned l, double mu, double eps) { return to_py(to_json(budget_eval(k, l, mu, eps))); },
      py::arg("k"), py::arg("l") = 2, py::arg("mu") = 0.1, py::arg("epsilon") = 0.1);
}
