#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "transiso/cli.hpp"
#include "transiso/error.hpp"
#include "transiso/io.hpp"
#include "transiso/transiso.hpp"

namespace py = pybind11;
using namespace transiso;

namespace {

using GroupPtr = std::shared_ptr<Group>;

// Subgroups and graphs point into their group, so every wrapper keeps it alive.
struct PySubgroup {
  GroupPtr group;
  Subgroup sub;
};

struct PyGraph {
  GroupPtr group;
  TransisoGraph graph;
};

GroupPtr make_group(const py::object& spec) {
  GroupSpec s;
  if (py::isinstance<py::str>(spec)) {
    s = io::resolve_group_arg(spec.cast<std::string>());
  } else {
    const std::string text = py::module_::import("json").attr("dumps")(spec).cast<std::string>();
    s = io::spec_from_json(io::json::parse(text));
  }
  return std::make_shared<Group>(build(s, io::build_options_from_env()));
}

py::object to_py(const io::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Subgroup subgroup_of(const GroupPtr& g, const std::vector<Element>& gens) {
  for (Element x : gens)
    if (x >= g->order()) throw InvalidArgument("element out of range");
  return Subgroup::generated_by(*g, gens);
}

GraphOptions options(std::uint64_t budget, const std::string& strategy, unsigned workers) {
  GraphOptions o;
  o.budget = budget;
  o.workers = workers;
  if (strategy == "auto")
    o.strategy = Strategy::Auto;
  else if (strategy == "exhaustive")
    o.strategy = Strategy::Exhaustive;
  else if (strategy == "structural")
    o.strategy = Strategy::Structural;
  else
    throw InvalidArgument("unknown strategy \"" + strategy + "\"");
  return o;
}

}  // namespace

PYBIND11_MODULE(_transiso, m) {
  m.doc() = "Transiso graphs of finite groups";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<OrderLimitExceeded>(m, "OrderLimitExceeded", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  m.attr("DEFAULT_BUDGET") = kDefaultBudget;

  py::class_<Group, std::shared_ptr<Group>>(m, "Group")
      .def(py::init([](const py::object& spec) { return make_group(spec); }),
           py::arg("spec"), "Build from a shortcut name, JSON text, spec file path or dict.")
      .def_property_readonly("order", &Group::order)
      .def_property_readonly("label", &Group::label)
      .def("mul", [](const Group& g, Element a, Element b) { return multiply(g, a, b); })
      .def("element_order", &Group::element_order)
      .def("is_abelian", [](const Group& g) { return is_abelian(g); })
      .def("__len__", &Group::order)
      .def("__repr__", [](const Group& g) { return "<Group " + g.label() + " of order " + std::to_string(g.order()) + ">"; });

  py::class_<PySubgroup>(m, "Subgroup")
      .def_property_readonly("elements", [](const PySubgroup& s) { return s.sub.elements().elements(); })
      .def_property_readonly("generators", [](const PySubgroup& s) { return s.sub.generators(); })
      .def_property_readonly("order", [](const PySubgroup& s) { return s.sub.order(); })
      .def_property_readonly("index", [](const PySubgroup& s) { return s.sub.index(); })
      .def_property_readonly("is_normal", [](const PySubgroup& s) { return s.sub.is_normal(); })
      .def("__repr__", [](const PySubgroup& s) {
        return "<Subgroup order " + std::to_string(s.sub.order()) + " " + io::json(s.sub.generators()).dump() + ">";
      });

  py::class_<PyGraph>(m, "Graph")
      .def_property_readonly("d", [](const PyGraph& g) { return g.graph.d; })
      .def_property_readonly("vertices",
                             [](const PyGraph& g) {
                               std::vector<PySubgroup> out;
                               for (const auto& v : g.graph.vertices) out.push_back({g.group, v});
                               return out;
                             })
      .def("status", [](const PyGraph& g, std::size_t i, std::size_t j) { return to_string(g.graph.status(i, j)); })
      .def("rule", [](const PyGraph& g, std::size_t i, std::size_t j) { return to_string(g.graph.edge(i, j).rule); })
      .def("count", [](const PyGraph& g, const std::string& s) {
        for (Adjacency a : {Adjacency::Adjacent, Adjacency::NonAdjacent, Adjacency::Unknown})
          if (s == to_string(a)) return g.graph.count(a);
        throw InvalidArgument("unknown status \"" + s + "\"");
      })
      .def("has_unknown", [](const PyGraph& g) { return g.graph.has_unknown(); })
      .def("verify", [](const PyGraph& g) { return verify_graph(g.graph); })
      .def("to_json", [](const PyGraph& g) { return to_py(io::graph_to_json(g.graph)); })
      .def("to_dot", [](const PyGraph& g) { return io::graph_to_dot(g.graph); })
      .def("report", [](const PyGraph& g) { return to_py(io::report_to_json(completeness(g.graph))); });

  m.def("subgroups_of_order", [](const GroupPtr& g, std::size_t d) {
    std::vector<PySubgroup> out;
    for (auto& h : subgroups_of_order(*g, d)) out.push_back({g, std::move(h)});
    return out;
  });
  m.def("subgroup", [](const GroupPtr& g, const std::vector<Element>& gens) { return PySubgroup{g, subgroup_of(g, gens)}; },
        py::arg("group"), py::arg("generators"));

  m.def(
      "build_graph",
      [](const GroupPtr& g, std::size_t d, std::uint64_t budget, const std::string& strategy, unsigned workers) {
        TransisoGraph gr;
        {
          py::gil_scoped_release release;
          gr = build_graph(*g, d, options(budget, strategy, workers));
        }
        return PyGraph{g, std::move(gr)};
      },
      py::arg("group"), py::arg("d"), py::arg("budget") = kDefaultBudget, py::arg("strategy") = "auto",
      py::arg("workers") = 1);

  m.def(
      "is_complete",
      [](const GroupPtr& g, std::size_t d, std::uint64_t budget, const std::string& strategy) {
        return to_py(io::report_to_json(is_complete(*g, d, options(budget, strategy, 1))));
      },
      py::arg("group"), py::arg("d"), py::arg("budget") = kDefaultBudget, py::arg("strategy") = "auto");

  m.def(
      "complete_for_all_divisors",
      [](const GroupPtr& g, std::uint64_t budget, const std::string& strategy) {
        std::map<std::size_t, std::string> out;
        for (const auto& [d, r] : complete_for_all_divisors(*g, options(budget, strategy, 1))) out[d] = to_string(r.verdict);
        return out;
      },
      py::arg("group"), py::arg("budget") = kDefaultBudget, py::arg("strategy") = "auto");

  m.def(
      "adjacency",
      [](const GroupPtr& g, const std::vector<Element>& h1, const std::vector<Element>& h2, std::uint64_t budget) {
        const Subgroup a = subgroup_of(g, h1), b = subgroup_of(g, h2);
        const EdgeDecision e = adjacency(*g, a, b, options(budget, "auto", 1));
        return py::make_tuple(to_string(e.status), to_string(e.rule));
      },
      py::arg("group"), py::arg("h1"), py::arg("h2"), py::arg("budget") = kDefaultBudget);

  m.def("all_nrts_generate",
        [](const GroupPtr& g, const std::vector<Element>& gens) { return all_nrts_generate(*g, subgroup_of(g, gens)); });
  m.def("nrt_count", [](const GroupPtr& g, const std::vector<Element>& gens) {
    return py::int_(py::str(nrt_count(subgroup_of(g, gens)).str()));
  });
  m.def(
      "loop_class_set",
      [](const GroupPtr& g, const std::vector<Element>& gens, std::uint64_t budget) {
        return to_py(io::class_set_to_json(loop_class_set(subgroup_of(g, gens), budget)));
      },
      py::arg("group"), py::arg("generators"), py::arg("budget") = kDefaultBudget);
  m.def("abelian_sylow_criterion", [](const GroupPtr& g) { return abelian_sylow_criterion(*g); });
  m.def(
      "pgroup_gamma_p_criterion",
      [](const GroupPtr& g, std::uint64_t p) { return to_py(io::criterion_to_json(pgroup_gamma_p_criterion(*g, p))); },
      py::arg("group"), py::arg("p"));
  m.def("isomorphic", [](const GroupPtr& a, const GroupPtr& b) { return isomorphic(*a, *b); });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> full{"transiso"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
