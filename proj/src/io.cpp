#include "transiso/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "transiso/error.hpp"

namespace transiso::io {

namespace {

std::uint32_t get_u32(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("group spec: missing \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 0xffffffffLL)
    throw InvalidArgument(std::string("group spec: \"") + key + "\" must be a non-negative integer");
  return v.get<std::uint32_t>();
}

GroupKind kind_from_string(const std::string& s) {
  static const std::pair<const char*, GroupKind> kinds[] = {
      {"cyclic", GroupKind::Cyclic},
      {"dihedral", GroupKind::Dihedral},
      {"symmetric", GroupKind::Symmetric},
      {"alternating", GroupKind::Alternating},
      {"quaternion8", GroupKind::Quaternion8},
      {"extraspecial_exp_p", GroupKind::ExtraspecialExpP},
      {"elementary_abelian", GroupKind::ElementaryAbelian},
      {"direct_product", GroupKind::DirectProduct},
      {"cayley", GroupKind::Cayley},
      {"perm", GroupKind::Perm},
  };
  for (const auto& [name, kind] : kinds)
    if (s == name) return kind;
  throw InvalidArgument("group spec: unknown kind \"" + s + "\"");
}

std::vector<std::vector<std::uint32_t>> get_matrix(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw InvalidArgument(std::string("group spec: \"") + key + "\" must be an array of arrays");
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& row : j.at(key)) {
    if (!row.is_array()) throw InvalidArgument(std::string("group spec: \"") + key + "\" rows must be arrays");
    std::vector<std::uint32_t> r;
    for (const auto& v : row) {
      if (!v.is_number_integer() || v.get<long long>() < 0)
        throw InvalidArgument(std::string("group spec: \"") + key + "\" entries must be non-negative integers");
      r.push_back(v.get<std::uint32_t>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string generator_label(const Subgroup& h) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < h.generators().size(); ++i) os << (i ? "," : "") << h.generators()[i];
  os << ">";
  return os.str();
}

json witness_to_json(const EdgeWitness& w) {
  switch (w.kind) {
    case EdgeWitness::Kind::None: return nullptr;
    case EdgeWitness::Kind::Automorphism: return {{"kind", "automorphism"}, {"map", w.automorphism}};
    case EdgeWitness::Kind::Loops: return {{"kind", "loops"}, {"nrt1", w.nrt1}, {"nrt2", w.nrt2}};
  }
  return nullptr;
}

EdgeWitness witness_from_json(const json& j) {
  EdgeWitness w;
  if (j.is_null()) return w;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "automorphism") {
    w.kind = EdgeWitness::Kind::Automorphism;
    w.automorphism = j.at("map").get<std::vector<Element>>();
  } else if (kind == "loops") {
    w.kind = EdgeWitness::Kind::Loops;
    w.nrt1 = j.at("nrt1").get<std::vector<Element>>();
    w.nrt2 = j.at("nrt2").get<std::vector<Element>>();
  } else {
    throw InvalidArgument("graph json: unknown witness kind \"" + kind + "\"");
  }
  return w;
}

Adjacency adjacency_from_string(const std::string& s) {
  for (Adjacency a : {Adjacency::Adjacent, Adjacency::NonAdjacent, Adjacency::Unknown})
    if (s == to_string(a)) return a;
  throw InvalidArgument("graph json: unknown status \"" + s + "\"");
}

Rule rule_from_string(const std::string& s) {
  for (Rule r : {Rule::None, Rule::NormalQuotients, Rule::Automorphism, Rule::ComplementGroup,
                 Rule::CorefreeGenerating, Rule::ExhaustiveLoops, Rule::SampledLoops})
    if (s == to_string(r)) return r;
  throw InvalidArgument("graph json: unknown rule \"" + s + "\"");
}

}  // namespace

GroupSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("group spec must be a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw InvalidArgument("group spec: missing \"kind\"");
  GroupSpec s;
  switch (kind_from_string(j.at("kind").get<std::string>())) {
    case GroupKind::Cyclic: s = GroupSpec::cyclic(get_u32(j, "n")); break;
    case GroupKind::Dihedral: s = GroupSpec::dihedral(get_u32(j, "n")); break;
    case GroupKind::Symmetric: s = GroupSpec::symmetric(get_u32(j, "n")); break;
    case GroupKind::Alternating: s = GroupSpec::alternating(get_u32(j, "n")); break;
    case GroupKind::Quaternion8: s = GroupSpec::quaternion8(); break;
    case GroupKind::ExtraspecialExpP: s = GroupSpec::extraspecial_exp_p(get_u32(j, "p")); break;
    case GroupKind::ElementaryAbelian:
      s = GroupSpec::elementary_abelian(get_u32(j, "p"), get_u32(j, "rank"));
      break;
    case GroupKind::DirectProduct: {
      if (!j.contains("factors") || !j.at("factors").is_array() || j.at("factors").empty())
        throw InvalidArgument("group spec: direct_product needs a non-empty \"factors\" array");
      std::vector<GroupSpec> factors;
      for (const auto& f : j.at("factors")) factors.push_back(spec_from_json(f));
      s = GroupSpec::direct_product(std::move(factors));
      break;
    }
    case GroupKind::Cayley: s = GroupSpec::cayley(get_matrix(j, "table")); break;
    case GroupKind::Perm: {
      auto gens = get_matrix(j, "generators");
      std::uint32_t degree = j.contains("degree") ? get_u32(j, "degree")
                                                  : (gens.empty() ? 0u : static_cast<std::uint32_t>(gens[0].size()));
      s = GroupSpec::perm(degree, std::move(gens));
      break;
    }
  }
  if (j.contains("label")) s.label = j.at("label").get<std::string>();
  return s;
}

json spec_to_json(const GroupSpec& spec) {
  json j = {{"kind", to_string(spec.kind)}};
  switch (spec.kind) {
    case GroupKind::Cyclic:
    case GroupKind::Dihedral:
    case GroupKind::Symmetric:
    case GroupKind::Alternating: j["n"] = spec.n; break;
    case GroupKind::Quaternion8: break;
    case GroupKind::ExtraspecialExpP: j["p"] = spec.p; break;
    case GroupKind::ElementaryAbelian:
      j["p"] = spec.p;
      j["rank"] = spec.rank;
      break;
    case GroupKind::DirectProduct:
      j["factors"] = json::array();
      for (const auto& f : spec.factors) j["factors"].push_back(spec_to_json(f));
      break;
    case GroupKind::Cayley: j["table"] = spec.table; break;
    case GroupKind::Perm:
      j["degree"] = spec.degree;
      j["generators"] = spec.generators;
      break;
  }
  if (!spec.label.empty()) j["label"] = spec.label;
  return j;
}

std::optional<GroupSpec> named_spec(std::string_view name) {
  if (name == "quaternion8" || name == "q8") return GroupSpec::quaternion8();
  if (name == "heisenberg3") return GroupSpec::extraspecial_exp_p(3);
  if (name == "sym3") return GroupSpec::symmetric(3);
  if (name == "sym4") return GroupSpec::symmetric(4);
  if (name == "sym5") return GroupSpec::symmetric(5);
  if (name == "alt4") return GroupSpec::alternating(4);
  if (name == "alt5") return GroupSpec::alternating(5);
  return std::nullopt;
}

GroupSpec resolve_group_arg(const std::string& arg) {
  if (auto s = named_spec(arg)) return *s;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') {
    try {
      return spec_from_json(json::parse(arg));
    } catch (const json::exception& e) {
      throw InvalidArgument(std::string("group spec: ") + e.what());
    }
  }
  std::filesystem::path path(arg);
  if (!std::filesystem::exists(path)) throw InvalidArgument("unknown group \"" + arg + "\"");
  try {
    return spec_from_json(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

BuildOptions build_options_from_env() {
  BuildOptions o;
  if (const char* env = std::getenv("TRANSISO_MAX_ORDER"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw InvalidArgument("TRANSISO_MAX_ORDER must be a positive integer");
    o.max_order = static_cast<std::size_t>(v);
  }
  return o;
}

Group load_group(const std::string& arg, const BuildOptions& options) {
  return build(resolve_group_arg(arg), options);
}

Subgroup parse_subgroup(const Group& g, const json& j) {
  if (!j.is_array()) throw InvalidArgument("subgroup must be a JSON array of element indices");
  std::vector<Element> gens;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<unsigned long long>() >= g.order())
      throw InvalidArgument("subgroup: element index out of range");
    gens.push_back(v.get<Element>());
  }
  return Subgroup::generated_by(g, gens);
}

Subgroup parse_subgroup(const Group& g, const std::string& text) {
  try {
    return parse_subgroup(g, json::parse(text));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("subgroup: ") + e.what());
  }
}

json subgroup_to_json(const Subgroup& h) {
  return {{"order", h.order()},
          {"elements", h.elements().elements()},
          {"generators", h.generators()},
          {"normal", h.is_normal()}};
}

json loop_to_json(const RightLoop& loop) {
  json rows = json::array();
  for (std::size_t x = 0; x < loop.size; ++x)
    rows.push_back(std::vector<Element>(loop.table.begin() + x * loop.size, loop.table.begin() + (x + 1) * loop.size));
  return rows;
}

json class_set_to_json(const LoopClassSet& set) {
  json classes = json::array();
  for (const auto& c : set.representatives) {
    classes.push_back({{"fingerprint", c.fingerprint.elements},
                       {"table", loop_to_json(c.loop)},
                       {"group_loop", is_group_loop(c.loop)},
                       {"witness", c.witness},
                       {"members", c.members}});
  }
  return {{"subgroup", subgroup_to_json(set.subgroup)},
          {"index", set.subgroup.index()},
          {"nrt_count", nrt_count(set.subgroup).str()},
          {"exhaustive", set.exhaustive},
          {"source", to_string(set.source)},
          {"nrts_examined", set.nrts_examined},
          {"classes", std::move(classes)}};
}

json report_to_json(const CompletenessReport& r) {
  json rules = json::object();
  for (const auto& [rule, n] : r.rule_counts) rules[to_string(rule)] = n;
  auto pairs = [](const auto& v) {
    json a = json::array();
    for (const auto& [i, j] : v) a.push_back({i, j});
    return a;
  };
  return {{"d", r.d},
          {"verdict", to_string(r.verdict)},
          {"vertices", r.vertices},
          {"non_edges", pairs(r.non_edges)},
          {"unknown", pairs(r.unknown)},
          {"rules", std::move(rules)}};
}

json criterion_to_json(const CriterionReport& r) {
  json j = {{"verdict", to_string(r.verdict)},
            {"reason", r.reason},
            {"order_p_subgroups", r.order_p_subgroups},
            {"central_order_p_subgroups", r.central_order_p_subgroups}};
  j["failing_h"] = r.failing_h ? json(r.failing_h->elements().elements()) : json(nullptr);
  j["failing_l"] = r.failing_l ? json(r.failing_l->elements().elements()) : json(nullptr);
  json pairs = json::array();
  for (const auto& [h, k] : r.complements)
    pairs.push_back({{"h", h.generators()}, {"k", k.generators()}});
  j["complements"] = std::move(pairs);
  return j;
}

std::string graph_to_dot(const TransisoGraph& graph) {
  std::ostringstream os;
  os << "graph G {\n";
  os << "  label=\"" << graph.group->label() << ", d=" << graph.d << "\";\n";
  for (std::size_t i = 0; i < graph.vertices.size(); ++i)
    os << "  v" << i << " [label=\"" << generator_label(graph.vertices[i]) << "\"];\n";
  for (std::size_t i = 0; i < graph.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < graph.vertices.size(); ++j) {
      const auto& e = graph.edge(i, j);
      if (e.status == Adjacency::Adjacent)
        os << "  v" << i << " -- v" << j << ";\n";
      else if (e.status == Adjacency::Unknown)
        os << "  v" << i << " -- v" << j << " [style=dashed, label=\"?\"];\n";
    }
  os << "}\n";
  return os.str();
}

json graph_to_json(const TransisoGraph& graph) {
  json vertices = json::array();
  for (const auto& v : graph.vertices)
    vertices.push_back({{"elements", v.elements().elements()}, {"normal", v.is_normal()}});
  json edges = json::array();
  for (std::size_t i = 0; i < graph.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < graph.vertices.size(); ++j) {
      const auto& e = graph.edge(i, j);
      edges.push_back({{"i", i},
                       {"j", j},
                       {"status", to_string(e.status)},
                       {"rule", to_string(e.rule)},
                       {"witness", witness_to_json(e.witness)}});
    }
  return {{"group_label", graph.group->label()},
          {"group_order", graph.group->order()},
          {"d", graph.d},
          {"vertices", std::move(vertices)},
          {"edges", std::move(edges)}};
}

std::string graph_to_text(const TransisoGraph& graph) {
  std::ostringstream os;
  os << graph.group->label() << " (order " << graph.group->order() << "), d = " << graph.d << ": "
     << graph.vertices.size() << " vertices\n";
  for (std::size_t i = 0; i < graph.vertices.size(); ++i)
    os << "  v" << i << " " << generator_label(graph.vertices[i]) << (graph.vertices[i].is_normal() ? " normal" : "")
       << "\n";
  for (std::size_t i = 0; i < graph.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < graph.vertices.size(); ++j) {
      const auto& e = graph.edge(i, j);
      os << "  v" << i << " v" << j << " " << to_string(e.status) << " (" << to_string(e.rule) << ")\n";
    }
  return os.str();
}

TransisoGraph graph_from_json(const Group& g, const json& j) {
  try {
    TransisoGraph graph;
    graph.group = &g;
    graph.d = j.at("d").get<std::size_t>();
    if (j.contains("group_order") && j.at("group_order").get<std::size_t>() != g.order())
      throw InvalidArgument("graph json: group order mismatch");
    for (const auto& v : j.at("vertices")) {
      ElementSet s(g.order());
      for (const auto& e : v.at("elements")) {
        const auto x = e.get<std::size_t>();
        if (x >= g.order()) throw InvalidArgument("graph json: element out of range");
        s.insert(static_cast<Element>(x));
      }
      graph.vertices.emplace_back(g, std::move(s));
      if (graph.vertices.back().order() != graph.d) throw InvalidArgument("graph json: vertex order differs from d");
    }
    const std::size_t n = graph.vertices.size();
    graph.decisions.resize(n * (n - (n > 0)) / 2);
    std::vector<bool> seen(graph.decisions.size(), false);
    for (const auto& e : j.at("edges")) {
      const std::size_t k = graph.pair_index(e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>());
      seen[k] = true;
      auto& d = graph.decisions[k];
      d.status = adjacency_from_string(e.at("status").get<std::string>());
      d.rule = rule_from_string(e.at("rule").get<std::string>());
      d.witness = witness_from_json(e.at("witness"));
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InvalidArgument("graph json: missing edges");
    return graph;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("graph json: ") + e.what());
  }
}

}  // namespace transiso::io
