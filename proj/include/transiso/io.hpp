#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "transiso/group.hpp"
#include "transiso/rightloop.hpp"
#include "transiso/subgroup.hpp"
#include "transiso/transiso.hpp"

namespace transiso::io {

using nlohmann::json;

/// Parses {"kind": ..., ...}. Unknown kinds and missing parameters throw
/// InvalidArgument. A "comment" field is accepted and ignored.
GroupSpec spec_from_json(const json& j);
json spec_to_json(const GroupSpec& spec);

/// quaternion8, sym4, alt5, heisenberg3 and a few others.
std::optional<GroupSpec> named_spec(std::string_view name);

/// Accepts a shortcut name, inline JSON, or a path to a JSON file.
GroupSpec resolve_group_arg(const std::string& arg);

/// Order cap from TRANSISO_MAX_ORDER, or the library default.
BuildOptions build_options_from_env();

Group load_group(const std::string& arg, const BuildOptions& options);

/// Subgroup generated by a JSON array of element indices.
Subgroup parse_subgroup(const Group& g, const json& j);
Subgroup parse_subgroup(const Group& g, const std::string& text);

json subgroup_to_json(const Subgroup& h);
json loop_to_json(const RightLoop& loop);
json class_set_to_json(const LoopClassSet& set);
json report_to_json(const CompletenessReport& r);
json criterion_to_json(const CriterionReport& r);

/// DOT: nodes labelled by generators, solid edges for ADJACENT, dashed
/// labelled edges for UNKNOWN, NON_ADJACENT pairs omitted.
std::string graph_to_dot(const TransisoGraph& graph);
/// {group_label, d, vertices: [{elements, normal}], edges: [{i, j, status, rule, witness}]}
json graph_to_json(const TransisoGraph& graph);
std::string graph_to_text(const TransisoGraph& graph);

/// Rebuilds a graph over `g` from its JSON form. Vertices must be subgroups of
/// g; no decision is recomputed.
TransisoGraph graph_from_json(const Group& g, const json& j);

}  // namespace transiso::io
