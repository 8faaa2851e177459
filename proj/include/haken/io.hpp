#pragma once

// JSON files for charts, plans and move sequences, plus DOT export.
// Output is deterministic: object keys sorted, arrays in plan order.

#include "haken/cobordism.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace haken {

using Json = nlohmann::json;

Json chart_to_json(const SurfaceChart& chart);
ChartPtr chart_from_json(const Json& j);
ChartPtr read_chart(std::string_view text);

Json label_to_json(const ManifoldLabel& label);
ManifoldLabel label_from_json(const Json& j, const ChartRegistry& charts);

Json witness_to_json(const GlueWitness& w);
GlueWitness witness_from_json(const Json& j);

/// Non-builtin charts referenced by the plan are embedded under "charts".
Json plan_to_json(const Plan& plan);
/// Charts embedded in the document are added to a copy of the registry.
Plan plan_from_json(const Json& j, const ChartRegistry& charts = {});

std::string write_plan(const Plan& plan);
Plan read_plan(std::string_view text, const ChartRegistry& charts = {});

/// {"steps": [{from, to, fiber_genus, twist[, chart]}, ..., {product_of_genus: g}]}
Json move_sequence_to_json(const MoveSequence& seq);
/// Accepts the object form above or the bare step array. Embedded "charts"
/// are registered into charts.
MoveSequence move_sequence_from_json(const Json& j, ChartRegistry* charts = nullptr);
MoveSequence read_move_sequence(std::string_view text, ChartRegistry* charts = nullptr);

/// One node per block, one edge per gluing labelled with its witness tier,
/// residual slots as edges to a boundary node.
std::string plan_to_dot(const Plan& plan);

}  // namespace haken
