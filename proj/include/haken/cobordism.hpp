#pragma once

// Plan generators: the seven-piece lantern assembly bounding a single-twist
// torus bundle, the twist-count recursions for torus and surface bundles,
// and the split-and-reglue pipeline for move sequences.

#include "haken/plan.hpp"

#include <optional>
#include <string>
#include <vector>

namespace haken {

/// W7..W1 glued into a plan with boundary T2(L^chirality).
Plan gen_lantern_assembly(int chirality);

/// Plan bounding T2(eval(w)); 8k-1 blocks for k single-twist letters.
Plan plan_torus_bundle(const TorusTwistWord& w);

/// Plan bounding Sigma(w) over a chart of genus >= 2; 10k-1 blocks.
Plan plan_surface_bundle(const ChartPtr& chart, const TwistWord& w);

/// Split-and-reglue step M_i -> M_{i+1}. twist is a torus word when
/// fiber_genus is 1 and a twist word over chart otherwise.
struct MoveStep {
  std::string from, to;
  int fiber_genus = 1;
  std::string twist;
  std::optional<std::string> chart;  // defaults to std<fiber_genus>
  friend bool operator==(const MoveStep&, const MoveStep&) = default;
};

/// Steps chaining M = M_0 -> ... -> M_n, with M_n a product of the given
/// fiber genus.
struct MoveSequence {
  std::vector<MoveStep> steps;
  int product_genus = 0;
  friend bool operator==(const MoveSequence&, const MoveSequence&) = default;
};

/// Plan with residual {M(+)} or {M(+), M'(+)}. Charts named in the steps
/// are resolved through the registry.
Plan plan_cobordism(const MoveSequence& seq, const std::optional<MoveSequence>& other,
                    const ChartRegistry& charts = {});

}  // namespace haken
