#pragma once

// Assembly plans: blocks with labelled boundary slots, gluings with
// witnesses, and a declared residual boundary. The verifier recomputes every
// slot from block parameters and shares nothing with the generators.

#include "haken/bundles.hpp"

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace haken {

struct Plan;

struct ProductParams {
  ManifoldLabel label;  // S(g); slots S(g^-1), S(g)
  friend bool operator==(const ProductParams&, const ProductParams&) = default;
};

struct ReglueTorusParams {
  Mat2 a, b;  // slots T2(a^-1), T2(b), T2(a b)
  friend bool operator==(const ReglueTorusParams&, const ReglueTorusParams&) = default;
};

/// Which bundle E records the performed twist.
enum class SplitKind {
  Torus,  // E = T2(L^e), the torus-fiber form
  Fiber,  // E = Sigma(t_c^e) over the same chart
};

struct ReglueSurfaceParams {
  ChartPtr chart;
  TwistWord base;
  std::string curve;
  int exponent = 1;
  SplitKind split = SplitKind::Torus;
  friend bool operator==(const ReglueSurfaceParams& x, const ReglueSurfaceParams& y) {
    return x.chart->name() == y.chart->name() && x.base == y.base && x.curve == y.curve &&
           x.exponent == y.exponent && x.split == y.split;
  }
};

struct LanternPieceParams {
  int index = 7;  // W_index, 1..7
  int chirality = 1;
  friend bool operator==(const LanternPieceParams&, const LanternPieceParams&) = default;
};

struct CapProductParams {
  Fiber fiber;
  friend bool operator==(const CapProductParams&, const CapProductParams&) = default;
};

struct CapBridgeParams {
  Fiber left, right;
  friend bool operator==(const CapBridgeParams&, const CapBridgeParams&) = default;
};

/// One split-and-reglue move M_i -> M_{i+1} along a fiber, with E the bundle
/// of the regluing twist. The last move of a sequence lands on a product.
struct ReglueOpaqueParams {
  std::string from;
  std::variant<std::string, int> to;  // next opaque manifold, or product fiber genus
  int fiber_genus = 1;
  ManifoldLabel bundle;
  friend bool operator==(const ReglueOpaqueParams&, const ReglueOpaqueParams&) = default;
};

struct SubPlanRefParams {
  std::shared_ptr<const Plan> plan;
  friend bool operator==(const SubPlanRefParams& x, const SubPlanRefParams& y);
};

using BlockParams = std::variant<ProductParams, ReglueTorusParams, ReglueSurfaceParams, LanternPieceParams,
                                 CapProductParams, CapBridgeParams, ReglueOpaqueParams, SubPlanRefParams>;

std::string kind_name(const BlockParams& params);

/// Slot list dictated by the block kind. Throws InvalidPlan on parameters
/// outside the kind's domain (e.g. a lantern index of 9).
std::vector<BoundarySlot> expected_slots(const BlockParams& params);

struct Block {
  std::string id;
  BlockParams params;
  std::vector<BoundarySlot> slots;

  const BoundarySlot* slot(std::string_view slot_id) const;
  friend bool operator==(const Block&, const Block&) = default;
};

/// Block with slots filled from its parameters.
Block make_block(std::string id, BlockParams params);

struct SlotRef {
  std::string block, slot;
  friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

std::string to_string(const SlotRef& ref);

struct Gluing {
  SlotRef a, b;
  GlueWitness witness;
  friend bool operator==(const Gluing&, const Gluing&) = default;
};

struct Plan {
  std::vector<Block> blocks;
  std::vector<Gluing> gluings;
  std::vector<SlotRef> residual;
  std::vector<ManifoldLabel> target;
  std::map<SlotRef, GlueWitness> relabel;

  const Block* block(std::string_view id) const;
  const BoundarySlot* slot(const SlotRef& ref) const;

  std::size_t slot_count() const;
  /// Blocks with SubPlanRef expanded recursively.
  std::size_t flat_block_count() const;

  friend bool operator==(const Plan&, const Plan&) = default;
};

/// Whether the physical residual label P may be declared as target T under
/// relabel witness w: accepted iff match_gluing(P, T^-1, w) accepts.
GlueResult check_relabel(const ManifoldLabel& physical, const ManifoldLabel& target, const GlueWitness& w);

/// Assignment of residual slots to target labels, honouring relabel
/// witnesses; empty when no perfect matching exists. assignment[i] is the
/// target index of residual[i].
std::vector<std::size_t> match_residual(const Plan& plan);

struct Pairing {
  SlotRef left, right;  // residual slots of the first and second plan
  GlueWitness witness;
};

/// Disjoint union with block ids prefixed, plus gluings for each pairing.
/// Throws InvalidPlan if a pairing names a non-residual slot,
/// InapplicableWitness / CheckFailed if a pairing witness fails.
Plan compose(const Plan& p1, const Plan& p2, const std::vector<Pairing>& pairing, const std::string& prefix1 = "p1.",
             const std::string& prefix2 = "p2.");

/// Wraps a plan as a single SubPlanRef block whose slots are its residual.
Block wrap_plan(std::string id, const Plan& plan);

}  // namespace haken
