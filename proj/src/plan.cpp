#include "haken/plan.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace haken {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidPlan, what); }

TwistWord theta(int i) {
  static const std::vector<LetterSequence> thetas = theta_sequence();
  return TwistWord(thetas.at(static_cast<std::size_t>(7 - i)));
}

std::vector<BoundarySlot> lantern_slots(const LanternPieceParams& p) {
  if (p.index < 1 || p.index > 7) invalid("lantern piece index " + std::to_string(p.index) + " outside 1..7");
  if (p.chirality != 1 && p.chirality != -1) invalid("lantern chirality must be +1 or -1");
  const ChartPtr chart = lantern_chart();
  auto sigma = [&](const TwistWord& w) { return surface_label(chart, w); };
  auto phi = [](int e) { return torus_label(Mat2::twist_l(Integer(e))); };
  ManifoldLabel aux;
  switch (p.index) {
    case 7: aux = phi(1); break;
    case 6: aux = phi(-1); break;
    case 5: aux = phi(1); break;
    case 4: aux = sigma(TwistWord::twist("beta", -1)); break;
    case 3: aux = sigma(TwistWord::twist("2", 1)); break;
    case 2: aux = sigma(TwistWord::twist("gamma", -1)); break;
    default: aux = sigma(TwistWord::twist("1", 1)); break;
  }
  std::vector<BoundarySlot> slots = {
      {"prev", sigma(theta(p.index).inverse())},
      {"next", sigma(theta(p.index - 1))},
      {"aux", aux},
  };
  if (p.chirality < 0) {
    for (auto& s : slots) s.label = inverse(s.label);
  }
  return slots;
}

void check_fiber(const Fiber& f) {
  if (const int* g = std::get_if<int>(&f)) {
    if (*g < 0) invalid("negative fiber genus");
  } else if (std::get<std::string>(f).empty()) {
    invalid("empty fiber name");
  }
}

void check_word_on_chart(const SurfaceChart& chart, const TwistWord& w) {
  for (const auto& l : w.letters()) {
    if (!chart.has_curve(l.curve)) invalid("chart '" + chart.name() + "' has no curve '" + l.curve + "'");
  }
}

std::vector<BoundarySlot> subplan_slots(const Plan& plan) {
  const auto assignment = match_residual(plan);
  if (assignment.size() != plan.residual.size()) invalid("nested plan residual does not match its target");
  std::vector<BoundarySlot> slots;
  for (std::size_t i = 0; i < plan.residual.size(); ++i) {
    const SlotRef& r = plan.residual[i];
    slots.push_back({r.block + "/" + r.slot, plan.target[assignment[i]]});
  }
  return slots;
}

}  // namespace

bool operator==(const SubPlanRefParams& x, const SubPlanRefParams& y) {
  if (!x.plan || !y.plan) return x.plan == y.plan;
  return *x.plan == *y.plan;
}

std::string kind_name(const BlockParams& params) {
  static const char* names[] = {"product",     "reglue_torus", "reglue_surface", "lantern_piece",
                                "cap_product", "cap_bridge",   "reglue_opaque",  "subplan"};
  return names[params.index()];
}

std::vector<BoundarySlot> expected_slots(const BlockParams& params) {
  return std::visit(
      overloaded{
          [](const ProductParams& p) -> std::vector<BoundarySlot> {
            return {{"bottom", inverse(p.label)}, {"top", p.label}};
          },
          [](const ReglueTorusParams& p) -> std::vector<BoundarySlot> {
            return {{"neg_a", torus_label(p.a.inverse())}, {"b", torus_label(p.b)}, {"ab", torus_label(p.a * p.b)}};
          },
          [](const ReglueSurfaceParams& p) -> std::vector<BoundarySlot> {
            if (!p.chart) invalid("reglue_surface without chart");
            if (p.exponent != 1 && p.exponent != -1) invalid("reglue_surface exponent must be +1 or -1");
            if (!p.chart->has_curve(p.curve)) invalid("chart '" + p.chart->name() + "' has no curve '" + p.curve + "'");
            check_word_on_chart(*p.chart, p.base);
            const TwistWord twist = TwistWord::twist(p.curve, p.exponent);
            const ManifoldLabel e = p.split == SplitKind::Torus ? torus_label(Mat2::twist_l(Integer(p.exponent)))
                                                                : surface_label(p.chart, twist);
            return {{"neg_base", surface_label(p.chart, p.base.inverse())},
                    {"result", surface_label(p.chart, p.base * twist)},
                    {"e", e}};
          },
          [](const LanternPieceParams& p) { return lantern_slots(p); },
          [](const CapProductParams& p) -> std::vector<BoundarySlot> {
            check_fiber(p.fiber);
            return {{"cap", product_label(p.fiber)}};
          },
          [](const CapBridgeParams& p) -> std::vector<BoundarySlot> {
            check_fiber(p.left);
            check_fiber(p.right);
            return {{"left", product_label(p.left)}, {"right", product_label(p.right)}};
          },
          [](const ReglueOpaqueParams& p) -> std::vector<BoundarySlot> {
            if (p.from.empty()) invalid("reglue_opaque needs a source manifold name");
            if (p.fiber_genus < 1) invalid("reglue_opaque fiber genus must be at least 1");
            if (std::holds_alternative<TorusBundle>(p.bundle)) {
              if (p.fiber_genus != 1) invalid("torus bundle E needs fiber genus 1");
            } else if (const auto* s = std::get_if<SurfaceBundle>(&p.bundle)) {
              if (s->chart->genus() != p.fiber_genus) invalid("bundle E chart genus differs from fiber genus");
              check_word_on_chart(*s->chart, s->monodromy);
            } else {
              invalid("bundle E must be a torus or surface bundle");
            }
            BoundarySlot to;
            if (const auto* name = std::get_if<std::string>(&p.to)) {
              if (name->empty()) invalid("reglue_opaque needs a target manifold name");
              to = {"to", opaque_label(*name, -1)};
            } else {
              const int g = std::get<int>(p.to);
              if (g < 1) invalid("product fiber genus must be at least 1");
              to = {"to", product_label(g)};
            }
            return {{"from", opaque_label(p.from, 1)}, to, {"e", p.bundle}};
          },
          [](const SubPlanRefParams& p) -> std::vector<BoundarySlot> {
            if (!p.plan) invalid("subplan without plan");
            return subplan_slots(*p.plan);
          },
      },
      params);
}

const BoundarySlot* Block::slot(std::string_view slot_id) const {
  for (const auto& s : slots) {
    if (s.id == slot_id) return &s;
  }
  return nullptr;
}

Block make_block(std::string id, BlockParams params) {
  auto slots = expected_slots(params);
  return Block{std::move(id), std::move(params), std::move(slots)};
}

std::string to_string(const SlotRef& ref) { return ref.block + "." + ref.slot; }

const Block* Plan::block(std::string_view id) const {
  for (const auto& b : blocks) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

const BoundarySlot* Plan::slot(const SlotRef& ref) const {
  const Block* b = block(ref.block);
  return b ? b->slot(ref.slot) : nullptr;
}

std::size_t Plan::slot_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.slots.size();
  return n;
}

std::size_t Plan::flat_block_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    const auto* sub = std::get_if<SubPlanRefParams>(&b.params);
    n += sub && sub->plan ? sub->plan->flat_block_count() : 1;
  }
  return n;
}

GlueResult check_relabel(const ManifoldLabel& physical, const ManifoldLabel& target, const GlueWitness& w) {
  return match_gluing({"physical", physical}, {"target", inverse(target)}, w);
}

std::vector<std::size_t> match_residual(const Plan& plan) {
  const std::size_t n = plan.residual.size();
  if (plan.target.size() != n) return {};
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    const BoundarySlot* s = plan.slot(plan.residual[i]);
    if (!s) return {};
    auto rw = plan.relabel.find(plan.residual[i]);
    for (std::size_t t = 0; t < n; ++t) {
      const bool ok = rw == plan.relabel.end() ? s->label == plan.target[t]
                                               : check_relabel(s->label, plan.target[t], rw->second).accepted;
      if (ok) candidates[i].push_back(t);
    }
  }
  // Kuhn's augmenting paths; residuals are small.
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(n, none);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t i, std::vector<bool>& seen) {
    for (std::size_t t : candidates[i]) {
      if (seen[t]) continue;
      seen[t] = true;
      if (owner[t] == none || augment(owner[t], seen)) {
        owner[t] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    if (!augment(i, seen)) return {};
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t t = 0; t < n; ++t) assignment[owner[t]] = t;
  return assignment;
}

namespace {

Plan prefixed(const Plan& p, const std::string& prefix) {
  Plan out;
  for (const auto& b : p.blocks) out.blocks.push_back({prefix + b.id, b.params, b.slots});
  for (const auto& g : p.gluings) {
    out.gluings.push_back({{prefix + g.a.block, g.a.slot}, {prefix + g.b.block, g.b.slot}, g.witness});
  }
  for (const auto& r : p.residual) out.residual.push_back({prefix + r.block, r.slot});
  out.target = p.target;
  for (const auto& [r, w] : p.relabel) out.relabel.emplace(SlotRef{prefix + r.block, r.slot}, w);
  return out;
}

// Residual slots with their assigned target labels, in residual order.
std::vector<std::pair<SlotRef, ManifoldLabel>> residual_targets(const Plan& p, const char* which) {
  const auto assignment = match_residual(p);
  if (assignment.size() != p.residual.size()) invalid(std::string(which) + " plan residual does not match its target");
  std::vector<std::pair<SlotRef, ManifoldLabel>> out;
  for (std::size_t i = 0; i < p.residual.size(); ++i) out.emplace_back(p.residual[i], p.target[assignment[i]]);
  return out;
}

}  // namespace

Plan compose(const Plan& p1, const Plan& p2, const std::vector<Pairing>& pairing, const std::string& prefix1,
             const std::string& prefix2) {
  const Plan q1 = prefixed(p1, prefix1);
  const Plan q2 = prefixed(p2, prefix2);
  auto r1 = residual_targets(q1, "first");
  auto r2 = residual_targets(q2, "second");

  Plan out;
  out.blocks = q1.blocks;
  out.blocks.insert(out.blocks.end(), q2.blocks.begin(), q2.blocks.end());
  std::set<std::string> ids;
  for (const auto& b : out.blocks) {
    if (!ids.insert(b.id).second) invalid("duplicate block id '" + b.id + "' after composition");
  }
  out.gluings = q1.gluings;
  out.gluings.insert(out.gluings.end(), q2.gluings.begin(), q2.gluings.end());

  std::set<SlotRef> used;
  for (const auto& p : pairing) {
    const SlotRef left{prefix1 + p.left.block, p.left.slot};
    const SlotRef right{prefix2 + p.right.block, p.right.slot};
    auto in = [](const auto& residual, const SlotRef& ref) {
      return std::any_of(residual.begin(), residual.end(), [&](const auto& e) { return e.first == ref; });
    };
    if (!in(r1, left)) invalid("slot " + to_string(p.left) + " is not residual in the first plan");
    if (!in(r2, right)) invalid("slot " + to_string(p.right) + " is not residual in the second plan");
    if (!used.insert(left).second || !used.insert(right).second) invalid("residual slot paired twice");
    const GlueResult res = match_gluing(*q1.slot(left), *q2.slot(right), p.witness);
    if (!res.accepted) {
      throw Error(res.failure == GlueFailure::InapplicableWitness ? ErrorCode::InapplicableWitness
                                                                  : ErrorCode::CheckFailed,
                  res.diagnostic);
    }
    out.gluings.push_back({left, right, p.witness});
  }

  auto keep = [&](const Plan& q, const auto& residual) {
    for (const auto& [ref, label] : residual) {
      if (used.count(ref)) continue;
      out.residual.push_back(ref);
      out.target.push_back(label);
      auto rw = q.relabel.find(ref);
      if (rw != q.relabel.end()) out.relabel.emplace(ref, rw->second);
    }
  };
  keep(q1, r1);
  keep(q2, r2);
  return out;
}

Block wrap_plan(std::string id, const Plan& plan) {
  return make_block(std::move(id), SubPlanRefParams{std::make_shared<const Plan>(plan)});
}

}  // namespace haken
