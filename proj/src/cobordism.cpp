#include "haken/cobordism.hpp"

namespace haken {

namespace {

// Plan consisting of one block, every slot residual.
Plan single_block_plan(Block block) {
  Plan p;
  for (const auto& s : block.slots) {
    p.residual.push_back({block.id, s.id});
    p.target.push_back(s.label);
  }
  p.blocks.push_back(std::move(block));
  return p;
}

// Glues the single residual slot of filler to host_slot. The filler's target
// is the inverse of the host slot label; a relabel witness on its residual is
// turned around into the gluing witness.
Plan attach(const Plan& host, const SlotRef& host_slot, const Plan& filler, const std::string& prefix) {
  if (filler.residual.size() != 1) throw Error(ErrorCode::InvalidPlan, "filler plan must have one residual slot");
  const SlotRef& r = filler.residual.front();
  auto rw = filler.relabel.find(r);
  const GlueWitness w = rw == filler.relabel.end() ? GlueWitness{InverseExact{}} : inverse_witness(rw->second);
  return compose(host, filler, {{host_slot, r, w}}, "", prefix);
}

void set_target(Plan& p, ManifoldLabel label) {
  p.target.assign(1, std::move(label));
}

Plan torus_plan(const std::vector<TorusLetter<Integer>>& units) {
  if (units.size() == 1) {
    const auto cls = single_twist_class(units.front());
    Plan p = gen_lantern_assembly(cls.chirality);
    set_target(p, torus_label(generator_power(units.front().generator, units.front().exponent)));
    if (!cls.conjugator.empty()) p.relabel.emplace(p.residual.front(), ConjugateWord{cls.conjugator.inverse()});
    return p;
  }
  const std::vector<TorusLetter<Integer>> tau(units.begin(), units.end() - 1);
  const TorusLetter<Integer> sigma = units.back();
  const TorusTwistWord tau_word(tau);
  const Mat2 a = eval_torus_word(tau_word);
  const Mat2 b = generator_power(sigma.generator, sigma.exponent);

  Plan p = single_block_plan(make_block("reglue", ReglueTorusParams{a, b}));
  p = attach(p, {"reglue", "b"}, torus_plan({{sigma.generator, Integer(-sigma.exponent)}}), "sigma.");
  p = attach(p, {"reglue", "neg_a"}, torus_plan(tau), "tau.");
  set_target(p, torus_label(a * b));
  return p;
}

Plan surface_plan(const ChartPtr& chart, const LetterSequence& units) {
  const TwistLetter& last = units.back();
  const int e = last.exponent > 0 ? 1 : -1;
  const int genus = chart->genus();
  if (units.size() == 1) {
    Plan p = single_block_plan(
        make_block("reglue", ReglueSurfaceParams{chart, TwistWord{}, last.curve, e, SplitKind::Torus}));
    p = attach(p, {"reglue", "neg_base"}, single_block_plan(make_block("cap", CapProductParams{genus})), "");
    p = attach(p, {"reglue", "e"}, plan_torus_bundle(TorusTwistWord::letter(TorusGenerator::L, Integer(-e))), "e.");
    set_target(p, surface_label(chart, TwistWord(units)));
    return p;
  }
  const LetterSequence tau(units.begin(), units.end() - 1);
  Plan p = single_block_plan(
      make_block("reglue", ReglueSurfaceParams{chart, TwistWord(tau), last.curve, e, SplitKind::Fiber}));
  p = attach(p, {"reglue", "e"}, surface_plan(chart, {{last.curve, Integer(-e)}}), "e.");
  p = attach(p, {"reglue", "neg_base"}, surface_plan(chart, tau), "tau.");
  set_target(p, surface_label(chart, TwistWord(units)));
  return p;
}

void check_sequence(const MoveSequence& seq, const char* which) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::MalformedInput, std::string(which) + " move sequence: " + what);
  };
  if (seq.steps.empty()) fail("no steps");
  if (seq.product_genus < 1) fail("does not end at a declared product");
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const MoveStep& s = seq.steps[i];
    if (s.from.empty() || s.to.empty()) fail("step " + std::to_string(i) + " has an empty manifold name");
    if (s.fiber_genus < 1) fail("step " + std::to_string(i) + " has fiber genus below 1");
    if (i + 1 < seq.steps.size() && s.to != seq.steps[i + 1].from) {
      fail("step " + std::to_string(i) + " ends at '" + s.to + "' but step " + std::to_string(i + 1) + " starts at '" +
           seq.steps[i + 1].from + "'");
    }
  }
}

struct StepBundle {
  ManifoldLabel label;
  Plan filler;
};

StepBundle step_bundle(const MoveStep& step, const ChartRegistry& charts) {
  if (step.fiber_genus == 1) {
    if (step.chart) throw Error(ErrorCode::MalformedInput, "genus-1 steps take a torus word, not a chart");
    const TorusTwistWord w = TorusTwistWord::parse(step.twist);
    return {torus_label(w), plan_torus_bundle(w.inverse())};
  }
  const ChartPtr chart = charts.resolve(step.chart.value_or("std" + std::to_string(step.fiber_genus)));
  if (chart->genus() != step.fiber_genus) {
    throw Error(ErrorCode::MalformedInput, "chart '" + chart->name() + "' has genus " +
                                               std::to_string(chart->genus()) + ", step declares fiber genus " +
                                               std::to_string(step.fiber_genus));
  }
  const TwistWord w = TwistWord::parse(step.twist);
  return {surface_label(chart, w), plan_surface_bundle(chart, w.inverse())};
}

// Chain of reglue blocks tag0, tag1, ... with every E slot filled. Residual:
// tag0.from and the terminal product slot.
Plan move_chain(const MoveSequence& seq, const std::string& tag, const ChartRegistry& charts) {
  Plan chain;
  std::vector<Plan> fillers;
  const std::size_t n = seq.steps.size();
  for (std::size_t i = 0; i < n; ++i) {
    const MoveStep& step = seq.steps[i];
    StepBundle bundle = step_bundle(step, charts);
    ReglueOpaqueParams params{step.from, std::string{}, step.fiber_genus, bundle.label};
    if (i + 1 < n) {
      params.to = step.to;
    } else {
      params.to = seq.product_genus;
    }
    chain.blocks.push_back(make_block(tag + std::to_string(i), params));
    fillers.push_back(std::move(bundle.filler));
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    chain.gluings.push_back({{tag + std::to_string(i), "to"}, {tag + std::to_string(i + 1), "from"}, OpaqueMatch{}});
  }
  auto expose = [&](const SlotRef& ref) {
    chain.residual.push_back(ref);
    chain.target.push_back(chain.slot(ref)->label);
  };
  expose({tag + "0", "from"});
  for (std::size_t i = 0; i < n; ++i) expose({tag + std::to_string(i), "e"});
  expose({tag + std::to_string(n - 1), "to"});
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = tag + std::to_string(i);
    chain = attach(chain, {id, "e"}, fillers[i], id + ".e.");
  }
  return chain;
}

}  // namespace

Plan gen_lantern_assembly(int chirality) {
  if (chirality != 1 && chirality != -1) throw Error(ErrorCode::MalformedInput, "chirality must be +1 or -1");
  Plan p;
  auto id = [](int i) { return "W" + std::to_string(i); };
  for (int i = 7; i >= 1; --i) p.blocks.push_back(make_block(id(i), LanternPieceParams{i, chirality}));
  for (int i = 6; i >= 1; --i) p.gluings.push_back({{id(i + 1), "next"}, {id(i), "prev"}, InverseExact{}});
  p.gluings.push_back({{"W6", "aux"}, {"W5", "aux"}, InverseExact{}});

  // f_beta^-1 on W4 against f_2 on W3, f_gamma^-1 on W2 against f_1 on W1:
  // the twists are conjugate by any mapping class carrying eps to the other
  // curve, and homology only sees a symplectic matrix doing the same.
  const ChartPtr chart = lantern_chart();
  auto carry = [&](const char* eps, const char* curve) {
    return HomologyConjugate{symplectic_carrying(chart->curve(eps).homology, chart->curve(curve).homology)};
  };
  p.gluings.push_back({{"W4", "aux"}, {"W3", "aux"}, carry("2", "beta")});
  p.gluings.push_back({{"W2", "aux"}, {"W1", "aux"}, carry("1", "gamma")});
  p.gluings.push_back({{"W7", "prev"}, {"W1", "next"}, ReducesToInverse{}});

  p.residual.push_back({"W7", "aux"});
  p.target.push_back(torus_label(Mat2::twist_l(Integer(chirality))));
  return p;
}

Plan plan_torus_bundle(const TorusTwistWord& w) {
  const auto units = w.unit_letters();
  if (units.empty()) throw Error(ErrorCode::MalformedInput, "torus plan needs at least one twist");
  return torus_plan(units);
}

Plan plan_surface_bundle(const ChartPtr& chart, const TwistWord& w) {
  if (!chart) throw Error(ErrorCode::MalformedInput, "surface plan needs a chart");
  if (chart->genus() < 2) {
    throw Error(ErrorCode::MalformedInput, "surface plan needs genus >= 2; use the torus plan for genus 1");
  }
  const auto units = w.unit_letters();
  if (units.empty()) throw Error(ErrorCode::MalformedInput, "surface plan needs at least one twist");
  for (const auto& l : units) {
    if (!chart->has_curve(l.curve)) {
      throw Error(ErrorCode::UnknownCurve, "chart '" + chart->name() + "' has no curve '" + l.curve + "'");
    }
  }
  return surface_plan(chart, units);
}

Plan plan_cobordism(const MoveSequence& seq, const std::optional<MoveSequence>& other, const ChartRegistry& charts) {
  check_sequence(seq, "first");
  if (other) check_sequence(*other, "second");

  Plan chain = move_chain(seq, "M", charts);
  const SlotRef end{"M" + std::to_string(seq.steps.size() - 1), "to"};
  if (!other) {
    Plan cap = single_block_plan(make_block("cap", CapProductParams{seq.product_genus}));
    return compose(chain, cap, {{end, {"cap", "cap"}, InverseExact{}}}, "", "");
  }
  Plan second = move_chain(*other, "N", charts);
  const SlotRef other_end{"N" + std::to_string(other->steps.size() - 1), "to"};
  if (seq.product_genus == other->product_genus) {
    return compose(chain, second, {{end, other_end, InverseExact{}}}, "", "");
  }
  Plan bridge = single_block_plan(make_block("bridge", CapBridgeParams{seq.product_genus, other->product_genus}));
  Plan left = compose(chain, bridge, {{end, {"bridge", "left"}, InverseExact{}}}, "", "");
  return compose(left, second, {{{"bridge", "right"}, other_end, InverseExact{}}}, "", "");
}

}  // namespace haken
