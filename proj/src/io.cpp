#include "haken/io.hpp"

#include <set>
#include <sstream>

namespace haken {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing key '") + key + "'");
  return *it;
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) malformed(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) malformed(std::string("'") + key + "' must be an integer");
  const auto x = v.get<long long>();
  if (x < -1000000 || x > 1000000) malformed(std::string("'") + key + "' out of range");
  return static_cast<int>(x);
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) malformed(std::string("'") + key + "' must be an array");
  return v;
}

// Integers that fit in a long are written as numbers, larger ones as strings.
Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Integer(std::to_string(j.get<unsigned long long>()))
                                  : Integer(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) return parse_integer(j.get<std::string>());
  malformed("expected an integer, found " + j.dump());
}

Json mat2_to_json(const Mat2& m) {
  Json out = Json::array();
  for (const auto& e : m.entries()) out.push_back(integer_to_json(e));
  return out;
}

Mat2 mat2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) malformed("matrix must be an array [a, b, c, d]");
  return Mat2(integer_from_json(j[0]), integer_from_json(j[1]), integer_from_json(j[2]), integer_from_json(j[3]));
}

Json fiber_to_json(const Fiber& f) {
  if (const int* g = std::get_if<int>(&f)) return Json(*g);
  return Json(std::get<std::string>(f));
}

Fiber fiber_from_json(const Json& j) {
  if (j.is_number_integer()) {
    const auto g = j.get<long long>();
    if (g < 0 || g > 1000000) malformed("fiber genus out of range");
    return static_cast<int>(g);
  }
  if (j.is_string()) return j.get<std::string>();
  malformed("fiber must be a genus or a surface name");
}

Json slot_ref_to_json(const SlotRef& r) { return Json{{"block", r.block}, {"slot", r.slot}}; }

SlotRef slot_ref_from_json(const Json& j) { return {string_field(j, "block"), string_field(j, "slot")}; }

void collect_charts(const Plan& plan, std::map<std::string, ChartPtr>& out) {
  auto add = [&](const ChartPtr& c) {
    if (!c) return;
    if (ChartRegistry::is_builtin_name(c->name())) {
      if (!(*ChartRegistry{}.resolve(c->name()) == *c)) {
        throw Error(ErrorCode::InvalidPlan, "chart '" + c->name() + "' reuses a built-in name");
      }
      return;
    }
    auto [it, fresh] = out.emplace(c->name(), c);
    if (!fresh && !(*it->second == *c)) {
      throw Error(ErrorCode::InvalidPlan, "two different charts named '" + c->name() + "'");
    }
  };
  auto label = [&](const ManifoldLabel& l) {
    if (const auto* s = std::get_if<SurfaceBundle>(&l)) add(s->chart);
  };
  for (const auto& b : plan.blocks) {
    for (const auto& s : b.slots) label(s.label);
    std::visit(overloaded{
                   [&](const ProductParams& p) { label(p.label); },
                   [&](const ReglueSurfaceParams& p) { add(p.chart); },
                   [&](const ReglueOpaqueParams& p) { label(p.bundle); },
                   [&](const SubPlanRefParams& p) {
                     if (p.plan) collect_charts(*p.plan, out);
                   },
                   [](const auto&) {},
               },
               b.params);
  }
  for (const auto& t : plan.target) label(t);
}

Json params_to_json(const BlockParams& params);
BlockParams params_from_json(const std::string& kind, const Json& j, const ChartRegistry& charts);

Json plan_body_to_json(const Plan& plan) {
  Json blocks = Json::array();
  for (const auto& b : plan.blocks) {
    Json slots = Json::array();
    for (const auto& s : b.slots) slots.push_back({{"id", s.id}, {"label", label_to_json(s.label)}});
    blocks.push_back({{"id", b.id}, {"kind", kind_name(b.params)}, {"params", params_to_json(b.params)},
                      {"slots", slots}});
  }
  Json gluings = Json::array();
  for (const auto& g : plan.gluings) {
    gluings.push_back({{"block_a", g.a.block},
                       {"slot_a", g.a.slot},
                       {"block_b", g.b.block},
                       {"slot_b", g.b.slot},
                       {"witness", witness_to_json(g.witness)}});
  }
  Json residual = Json::array();
  for (const auto& r : plan.residual) residual.push_back(slot_ref_to_json(r));
  Json target = Json::array();
  for (const auto& t : plan.target) target.push_back(label_to_json(t));
  Json relabel = Json::array();
  for (const auto& [r, w] : plan.relabel) {
    relabel.push_back({{"block", r.block}, {"slot", r.slot}, {"witness", witness_to_json(w)}});
  }
  return Json{{"blocks", blocks},
              {"gluings", gluings},
              {"residual", residual},
              {"target", target},
              {"relabel_witnesses", relabel}};
}

Plan plan_body_from_json(const Json& j, const ChartRegistry& charts) {
  Plan plan;
  for (const auto& jb : array_field(j, "blocks")) {
    Block b;
    b.id = string_field(jb, "id");
    b.params = params_from_json(string_field(jb, "kind"), field(jb, "params"), charts);
    for (const auto& js : array_field(jb, "slots")) {
      b.slots.push_back({string_field(js, "id"), label_from_json(field(js, "label"), charts)});
    }
    plan.blocks.push_back(std::move(b));
  }
  for (const auto& jg : array_field(j, "gluings")) {
    plan.gluings.push_back({{string_field(jg, "block_a"), string_field(jg, "slot_a")},
                            {string_field(jg, "block_b"), string_field(jg, "slot_b")},
                            witness_from_json(field(jg, "witness"))});
  }
  for (const auto& jr : array_field(j, "residual")) plan.residual.push_back(slot_ref_from_json(jr));
  for (const auto& jt : array_field(j, "target")) plan.target.push_back(label_from_json(jt, charts));
  if (j.contains("relabel_witnesses")) {
    for (const auto& jw : array_field(j, "relabel_witnesses")) {
      if (!plan.relabel.emplace(slot_ref_from_json(jw), witness_from_json(field(jw, "witness"))).second) {
        malformed("two relabel witnesses for one slot");
      }
    }
  }
  return plan;
}

Json params_to_json(const BlockParams& params) {
  return std::visit(
      overloaded{
          [](const ProductParams& p) { return Json{{"label", label_to_json(p.label)}}; },
          [](const ReglueTorusParams& p) { return Json{{"a", mat2_to_json(p.a)}, {"b", mat2_to_json(p.b)}}; },
          [](const ReglueSurfaceParams& p) {
            return Json{{"chart", p.chart->name()},
                        {"base", p.base.str()},
                        {"curve", p.curve},
                        {"exponent", p.exponent},
                        {"split", p.split == SplitKind::Torus ? "torus" : "fiber"}};
          },
          [](const LanternPieceParams& p) { return Json{{"index", p.index}, {"chirality", p.chirality}}; },
          [](const CapProductParams& p) { return Json{{"fiber", fiber_to_json(p.fiber)}}; },
          [](const CapBridgeParams& p) {
            return Json{{"left", fiber_to_json(p.left)}, {"right", fiber_to_json(p.right)}};
          },
          [](const ReglueOpaqueParams& p) {
            Json to = std::holds_alternative<std::string>(p.to) ? Json(std::get<std::string>(p.to))
                                                                 : Json{{"product_of_genus", std::get<int>(p.to)}};
            return Json{{"from", p.from}, {"to", to}, {"fiber_genus", p.fiber_genus}, {"bundle", label_to_json(p.bundle)}};
          },
          [](const SubPlanRefParams& p) {
            if (!p.plan) throw Error(ErrorCode::InvalidPlan, "subplan without plan");
            return Json{{"plan", plan_body_to_json(*p.plan)}};
          },
      },
      params);
}

BlockParams params_from_json(const std::string& kind, const Json& j, const ChartRegistry& charts) {
  if (kind == "product") return ProductParams{label_from_json(field(j, "label"), charts)};
  if (kind == "reglue_torus") return ReglueTorusParams{mat2_from_json(field(j, "a")), mat2_from_json(field(j, "b"))};
  if (kind == "reglue_surface") {
    const std::string split = string_field(j, "split");
    if (split != "torus" && split != "fiber") malformed("split must be 'torus' or 'fiber'");
    return ReglueSurfaceParams{charts.resolve(string_field(j, "chart")), TwistWord::parse(string_field(j, "base")),
                               string_field(j, "curve"), int_field(j, "exponent"),
                               split == "torus" ? SplitKind::Torus : SplitKind::Fiber};
  }
  if (kind == "lantern_piece") return LanternPieceParams{int_field(j, "index"), int_field(j, "chirality")};
  if (kind == "cap_product") return CapProductParams{fiber_from_json(field(j, "fiber"))};
  if (kind == "cap_bridge") return CapBridgeParams{fiber_from_json(field(j, "left")), fiber_from_json(field(j, "right"))};
  if (kind == "reglue_opaque") {
    ReglueOpaqueParams p{string_field(j, "from"), std::string{}, int_field(j, "fiber_genus"),
                         label_from_json(field(j, "bundle"), charts)};
    const Json& to = field(j, "to");
    if (to.is_string()) {
      p.to = to.get<std::string>();
    } else {
      p.to = int_field(to, "product_of_genus");
    }
    return p;
  }
  if (kind == "subplan") {
    return SubPlanRefParams{std::make_shared<const Plan>(plan_body_from_json(field(j, "plan"), charts))};
  }
  malformed("unknown block kind '" + kind + "'");
}

}  // namespace

Json chart_to_json(const SurfaceChart& chart) {
  Json curves = Json::object();
  for (const auto& [name, data] : chart.curves()) {
    Json h = Json::array();
    for (Eigen::Index i = 0; i < data.homology.size(); ++i) h.push_back(integer_to_json(data.homology(i)));
    curves[name] = {{"homology", h}, {"separating", data.separating}};
  }
  Json disjoint = Json::array();
  for (const auto& [x, y] : chart.disjoint_pairs()) disjoint.push_back({x, y});
  Json lanterns = Json::array();
  for (const auto& t : chart.lanterns()) {
    lanterns.push_back({{"alpha", t.alpha}, {"beta", t.beta}, {"gamma", t.gamma}, {"eps", t.eps}});
  }
  return Json{{"name", chart.name()},
              {"genus", chart.genus()},
              {"curves", curves},
              {"disjoint", disjoint},
              {"lanterns", lanterns}};
}

ChartPtr chart_from_json(const Json& j) {
  const std::string name = string_field(j, "name");
  const int genus = int_field(j, "genus");
  if (genus < 1 || genus > 64) malformed("chart genus must be in 1..64");
  std::map<std::string, CurveData> curves;
  const Json& jc = field(j, "curves");
  if (!jc.is_object()) malformed("'curves' must be an object");
  for (const auto& [curve, data] : jc.items()) {
    const Json& h = array_field(data, "homology");
    IntVector v(static_cast<Eigen::Index>(h.size()));
    for (std::size_t i = 0; i < h.size(); ++i) v(static_cast<Eigen::Index>(i)) = integer_from_json(h[i]);
    bool separating = false;
    if (data.contains("separating")) {
      if (!data["separating"].is_boolean()) malformed("'separating' must be a boolean");
      separating = data["separating"].get<bool>();
    }
    curves[curve] = {v, separating};
  }
  std::set<std::pair<std::string, std::string>> disjoint;
  if (j.contains("disjoint")) {
    for (const auto& pair : array_field(j, "disjoint")) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        malformed("disjoint pairs must be [name, name]");
      }
      disjoint.emplace(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  }
  std::vector<LanternTuple> lanterns;
  if (j.contains("lanterns")) {
    for (const auto& t : array_field(j, "lanterns")) {
      const Json& eps = array_field(t, "eps");
      if (eps.size() != 4) malformed("lantern needs four boundary curves");
      LanternTuple lt{string_field(t, "alpha"), string_field(t, "beta"), string_field(t, "gamma"), {}};
      for (std::size_t i = 0; i < 4; ++i) {
        if (!eps[i].is_string()) malformed("lantern curve names must be strings");
        lt.eps[i] = eps[i].get<std::string>();
      }
      lanterns.push_back(lt);
    }
  }
  return std::make_shared<const SurfaceChart>(name, genus, std::move(curves), std::move(disjoint),
                                              std::move(lanterns));
}

namespace {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    malformed(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

ChartPtr read_chart(std::string_view text) {
  const Json j = parse_json(text);
  return guarded([&] { return chart_from_json(j); });
}

Json label_to_json(const ManifoldLabel& label) {
  return std::visit(overloaded{
                        [](const TorusBundle& t) { return Json{{"kind", "torus"}, {"matrix", mat2_to_json(t.monodromy)}}; },
                        [](const SurfaceBundle& s) {
                          return Json{{"kind", "surface"}, {"chart", s.chart->name()}, {"word", s.monodromy.str()}};
                        },
                        [](const ProductBundle& p) { return Json{{"kind", "product"}, {"fiber", fiber_to_json(p.fiber)}}; },
                        [](const OpaqueManifold& o) {
                          return Json{{"kind", "opaque"}, {"name", o.name}, {"sign", o.sign}};
                        },
                    },
                    label);
}

ManifoldLabel label_from_json(const Json& j, const ChartRegistry& charts) {
  const std::string kind = string_field(j, "kind");
  if (kind == "torus") return torus_label(mat2_from_json(field(j, "matrix")));
  if (kind == "surface") {
    const ChartPtr chart = charts.resolve(string_field(j, "chart"));
    const TwistWord w = TwistWord::parse(string_field(j, "word"));
    for (const auto& l : w.letters()) {
      if (!chart->has_curve(l.curve)) {
        throw Error(ErrorCode::UnknownCurve, "chart '" + chart->name() + "' has no curve '" + l.curve + "'");
      }
    }
    return surface_label(chart, w);
  }
  if (kind == "product") return product_label(fiber_from_json(field(j, "fiber")));
  if (kind == "opaque") {
    const int sign = int_field(j, "sign");
    if (sign != 1 && sign != -1) malformed("opaque sign must be +1 or -1");
    const std::string name = string_field(j, "name");
    if (name.empty()) malformed("opaque label needs a name");
    return opaque_label(name, sign);
  }
  malformed("unknown label kind '" + kind + "'");
}

Json witness_to_json(const GlueWitness& w) {
  Json out{{"kind", kind_name(w)}};
  if (const auto* cw = std::get_if<ConjugateWord>(&w)) {
    if (const auto* t = std::get_if<TorusTwistWord>(&cw->word)) {
      out["group"] = "sl2z";
      out["word"] = t->str();
    } else {
      out["group"] = "mcg";
      out["word"] = std::get<TwistWord>(cw->word).str();
    }
  } else if (const auto* hc = std::get_if<HomologyConjugate>(&w)) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < hc->matrix.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < hc->matrix.cols(); ++c) row.push_back(integer_to_json(hc->matrix(r, c)));
      rows.push_back(row);
    }
    out["matrix"] = rows;
  }
  return out;
}

GlueWitness witness_from_json(const Json& j) {
  const std::string kind = string_field(j, "kind");
  if (kind == "inverse_exact") return InverseExact{};
  if (kind == "reduces_to_inverse") return ReducesToInverse{};
  if (kind == "opaque_match") return OpaqueMatch{};
  if (kind == "conjugate_word") {
    const std::string group = string_field(j, "group");
    if (group == "sl2z") return ConjugateWord{TorusTwistWord::parse(string_field(j, "word"))};
    if (group == "mcg") return ConjugateWord{TwistWord::parse(string_field(j, "word"))};
    malformed("conjugate_word group must be 'sl2z' or 'mcg'");
  }
  if (kind == "homology_conjugate") {
    const Json& rows = array_field(j, "matrix");
    const auto n = static_cast<Eigen::Index>(rows.size());
    IntMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) malformed("homology witness must be square");
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) = integer_from_json(row[static_cast<std::size_t>(c)]);
    }
    return HomologyConjugate{m};
  }
  malformed("unknown witness kind '" + kind + "'");
}

Json plan_to_json(const Plan& plan) {
  std::map<std::string, ChartPtr> charts;
  collect_charts(plan, charts);
  Json out = plan_body_to_json(plan);
  Json jc = Json::object();
  for (const auto& [name, chart] : charts) jc[name] = chart_to_json(*chart);
  out["charts"] = jc;
  return out;
}

Plan plan_from_json(const Json& j, const ChartRegistry& charts) {
  return guarded([&] {
    ChartRegistry reg = charts;
    if (j.is_object() && j.contains("charts")) {
      const Json& jc = j["charts"];
      if (!jc.is_object()) malformed("'charts' must be an object");
      for (const auto& [name, chart] : jc.items()) {
        ChartPtr c = chart_from_json(chart);
        if (c->name() != name) malformed("chart key '" + name + "' does not match its name");
        reg.add(c);
      }
    }
    return plan_body_from_json(j, reg);
  });
}

std::string write_plan(const Plan& plan) { return plan_to_json(plan).dump(2) + "\n"; }

Plan read_plan(std::string_view text, const ChartRegistry& charts) { return plan_from_json(parse_json(text), charts); }

Json move_sequence_to_json(const MoveSequence& seq) {
  Json steps = Json::array();
  for (const auto& s : seq.steps) {
    Json js{{"from", s.from}, {"to", s.to}, {"fiber_genus", s.fiber_genus}, {"twist", s.twist}};
    if (s.chart) js["chart"] = *s.chart;
    steps.push_back(js);
  }
  steps.push_back({{"product_of_genus", seq.product_genus}});
  return Json{{"steps", steps}};
}

MoveSequence move_sequence_from_json(const Json& j, ChartRegistry* charts) {
  return guarded([&] {
    const Json* steps = &j;
    if (j.is_object()) {
      steps = &array_field(j, "steps");
      if (j.contains("charts")) {
        if (!charts) malformed("move sequence embeds charts but no registry was given");
        const Json& jc = j["charts"];
        if (!jc.is_array()) malformed("'charts' in a move sequence must be an array of charts");
        for (const auto& c : jc) charts->add(chart_from_json(c));
      }
    }
    if (!steps->is_array()) malformed("move sequence must be an array of steps");
    MoveSequence seq;
    bool terminated = false;
    for (const auto& s : *steps) {
      if (terminated) malformed("steps after the terminal product marker");
      if (s.is_object() && s.contains("product_of_genus")) {
        seq.product_genus = int_field(s, "product_of_genus");
        if (seq.product_genus < 1) malformed("product genus must be at least 1");
        terminated = true;
        continue;
      }
      MoveStep step{string_field(s, "from"), string_field(s, "to"), int_field(s, "fiber_genus"),
                    string_field(s, "twist"), std::nullopt};
      if (s.contains("chart")) step.chart = string_field(s, "chart");
      seq.steps.push_back(std::move(step));
    }
    if (!terminated) malformed("sequence does not end at a declared product");
    return seq;
  });
}

MoveSequence read_move_sequence(std::string_view text, ChartRegistry* charts) {
  return move_sequence_from_json(parse_json(text), charts);
}

namespace {

std::string describe(const BlockParams& params) {
  return std::visit(overloaded{
                        [](const ProductParams& p) { return to_string(p.label); },
                        [](const ReglueTorusParams& p) { return "a=" + p.a.str() + " b=" + p.b.str(); },
                        [](const ReglueSurfaceParams& p) {
                          return p.chart->name() + " base=" + p.base.str() + " " + TwistWord::twist(p.curve, p.exponent).str() +
                                 (p.split == SplitKind::Torus ? " torus" : " fiber");
                        },
                        [](const LanternPieceParams& p) {
                          return "W" + std::to_string(p.index) + (p.chirality > 0 ? " +" : " -");
                        },
                        [](const CapProductParams& p) { return to_string(p.fiber) + "xS1"; },
                        [](const CapBridgeParams& p) { return to_string(p.left) + " | " + to_string(p.right); },
                        [](const ReglueOpaqueParams& p) {
                          const std::string to = std::holds_alternative<std::string>(p.to)
                                                     ? std::get<std::string>(p.to)
                                                     : "F" + std::to_string(std::get<int>(p.to)) + "xS1";
                          return p.from + " -> " + to + " E=" + to_string(p.bundle);
                        },
                        [](const SubPlanRefParams& p) {
                          return std::to_string(p.plan ? p.plan->flat_block_count() : 0) + " blocks";
                        },
                    },
                    params);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string plan_to_dot(const Plan& plan) {
  std::ostringstream out;
  out << "graph plan {\n";
  out << "  node [shape=box];\n";
  for (const auto& b : plan.blocks) {
    out << "  \"" << dot_escape(b.id) << "\" [label=\"" << dot_escape(b.id + "\n" + kind_name(b.params) + "\n" +
                                                                        describe(b.params))
        << "\"];\n";
  }
  for (const auto& g : plan.gluings) {
    const BoundarySlot* a = plan.slot(g.a);
    const BoundarySlot* b = plan.slot(g.b);
    std::string tier = "unchecked";
    if (a && b) {
      const GlueResult r = match_gluing(*a, *b, g.witness);
      tier = !r.accepted ? "failed" : r.tier == WitnessTier::Exact ? "exact" : "necessary-only";
    }
    out << "  \"" << dot_escape(g.a.block) << "\" -- \"" << dot_escape(g.b.block) << "\" [label=\""
        << dot_escape(kind_name(g.witness) + " (" + tier + ")") << "\""
        << (tier == "necessary-only" ? ", style=dashed" : "") << "];\n";
  }
  if (!plan.residual.empty()) {
    out << "  \"∂\" [shape=doublecircle];\n";
    for (const auto& r : plan.residual) {
      const BoundarySlot* s = plan.slot(r);
      out << "  \"" << dot_escape(r.block) << "\" -- \"∂\" [label=\""
          << dot_escape(r.slot + (s ? ": " + to_string(s->label) : std::string())) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace haken
