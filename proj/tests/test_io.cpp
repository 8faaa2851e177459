#include "haken/io.hpp"
#include "haken/verify.hpp"

#include "doctest.h"

using namespace haken;

namespace {

void round_trips(const Plan& p, const ChartRegistry& charts = {}) {
  const std::string text = write_plan(p);
  const Plan back = read_plan(text, charts);
  CHECK(back == p);
  CHECK(write_plan(back) == text);
  CHECK(verify(back).status == verify(p).status);
}

ChartPtr custom_chart() {
  std::map<std::string, CurveData> curves;
  IntVector a(2), b(2);
  a << 1, 0;
  b << 0, 1;
  curves["x"] = {a, false};
  curves["y"] = {b, false};
  return std::make_shared<const SurfaceChart>("mytorus", 1, curves, std::set<std::pair<std::string, std::string>>{},
                                              std::vector<LanternTuple>{});
}

}  // namespace

TEST_CASE("generated plans survive a write/read cycle") {
  round_trips(gen_lantern_assembly(1));
  round_trips(gen_lantern_assembly(-1));
  round_trips(plan_torus_bundle(TorusTwistWord::parse("L.R^-1.L")));
  round_trips(plan_surface_bundle(standard_chart(2), TwistWord::parse("f_a1.f_b2^-1")));
  MoveSequence seq{{{"M", "M1", 1, "L", std::nullopt}, {"M1", "F", 2, "f_a1", std::nullopt}}, 2};
  round_trips(plan_cobordism(seq, std::nullopt));
}

TEST_CASE("subplan blocks nest in JSON") {
  Plan outer;
  outer.blocks.push_back(wrap_plan("inner", gen_lantern_assembly(1)));
  const auto& slots = outer.blocks.back().slots;
  REQUIRE(slots.size() == 1);
  outer.residual.push_back({"inner", slots[0].id});
  outer.target.push_back(slots[0].label);
  round_trips(outer);
}

TEST_CASE("charts round-trip and embed in plans") {
  const ChartPtr c = custom_chart();
  CHECK(*read_chart(chart_to_json(*c).dump()) == *c);
  CHECK(*chart_from_json(chart_to_json(*lantern_chart())) == *lantern_chart());

  Plan p;
  p.blocks.push_back(make_block("P", ProductParams{surface_label(c, TwistWord::parse("f_x"))}));
  p.residual = {{"P", "bottom"}, {"P", "top"}};
  p.target = {p.blocks[0].slots[0].label, p.blocks[0].slots[1].label};
  const Json j = plan_to_json(p);
  CHECK(j["charts"].contains("mytorus"));
  CHECK(read_plan(j.dump()) == p);
}

TEST_CASE("witnesses round-trip") {
  const std::vector<GlueWitness> ws = {
      InverseExact{},
      ReducesToInverse{},
      OpaqueMatch{},
      ConjugateWord{TorusTwistWord::parse("R.L^-1.R")},
      ConjugateWord{TwistWord::parse("f_alpha.f_1^-1")},
      HomologyConjugate{symplectic_carrying(lantern_chart()->curve("1").homology, lantern_chart()->curve("beta").homology)},
  };
  for (const auto& w : ws) CHECK(witness_from_json(witness_to_json(w)) == w);
}

TEST_CASE("large integers are written as strings") {
  const Mat2 big = eval_torus_word(TorusTwistWord::parse("L^1000000000000000000000000000000.R"));
  const Json j = label_to_json(torus_label(big));
  CHECK(j["matrix"][2].is_string());
  CHECK(label_from_json(j, {}) == torus_label(big));
}

TEST_CASE("malformed documents are rejected with MalformedInput") {
  auto code_of = [](const std::string& text) {
    try {
      read_plan(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code_of("{") == ErrorCode::MalformedInput);
  CHECK(code_of("[]") == ErrorCode::MalformedInput);
  CHECK(code_of(R"({"blocks": [], "gluings": [], "residual": [], "target": [{"kind": "torus", "matrix": [1, 2, 3, 4]}]})") ==
        ErrorCode::MalformedInput);
  CHECK(code_of(R"({"blocks": [], "gluings": [], "residual": [], "target": [{"kind": "torus", "matrix": [1, 0, 1.5, 1]}]})") ==
        ErrorCode::MalformedInput);
  CHECK(code_of(R"({"blocks": [{"id": "x", "kind": "teapot", "params": {}, "slots": []}], "gluings": [], "residual": [], "target": []})") ==
        ErrorCode::MalformedInput);
  CHECK_THROWS_AS(read_move_sequence(R"([{"from": "M", "to": "N", "fiber_genus": 1, "twist": "L"}])"), Error);
}

TEST_CASE("move sequences round-trip in both forms") {
  MoveSequence seq{{{"M", "M1", 1, "L", std::nullopt}, {"M1", "F", 3, "f_c1", std::string("std3")}}, 3};
  const Json j = move_sequence_to_json(seq);
  CHECK(move_sequence_from_json(j) == seq);
  CHECK(move_sequence_from_json(j["steps"]) == seq);
}

TEST_CASE("DOT export names every block and flags necessary-only gluings") {
  const Plan p = gen_lantern_assembly(1);
  const std::string dot = plan_to_dot(p);
  CHECK(dot.starts_with("graph plan {"));
  for (const auto& b : p.blocks) CHECK(dot.find("\"" + b.id + "\"") != std::string::npos);
  std::size_t necessary = 0;
  for (std::size_t pos = 0; (pos = dot.find("necessary-only", pos)) != std::string::npos; ++pos) ++necessary;
  CHECK(necessary == 2);
  CHECK(plan_to_dot(p) == dot);
}
