#include "haken/mcg.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace haken;

namespace {

IntMatrix identity(Eigen::Index n) { return IntMatrix::Identity(n, n); }

TwistWord word(const char* text) { return TwistWord::parse(text); }

IntVector oracle_class(const std::vector<oracle::Point>& polygon) {
  const auto v = oracle::polygon_class(polygon);
  IntVector out(6);
  for (int i = 0; i < 6; ++i) out(i) = Integer(static_cast<long>(v[i]));
  return out;
}

TwistWord random_word(std::mt19937_64& rng, const SurfaceChart& chart, int max_letters, int max_exp) {
  std::vector<std::string> names;
  for (const auto& [name, data] : chart.curves()) names.push_back(name);
  std::uniform_int_distribution<int> len(0, max_letters);
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  std::uniform_int_distribution<int> ex(-max_exp, max_exp);
  LetterSequence letters;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    int e = 0;
    while (e == 0) e = ex(rng);
    letters.push_back({names[pick(rng)], Integer(e)});
  }
  return TwistWord(letters);
}

}  // namespace

TEST_CASE("twist word text format") {
  const auto w = word("f_alpha.f_2^-1.f_beta");
  CHECK(w.size() == 3);
  CHECK(w.str() == "f_alpha.f_2^-1.f_beta");
  CHECK(word("f_1.f_1^2").str() == "f_1^3");
  CHECK(word("f_1^2.f_1^-2").empty());
  CHECK(word("id").empty());
  CHECK(TwistWord{}.str() == "id");
  CHECK(word("f_alpha^3").length() == 3);
  CHECK_THROWS_AS(word("g_alpha"), Error);
  CHECK_THROWS_AS(word("f_"), Error);
  CHECK_THROWS_AS(word("f_a..f_b"), Error);
  CHECK_THROWS_AS(word("f_a^0"), Error);
}

TEST_CASE("transvection examples") {
  const auto chart = standard_chart(1);
  const IntMatrix t = transvection(*chart, "a1", 1);
  IntMatrix expected(2, 2);
  expected << 1, 0, -1, 1;
  CHECK(t == expected);
  IntVector a(2), b(2);
  a << 1, 0;
  b << 0, 1;
  CHECK(IntVector(a * t) == a);
  CHECK(IntVector(b * t - b) == IntVector(-a));
  CHECK(is_symplectic(t));
  CHECK(IntMatrix(transvection(*chart, "a1", -1) * t) == identity(2));

  const auto g2 = standard_chart(2);
  CHECK(transvection(*g2, "s1", 3) == identity(4));
  CHECK_THROWS_AS(transvection(*g2, "nope", 1), Error);
}

TEST_CASE("rho examples and homomorphism") {
  const auto chart = lantern_chart();
  CHECK(rho(*chart, TwistWord{}) == identity(6));
  CHECK(rho(*chart, LetterSequence{{"alpha", 1}, {"alpha", -1}}) == identity(6));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_word(rng, *chart, 6, 3);
    const auto y = random_word(rng, *chart, 6, 3);
    CHECK(rho(*chart, x * y) == IntMatrix(rho(*chart, x) * rho(*chart, y)));
    CHECK(is_symplectic(rho(*chart, x)));
  }
}

TEST_CASE("lantern chart data") {
  const auto chart = lantern_chart();
  CHECK(chart->genus() == 3);
  CHECK(chart->curves().size() == 7);
  CHECK(chart->lanterns().size() == 1);
  const auto& t = chart->lanterns().front();
  int eps_pairs = 0, eps_other = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) eps_pairs += chart->disjoint(t.eps[i], t.eps[j]);
    for (const auto& x : {t.alpha, t.beta, t.gamma}) eps_other += chart->disjoint(t.eps[i], x);
  }
  CHECK(eps_pairs == 6);
  CHECK(eps_other == 12);
  CHECK_FALSE(chart->disjoint("alpha", "beta"));
  CHECK_FALSE(chart->disjoint("beta", "gamma"));
  CHECK_FALSE(chart->disjoint("alpha", "gamma"));
}

TEST_CASE("lantern homology matches the polygon model") {
  const auto chart = lantern_chart();
  for (const auto& [name, polygon] : oracle::lantern_polygons()) {
    INFO(name);
    CHECK(chart->curve(name).homology == oracle_class(polygon));
    CHECK_FALSE(chart->curve(name).separating);
  }
}

TEST_CASE("chart consistency: disjoint pairs have zero pairing") {
  for (const auto& chart : {lantern_chart(), standard_chart(1), standard_chart(2), standard_chart(4)}) {
    for (const auto& [x, y] : chart->disjoint_pairs()) {
      CHECK(intersection_pairing(chart->curve(x).homology, chart->curve(y).homology) == 0);
    }
  }
}

TEST_CASE("lantern identity under rho") {
  const auto chart = lantern_chart();
  const IntMatrix lhs = rho(*chart, word("f_gamma.f_beta.f_alpha"));
  const IntMatrix rhs = rho(*chart, word("f_1.f_2.f_3.f_4"));
  CHECK(lhs == rhs);
  CHECK(lhs != identity(6));
}

TEST_CASE("theta sequence") {
  const auto thetas = theta_sequence();
  REQUIRE(thetas.size() == 8);
  CHECK(to_string(thetas[0]) == "f_1^-1.f_gamma.f_2^-1.f_beta.f_3^-1.f_alpha.f_4^-1");
  for (std::size_t k = 0; k < thetas.size(); ++k) CHECK(thetas[k].size() == 7 + k);
  LetterSequence theta6 = thetas[0];
  theta6.push_back({"4", 1});
  CHECK(thetas[1] == theta6);
  CHECK(thetas[7].size() == 14);
}

TEST_CASE("reduce examples") {
  const auto chart = lantern_chart();
  CHECK(reduce(*chart, word("f_alpha^2.f_alpha^-2")).empty());
  const auto thetas = theta_sequence();
  ReduceTrace trace;
  CHECK(reduce(*chart, TwistWord(thetas[0]), &trace).empty());
  CHECK(trace.lantern_moves >= 1);
  CHECK(reduce(*chart, TwistWord(thetas[0]).inverse()).empty());
  ReduceTrace trace0;
  CHECK(reduce(*chart, TwistWord(thetas[7]), &trace0).empty());
  CHECK(trace0.lantern_moves == 0);
  // the lantern relation itself
  CHECK(reduce(*chart, word("f_gamma.f_beta.f_alpha.f_4^-1.f_3^-1.f_2^-1.f_1^-1")).empty());
  // alpha and beta do not commute
  CHECK(reduce(*chart, word("f_alpha.f_beta.f_alpha^-1.f_beta^-1")).size() == 4);
  CHECK_THROWS_AS(reduce(*chart, word("f_zeta")), Error);
}

TEST_CASE("reduce properties on random words") {
  const auto chart = lantern_chart();
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const auto w = random_word(rng, *chart, 12, 2);
    ReduceTrace trace;
    const auto r = reduce(*chart, w, &trace);
    CHECK(rho(*chart, r) == rho(*chart, w));
    CHECK(reduce(*chart, r) == r);
    CHECK(r.length() <= w.length());
    for (const auto& s : trace.swaps) CHECK(chart->disjoint(s.left, s.right));
  }
}

TEST_CASE("normal form orders commuting letters") {
  const auto chart = lantern_chart();
  CHECK(normal_form(*chart, word("f_alpha.f_1")).str() == "f_1.f_alpha");
  CHECK(normal_form(*chart, word("f_4.f_1.f_alpha.f_4^-1")).str() == "f_1.f_alpha");
  CHECK(normal_form(*chart, word("f_beta.f_alpha")).str() == "f_beta.f_alpha");
}

TEST_CASE("standard charts") {
  const auto g2 = standard_chart(2);
  CHECK(g2->genus() == 2);
  CHECK(g2->has_curve("a1"));
  CHECK(g2->has_curve("c1"));
  CHECK(g2->curve("s1").separating);
  CHECK(g2->disjoint("a1", "a2"));
  CHECK_FALSE(g2->disjoint("a1", "b1"));
  CHECK(reduce(*g2, word("f_a1.f_a2.f_a1^-1.f_a2^-1")).empty());
  CHECK_THROWS_AS(standard_chart(0), Error);
}

TEST_CASE("chart invariants are enforced") {
  std::map<std::string, CurveData> curves;
  IntVector a(2), b(2);
  a << 1, 0;
  b << 0, 1;
  curves["a"] = {a, false};
  curves["b"] = {b, false};
  CHECK_THROWS_AS(SurfaceChart("bad", 1, curves, {{"a", "b"}}, {}), Error);
  CHECK_THROWS_AS(SurfaceChart("bad", 1, curves, {{"a", "z"}}, {}), Error);
  IntVector two(2);
  two << 2, 0;
  auto nonprim = curves;
  nonprim["c"] = {two, false};
  CHECK_THROWS_AS(SurfaceChart("bad", 1, nonprim, {}, {}), Error);
  auto fake_sep = curves;
  fake_sep["s"] = {a, true};
  CHECK_THROWS_AS(SurfaceChart("bad", 1, fake_sep, {}, {}), Error);
  CHECK_NOTHROW(SurfaceChart("ok", 1, curves, {}, {}));
}

TEST_CASE("chart registry") {
  ChartRegistry reg;
  CHECK(reg.resolve("lantern3") == lantern_chart());
  CHECK(reg.resolve("std2")->genus() == 2);
  CHECK(ChartRegistry::is_builtin_name("std7"));
  CHECK_FALSE(ChartRegistry::is_builtin_name("std"));
  CHECK_THROWS_AS(reg.resolve("mine"), Error);
  std::map<std::string, CurveData> curves;
  IntVector a(2);
  a << 1, 0;
  curves["a"] = {a, false};
  reg.add(std::make_shared<const SurfaceChart>("mine", 1, curves, std::set<std::pair<std::string, std::string>>{},
                                               std::vector<LanternTuple>{}));
  CHECK(reg.resolve("mine")->genus() == 1);
  CHECK_THROWS_AS(reg.add(std::make_shared<const SurfaceChart>("lantern3", 1, curves,
                                                               std::set<std::pair<std::string, std::string>>{},
                                                               std::vector<LanternTuple>{})),
                  Error);
}

TEST_CASE("symplectic carrying") {
  const auto chart = lantern_chart();
  const IntVector& beta = chart->curve("beta").homology;
  const IntVector& e2 = chart->curve("2").homology;
  const IntMatrix m = symplectic_carrying(e2, beta);
  CHECK(is_symplectic(m));
  CHECK(IntVector(e2 * m) == beta);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    IntVector u(6), v(6);
    for (int i = 0; i < 6; ++i) {
      u(i) = d(rng);
      v(i) = d(rng);
    }
    if (!is_primitive(u) || !is_primitive(v)) continue;
    const IntMatrix c = symplectic_carrying(u, v);
    CHECK(is_symplectic(c));
    CHECK(IntVector(u * c) == v);
  }
}
