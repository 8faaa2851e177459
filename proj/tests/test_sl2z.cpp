#include "haken/sl2z.hpp"

#include "doctest.h"

#include <random>

using namespace haken;

namespace {

Mat2 mat(long a, long b, long c, long d) { return Mat2(a, b, c, d); }

TorusTwistWord random_word(std::mt19937_64& rng, int max_letters, int max_exp) {
  std::uniform_int_distribution<int> len(0, max_letters);
  std::uniform_int_distribution<int> gen(0, 1);
  std::uniform_int_distribution<int> ex(1, max_exp);
  std::uniform_int_distribution<int> sgn(0, 1);
  TorusTwistWord w;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    const int e = ex(rng) * (sgn(rng) ? 1 : -1);
    w.push_back({gen(rng) ? TorusGenerator::L : TorusGenerator::R, Integer(e)});
  }
  return w;
}

}  // namespace

TEST_CASE("eval_torus_word examples") {
  CHECK(eval_torus_word(TorusTwistWord{}) == Mat2::identity());
  CHECK(eval_torus_word(TorusTwistWord::parse("L")) == mat(1, 0, 1, 1));
  CHECK(eval_torus_word(TorusTwistWord::parse("R.L")) == mat(2, 1, 1, 1));
  CHECK(eval_torus_word(TorusTwistWord::parse("R^-3")) == mat(1, -3, 0, 1));
}

TEST_CASE("determinant is checked") {
  CHECK_THROWS_AS(mat(1, 1, 1, 1), Error);
  CHECK_THROWS_AS(parse_matrix<Integer>("2 0 0 1"), Error);
  CHECK_THROWS_AS(parse_matrix<Integer>("1 0 0"), Error);
  CHECK_THROWS_AS(parse_matrix<Integer>("1 0 x 1"), Error);
}

TEST_CASE("word text format") {
  const auto w = TorusTwistWord::parse("R.L^-1.R");
  CHECK(w.size() == 3);
  CHECK(w.str() == "R.L^-1.R");
  CHECK(TorusTwistWord::parse("L.L^2").str() == "L^3");
  CHECK(TorusTwistWord::parse("L.L^-1").empty());
  CHECK(TorusTwistWord::parse("id").empty());
  CHECK(TorusTwistWord{}.str() == "id");
  CHECK_THROWS_AS(TorusTwistWord::parse("L..R"), Error);
  CHECK_THROWS_AS(TorusTwistWord::parse("X"), Error);
  CHECK_THROWS_AS(TorusTwistWord::parse("L^"), Error);
}

TEST_CASE("factor examples") {
  CHECK(factor(Mat2::identity()).empty());
  CHECK(factor(mat(1, 0, 1, 1)) == TorusTwistWord::parse("L"));
  const Mat2 minus = mat(-1, 0, 0, -1);
  CHECK(eval_torus_word(factor(minus)) == minus);
  // (R.L^-1.R)^2 = -I by direct multiplication
  const Mat2 s = mat(1, 1, 0, 1) * mat(1, 0, -1, 1) * mat(1, 1, 0, 1);
  CHECK(s == mat(0, 1, -1, 0));
  CHECK(s * s == minus);
  CHECK(eval_torus_word(minus_identity_word<Integer>()) == minus);
}

TEST_CASE("factor handles large entries") {
  // (R.L)^150 has Fibonacci entries, the slowest case for Euclid
  TorusTwistWord w;
  for (int i = 0; i < 150; ++i) w = w * TorusTwistWord::parse("R.L");
  const Mat2 m = eval_torus_word(w);
  const auto f = factor(m);
  CHECK(eval_torus_word(f) == m);
  CHECK(f.size() <= 310);
}

TEST_CASE("factor round-trip on random words") {
  std::mt19937_64 rng(20240501);
  for (int trial = 0; trial < 500; ++trial) {
    const auto w = random_word(rng, 10, 5);
    const Mat2 m = eval_torus_word(w);
    for (const Mat2& target : {m, Mat2(-m)}) {
      const auto f = factor(target);
      REQUIRE(eval_torus_word(f) == target);
      for (std::size_t i = 1; i < f.size(); ++i) {
        CHECK(f.letters()[i].generator != f.letters()[i - 1].generator);
      }
    }
  }
}

TEST_CASE("eval is a monoid morphism") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_word(rng, 6, 4);
    const auto y = random_word(rng, 6, 4);
    CHECK(eval_torus_word(x * y) == eval_torus_word(x) * eval_torus_word(y));
    CHECK(eval_torus_word(x.inverse()) == eval_torus_word(x).inverse());
  }
}

TEST_CASE("single_twist_class table") {
  struct Row {
    TorusGenerator g;
    int e;
    int chirality;
    bool has_conjugator;
  };
  const Row rows[] = {{TorusGenerator::L, 1, 1, false},
                      {TorusGenerator::L, -1, -1, false},
                      {TorusGenerator::R, 1, -1, true},
                      {TorusGenerator::R, -1, 1, true}};
  for (const auto& row : rows) {
    const TorusLetter<Integer> letter{row.g, Integer(row.e)};
    const auto cls = single_twist_class(letter);
    CHECK(cls.chirality == row.chirality);
    CHECK(cls.conjugator.empty() != row.has_conjugator);
    const Mat2 c = eval_torus_word(cls.conjugator);
    CHECK(c * generator_power(letter.generator, letter.exponent) * c.inverse() == Mat2::twist_l(row.chirality));
  }
  const Mat2 s = eval_torus_word(quarter_turn_word<Integer>());
  CHECK(s * Mat2::twist_r() * s.inverse() == Mat2::twist_l(-1));
  CHECK_THROWS_AS(single_twist_class(TorusLetter<Integer>{TorusGenerator::L, Integer(2)}), Error);
}

TEST_CASE("templated on scalar") {
  using M = SL2<long long>;
  const auto w = BasicTorusWord<long long>::parse("R^2.L^-3");
  const M m = eval_torus_word(w);
  CHECK(m == M(-5, 2, -3, 1));
  CHECK(eval_torus_word(factor(m)) == m);
}
