#pragma once

// Exact SL(2,Z) arithmetic and factorization of torus monodromies into
// words in the two standard Dehn twists
//
//   L = [[1,0],[1,1]]   R = [[1,1],[0,1]]
//
// Matrices act on row vectors, so a word is evaluated as the left-to-right
// product of its letters and the leftmost letter is applied first.

#include "haken/integer.hpp"

#include <Eigen/Core>

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace haken {

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

template <typename Scalar>
Scalar parse_scalar(std::string_view text) {
  if constexpr (std::is_same_v<Scalar, Integer>) {
    return parse_integer(text);
  } else {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    Scalar out{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
      throw Error(ErrorCode::MalformedInput, "not an integer: '" + std::string(text) + "'");
    }
    return out;
  }
}

template <typename Scalar>
std::string scalar_to_string(const Scalar& v) {
  if constexpr (std::is_same_v<Scalar, Integer>) {
    return v.get_str();
  } else {
    return std::to_string(v);
  }
}

// Splits "a.b.c" on '.', rejecting empty pieces.
inline std::vector<std::string_view> split_letters(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    if (dot == std::string_view::npos) dot = text.size();
    std::string_view piece = text.substr(start, dot - start);
    if (piece.empty()) throw Error(ErrorCode::MalformedInput, "empty letter in word '" + std::string(text) + "'");
    out.push_back(piece);
    start = dot + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool is_identity_spelling(std::string_view s) { return s.empty() || s == "id" || s == "1"; }

}  // namespace detail

/// 2x2 integer matrix of determinant one.
template <typename Scalar>
class SL2 {
 public:
  using Matrix = Eigen::Matrix<Scalar, 2, 2>;

  SL2() : m_(Matrix::Identity()) {}

  /// Row-major entries; throws MalformedInput unless a*d - b*c == 1.
  SL2(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
    m_ << a, b, c, d;
    check();
  }

  explicit SL2(const Matrix& m) : m_(m) { check(); }

  static SL2 identity() { return SL2(); }
  static SL2 twist_l(const Scalar& k = Scalar(1)) { return unchecked(Scalar(1), Scalar(0), k, Scalar(1)); }
  static SL2 twist_r(const Scalar& k = Scalar(1)) { return unchecked(Scalar(1), k, Scalar(0), Scalar(1)); }

  const Matrix& matrix() const { return m_; }
  const Scalar& a() const { return m_(0, 0); }
  const Scalar& b() const { return m_(0, 1); }
  const Scalar& c() const { return m_(1, 0); }
  const Scalar& d() const { return m_(1, 1); }
  std::array<Scalar, 4> entries() const { return {a(), b(), c(), d()}; }

  SL2 inverse() const { return unchecked(d(), Scalar(-b()), Scalar(-c()), a()); }
  SL2 operator-() const { return unchecked(Scalar(-a()), Scalar(-b()), Scalar(-c()), Scalar(-d())); }

  bool is_identity() const { return m_ == Matrix::Identity(); }

  friend SL2 operator*(const SL2& x, const SL2& y) {
    SL2 out;
    out.m_ = x.m_ * y.m_;
    return out;
  }
  SL2& operator*=(const SL2& y) {
    m_ = Matrix(m_ * y.m_);
    return *this;
  }
  friend bool operator==(const SL2& x, const SL2& y) { return x.m_ == y.m_; }
  friend bool operator!=(const SL2& x, const SL2& y) { return !(x == y); }

  /// "[[a,b],[c,d]]"
  std::string str() const {
    using detail::scalar_to_string;
    return "[[" + scalar_to_string(a()) + "," + scalar_to_string(b()) + "],[" + scalar_to_string(c()) + "," +
           scalar_to_string(d()) + "]]";
  }

  friend std::ostream& operator<<(std::ostream& os, const SL2& m) { return os << m.str(); }

 private:
  static SL2 unchecked(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
    SL2 out;
    out.m_ << a, b, c, d;
    return out;
  }

  void check() const {
    Scalar det = m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0);
    if (det != 1) {
      throw Error(ErrorCode::MalformedInput,
                  "matrix " + str() + " has determinant " + detail::scalar_to_string(det) + ", expected 1");
    }
  }

  Matrix m_;
};

using Mat2 = SL2<Integer>;

enum class TorusGenerator { L, R };

template <typename Scalar>
struct TorusLetter {
  TorusGenerator generator;
  Scalar exponent;

  friend bool operator==(const TorusLetter& x, const TorusLetter& y) {
    return x.generator == y.generator && x.exponent == y.exponent;
  }
};

/// Word in L and R with adjacent letters of the same generator merged and no
/// zero exponents. The empty word is the identity.
template <typename Scalar>
class BasicTorusWord {
 public:
  using Letter = TorusLetter<Scalar>;

  BasicTorusWord() = default;
  BasicTorusWord(std::initializer_list<Letter> letters) {
    for (const auto& l : letters) push_back(l);
  }
  explicit BasicTorusWord(const std::vector<Letter>& letters) {
    for (const auto& l : letters) push_back(l);
  }

  static BasicTorusWord letter(TorusGenerator g, const Scalar& e) { return BasicTorusWord{Letter{g, e}}; }

  void push_back(const Letter& l) {
    if (l.exponent == 0) return;
    if (!letters_.empty() && letters_.back().generator == l.generator) {
      letters_.back().exponent += l.exponent;
      if (letters_.back().exponent == 0) letters_.pop_back();
      return;
    }
    letters_.push_back(l);
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  BasicTorusWord inverse() const {
    BasicTorusWord out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(Letter{it->generator, Scalar(-it->exponent)});
    return out;
  }

  /// Every letter rewritten as |exponent| letters of exponent +-1 (not merged).
  std::vector<Letter> unit_letters() const {
    std::vector<Letter> out;
    for (const auto& l : letters_) {
      Scalar step = l.exponent > 0 ? Scalar(1) : Scalar(-1);
      for (Scalar i = 0; i < detail::abs_value(l.exponent); ++i) out.push_back(Letter{l.generator, step});
    }
    return out;
  }

  friend BasicTorusWord operator*(const BasicTorusWord& x, const BasicTorusWord& y) {
    BasicTorusWord out = x;
    for (const auto& l : y.letters_) out.push_back(l);
    return out;
  }
  friend bool operator==(const BasicTorusWord& x, const BasicTorusWord& y) { return x.letters_ == y.letters_; }
  friend bool operator!=(const BasicTorusWord& x, const BasicTorusWord& y) { return !(x == y); }

  /// "R.L^-1.R"; the empty word prints as "id".
  std::string str() const {
    if (letters_.empty()) return "id";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += '.';
      out += letters_[i].generator == TorusGenerator::L ? 'L' : 'R';
      if (letters_[i].exponent != 1) out += "^" + detail::scalar_to_string(letters_[i].exponent);
    }
    return out;
  }

  static BasicTorusWord parse(std::string_view text) {
    text = detail::trim(text);
    BasicTorusWord out;
    if (detail::is_identity_spelling(text)) return out;
    for (std::string_view piece : detail::split_letters(text)) {
      TorusGenerator g;
      if (piece.front() == 'L') {
        g = TorusGenerator::L;
      } else if (piece.front() == 'R') {
        g = TorusGenerator::R;
      } else {
        throw Error(ErrorCode::MalformedInput, "torus letter must be L or R: '" + std::string(piece) + "'");
      }
      piece.remove_prefix(1);
      Scalar e(1);
      if (!piece.empty()) {
        if (piece.front() != '^') throw Error(ErrorCode::MalformedInput, "expected '^' in torus letter");
        piece.remove_prefix(1);
        e = detail::parse_scalar<Scalar>(piece);
        if (e == 0) throw Error(ErrorCode::MalformedInput, "zero exponent in torus word");
      }
      out.push_back(Letter{g, e});
    }
    return out;
  }

 private:
  std::vector<Letter> letters_;
};

using TorusTwistWord = BasicTorusWord<Integer>;

template <typename Scalar>
SL2<Scalar> generator_power(TorusGenerator g, const Scalar& e) {
  return g == TorusGenerator::L ? SL2<Scalar>::twist_l(e) : SL2<Scalar>::twist_r(e);
}

/// Left-to-right product of generator powers; the empty word is the identity.
template <typename Scalar>
SL2<Scalar> eval_torus_word(const BasicTorusWord<Scalar>& w) {
  SL2<Scalar> out;
  for (const auto& l : w.letters()) out *= generator_power(l.generator, l.exponent);
  return out;
}

/// S = R.L^-1.R, the quarter turn [[0,1],[-1,0]]; S^2 = -I.
template <typename Scalar>
BasicTorusWord<Scalar> quarter_turn_word() {
  using W = BasicTorusWord<Scalar>;
  return W{{TorusGenerator::R, Scalar(1)}, {TorusGenerator::L, Scalar(-1)}, {TorusGenerator::R, Scalar(1)}};
}

template <typename Scalar>
BasicTorusWord<Scalar> minus_identity_word() {
  // S*S merges to R.L^-1.R^2.L^-1.R.
  auto s = quarter_turn_word<Scalar>();
  return s * s;
}

/// Factors m into L/R letters by Euclidean reduction of the first column.
///
/// Left multiplication by L^k adds k times row 0 to row 1 and R^k adds k
/// times row 1 to row 0, so the first column (a, c) runs the Euclidean
/// algorithm. What remains is +-R^b; -I is absorbed by a fixed word.
template <typename Scalar>
BasicTorusWord<Scalar> factor(const SL2<Scalar>& m) {
  using W = BasicTorusWord<Scalar>;
  using detail::abs_value;
  Scalar a = m.a(), b = m.b(), c = m.c(), d = m.d();
  std::vector<TorusLetter<Scalar>> applied;  // P_1, P_2, ... in order of application

  auto apply_l = [&](const Scalar& k) {  // L^k * M
    c += k * a;
    d += k * b;
    applied.push_back({TorusGenerator::L, k});
  };
  auto apply_r = [&](const Scalar& k) {  // R^k * M
    a += k * c;
    b += k * d;
    applied.push_back({TorusGenerator::R, k});
  };

  while (c != 0) {
    if (a == 0) {
      apply_r(Scalar(1));
      continue;
    }
    if (abs_value(c) >= abs_value(a)) {
      Scalar q = c / a;
      apply_l(Scalar(-q));
    } else {
      Scalar q = a / c;
      apply_r(Scalar(-q));
    }
  }
  // Now c == 0 and a == d == +-1. M = P_1^-1 ... P_n^-1 * [[a,b],[0,a]].
  W out;
  for (const auto& p : applied) out.push_back({p.generator, Scalar(-p.exponent)});
  if (a == 1) {
    out.push_back({TorusGenerator::R, b});
  } else {
    // [[-1,b],[0,-1]] = -I * R^-b
    out = out * minus_identity_word<Scalar>();
    out.push_back({TorusGenerator::R, Scalar(-b)});
  }
  return out;
}

template <typename Scalar>
struct SingleTwistClass {
  int chirality;                      // +1 or -1
  BasicTorusWord<Scalar> conjugator;  // c with c * letter * c^-1 == L^chirality
};

/// Fixed table conjugating each single twist to L^{+1} or L^{-1}:
///   L -> (+, id)  L^-1 -> (-, id)  R -> (-, S)  R^-1 -> (+, S)
/// using S R S^-1 = L^-1 with S = R.L^-1.R.
template <typename Scalar>
SingleTwistClass<Scalar> single_twist_class(const TorusLetter<Scalar>& letter) {
  if (letter.exponent != 1 && letter.exponent != -1) {
    throw Error(ErrorCode::NotSingleTwist,
                "not a single twist: exponent " + detail::scalar_to_string(letter.exponent));
  }
  const int e = letter.exponent == 1 ? 1 : -1;
  if (letter.generator == TorusGenerator::L) return {e, BasicTorusWord<Scalar>{}};
  return {-e, quarter_turn_word<Scalar>()};
}

/// Reads "a b c d" (whitespace separated, row-major).
template <typename Scalar>
SL2<Scalar> parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.size() != 4) throw Error(ErrorCode::MalformedInput, "matrix needs four integers 'a b c d'");
  return SL2<Scalar>(detail::parse_scalar<Scalar>(tokens[0]), detail::parse_scalar<Scalar>(tokens[1]),
                     detail::parse_scalar<Scalar>(tokens[2]), detail::parse_scalar<Scalar>(tokens[3]));
}

}  // namespace haken
