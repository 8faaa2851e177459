#pragma once

// Dehn-twist word calculus on a surface with a declared curve system.
//
// Words are rewritten by free cancellation, commutation of twists about
// declared-disjoint curves and the lantern relation. The homological
// representation rho is a necessary-condition oracle only: it is not
// faithful, so equality under rho never proves two words equal.

#include "haken/integer.hpp"
#include "haken/symplectic.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace haken {

struct CurveData {
  IntVector homology;  // length 2*genus, symplectic coordinates
  bool separating = false;
};

/// Lantern configuration: f_gamma f_beta f_alpha = f_eps1 f_eps2 f_eps3 f_eps4.
struct LanternTuple {
  std::string alpha, beta, gamma;
  std::array<std::string, 4> eps;

  std::array<std::string, 7> members() const { return {alpha, beta, gamma, eps[0], eps[1], eps[2], eps[3]}; }
  friend bool operator==(const LanternTuple&, const LanternTuple&) = default;
};

class SurfaceChart {
 public:
  /// Validates every chart invariant; throws MalformedInput on violation.
  SurfaceChart(std::string name, int genus, std::map<std::string, CurveData> curves,
               std::set<std::pair<std::string, std::string>> disjoint, std::vector<LanternTuple> lanterns);

  const std::string& name() const { return name_; }
  int genus() const { return genus_; }
  const std::map<std::string, CurveData>& curves() const { return curves_; }
  /// Unordered pairs stored with first < second.
  const std::set<std::pair<std::string, std::string>>& disjoint_pairs() const { return disjoint_; }
  const std::vector<LanternTuple>& lanterns() const { return lanterns_; }

  bool has_curve(std::string_view name) const { return curves_.count(std::string(name)) != 0; }
  const CurveData& curve(std::string_view name) const;
  bool disjoint(std::string_view x, std::string_view y) const;

  friend bool operator==(const SurfaceChart& x, const SurfaceChart& y);

 private:
  std::string name_;
  int genus_;
  std::map<std::string, CurveData> curves_;
  std::set<std::pair<std::string, std::string>> disjoint_;
  std::vector<LanternTuple> lanterns_;
};

using ChartPtr = std::shared_ptr<const SurfaceChart>;

bool is_valid_curve_name(std::string_view name);

struct TwistLetter {
  std::string curve;
  Integer exponent;

  friend bool operator==(const TwistLetter& x, const TwistLetter& y) {
    return x.curve == y.curve && x.exponent == y.exponent;
  }
};

/// Letters exactly as written, with no merging.
using LetterSequence = std::vector<TwistLetter>;

/// Word in Dehn twists; adjacent letters on the same curve are merged and
/// zero exponents dropped.
class TwistWord {
 public:
  TwistWord() = default;
  explicit TwistWord(const LetterSequence& letters);
  TwistWord(std::initializer_list<TwistLetter> letters);

  static TwistWord twist(std::string curve, Integer exponent = 1);

  void push_back(const TwistLetter& l);

  const LetterSequence& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  /// Sum of |exponent|.
  Integer length() const;

  TwistWord inverse() const;
  /// Letters split into exponent +-1 pieces (unmerged).
  LetterSequence unit_letters() const;

  friend TwistWord operator*(const TwistWord& x, const TwistWord& y);
  friend bool operator==(const TwistWord& x, const TwistWord& y) { return x.letters_ == y.letters_; }
  friend bool operator!=(const TwistWord& x, const TwistWord& y) { return !(x == y); }

  /// "f_alpha.f_2^-1"; the empty word prints as "id".
  std::string str() const;
  static TwistWord parse(std::string_view text);

 private:
  LetterSequence letters_;
};

std::string to_string(const LetterSequence& letters);
LetterSequence parse_letters(std::string_view text);

/// Homology action of f_curve^exponent; identity for separating curves.
IntMatrix transvection(const SurfaceChart& chart, std::string_view curve, const Integer& exponent);

/// Ordered product of transvections (leftmost letter applied first).
IntMatrix rho(const SurfaceChart& chart, const TwistWord& w);
IntMatrix rho(const SurfaceChart& chart, const LetterSequence& w);

/// One adjacent transposition of letters on distinct curves, as performed by
/// the normal-ordering pass.
struct CommutationStep {
  std::string left, right;
};

struct ReduceTrace {
  std::vector<CommutationStep> swaps;
  int lantern_moves = 0;
};

/// Free cancellation and commutation only: the right-angled normal form,
/// lexicographically least under string order of curve names.
TwistWord normal_form(const SurfaceChart& chart, const TwistWord& w, ReduceTrace* trace = nullptr);

/// normal_form plus lantern substitutions that strictly shorten the word.
/// rho(reduce(w)) == rho(w) and reduce is idempotent.
TwistWord reduce(const SurfaceChart& chart, const TwistWord& w, ReduceTrace* trace = nullptr);

/// Genus-three chart: the double of a four-holed sphere with the seven
/// lantern curves alpha, beta, gamma, 1, 2, 3, 4.
ChartPtr lantern_chart();

/// theta_7 .. theta_0 as literal letter sequences (lengths 7 .. 14).
std::vector<LetterSequence> theta_sequence();

/// Standard chart of genus g: a_i, b_i, chain curves c_i (between handles i
/// and i+1) and the separating curve s1 cutting off the first handle.
ChartPtr standard_chart(int genus);

/// Built-in charts ("lantern3", "std<g>") plus user charts.
class ChartRegistry {
 public:
  static bool is_builtin_name(std::string_view name);

  /// Throws MalformedInput if the name is built in or already registered
  /// with different content.
  void add(ChartPtr chart);
  ChartPtr resolve(std::string_view name) const;
  const std::map<std::string, ChartPtr>& user_charts() const { return user_; }

 private:
  std::map<std::string, ChartPtr> user_;
};

}  // namespace haken
