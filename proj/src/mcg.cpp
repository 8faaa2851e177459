#include "haken/mcg.hpp"

#include "haken/sl2z.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace haken {

namespace {

std::pair<std::string, std::string> ordered(std::string_view x, std::string_view y) {
  return x < y ? std::pair<std::string, std::string>(x, y) : std::pair<std::string, std::string>(y, x);
}

IntVector vec(std::initializer_list<long> entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (long e : entries) v(i++) = Integer(e);
  return v;
}

}  // namespace

bool is_valid_curve_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

SurfaceChart::SurfaceChart(std::string name, int genus, std::map<std::string, CurveData> curves,
                           std::set<std::pair<std::string, std::string>> disjoint_pairs, std::vector<LanternTuple> lanterns)
    : name_(std::move(name)), genus_(genus), curves_(std::move(curves)), lanterns_(std::move(lanterns)) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::MalformedInput, "chart '" + name_ + "': " + what);
  };
  if (genus_ < 1) fail("genus must be at least 1");
  for (const auto& [curve, data] : curves_) {
    if (!is_valid_curve_name(curve)) fail("invalid curve name '" + curve + "'");
    if (data.homology.size() != 2 * genus_) fail("curve '" + curve + "' homology has wrong length");
    const bool zero = data.homology.isZero();
    if (data.separating && !zero) fail("separating curve '" + curve + "' must have zero homology");
    if (!data.separating && (zero || !is_primitive(data.homology))) {
      fail("non-separating curve '" + curve + "' must have primitive homology");
    }
  }
  for (const auto& [x, y] : disjoint_pairs) {
    if (x == y) fail("curve '" + x + "' declared disjoint from itself");
    if (!has_curve(x) || !has_curve(y)) fail("disjoint pair names unknown curve");
    if (intersection_pairing(curves_.at(x).homology, curves_.at(y).homology) != 0) {
      fail("disjoint curves '" + x + "' and '" + y + "' have nonzero algebraic intersection");
    }
    disjoint_.insert(ordered(x, y));
  }
  for (const auto& t : lanterns_) {
    const auto members = t.members();
    for (const auto& m : members) {
      if (!has_curve(m)) fail("lantern names unknown curve '" + m + "'");
    }
    std::set<std::string> distinct(members.begin(), members.end());
    if (distinct.size() != members.size()) fail("lantern tuple repeats a curve");
    for (const auto& e : t.eps) {
      for (const auto& m : members) {
        if (m != e && !disjoint(e, m)) fail("lantern boundary curve '" + e + "' must be disjoint from '" + m + "'");
      }
    }
  }
}

const CurveData& SurfaceChart::curve(std::string_view name) const {
  auto it = curves_.find(std::string(name));
  if (it == curves_.end()) {
    throw Error(ErrorCode::UnknownCurve, "chart '" + name_ + "' has no curve '" + std::string(name) + "'");
  }
  return it->second;
}

bool SurfaceChart::disjoint(std::string_view x, std::string_view y) const {
  return disjoint_.count(ordered(x, y)) != 0;
}

bool operator==(const SurfaceChart& x, const SurfaceChart& y) {
  if (x.name_ != y.name_ || x.genus_ != y.genus_ || x.disjoint_ != y.disjoint_ || x.lanterns_ != y.lanterns_) {
    return false;
  }
  if (x.curves_.size() != y.curves_.size()) return false;
  for (const auto& [name, data] : x.curves_) {
    auto it = y.curves_.find(name);
    if (it == y.curves_.end() || it->second.separating != data.separating || it->second.homology != data.homology) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// TwistWord

TwistWord::TwistWord(const LetterSequence& letters) {
  for (const auto& l : letters) push_back(l);
}

TwistWord::TwistWord(std::initializer_list<TwistLetter> letters) {
  for (const auto& l : letters) push_back(l);
}

TwistWord TwistWord::twist(std::string curve, Integer exponent) {
  TwistWord w;
  w.push_back({std::move(curve), std::move(exponent)});
  return w;
}

void TwistWord::push_back(const TwistLetter& l) {
  if (l.exponent == 0) return;
  if (!letters_.empty() && letters_.back().curve == l.curve) {
    letters_.back().exponent += l.exponent;
    if (letters_.back().exponent == 0) letters_.pop_back();
    return;
  }
  letters_.push_back(l);
}

Integer TwistWord::length() const {
  Integer n(0);
  for (const auto& l : letters_) n += abs(l.exponent);
  return n;
}

TwistWord TwistWord::inverse() const {
  TwistWord out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back({it->curve, Integer(-it->exponent)});
  return out;
}

LetterSequence TwistWord::unit_letters() const {
  LetterSequence out;
  for (const auto& l : letters_) {
    const Integer step = l.exponent > 0 ? 1 : -1;
    const Integer n = abs(l.exponent);
    for (Integer i = 0; i < n; ++i) out.push_back({l.curve, step});
  }
  return out;
}

TwistWord operator*(const TwistWord& x, const TwistWord& y) {
  TwistWord out = x;
  for (const auto& l : y.letters_) out.push_back(l);
  return out;
}

std::string to_string(const LetterSequence& letters) {
  if (letters.empty()) return "id";
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += '.';
    out += "f_" + letters[i].curve;
    if (letters[i].exponent != 1) out += "^" + letters[i].exponent.get_str();
  }
  return out;
}

std::string TwistWord::str() const { return to_string(letters_); }

LetterSequence parse_letters(std::string_view text) {
  text = detail::trim(text);
  LetterSequence out;
  if (detail::is_identity_spelling(text)) return out;
  for (std::string_view piece : detail::split_letters(text)) {
    if (piece.substr(0, 2) != "f_") {
      throw Error(ErrorCode::MalformedInput, "twist letter must start with 'f_': '" + std::string(piece) + "'");
    }
    piece.remove_prefix(2);
    std::string_view name = piece;
    Integer e = 1;
    if (auto caret = piece.find('^'); caret != std::string_view::npos) {
      name = piece.substr(0, caret);
      e = parse_integer(piece.substr(caret + 1));
      if (e == 0) throw Error(ErrorCode::MalformedInput, "zero exponent in twist word");
    }
    if (!is_valid_curve_name(name)) {
      throw Error(ErrorCode::MalformedInput, "invalid curve name '" + std::string(name) + "'");
    }
    out.push_back({std::string(name), e});
  }
  return out;
}

TwistWord TwistWord::parse(std::string_view text) { return TwistWord(parse_letters(text)); }

// ---------------------------------------------------------------------------
// Homological representation

IntMatrix transvection(const SurfaceChart& chart, std::string_view curve, const Integer& exponent) {
  const CurveData& data = chart.curve(curve);
  return transvection_matrix(data.homology, exponent);
}

IntMatrix rho(const SurfaceChart& chart, const LetterSequence& w) {
  const Eigen::Index n = 2 * chart.genus();
  IntMatrix out = IntMatrix::Identity(n, n);
  for (const auto& l : w) out = IntMatrix(out * transvection(chart, l.curve, l.exponent));
  return out;
}

IntMatrix rho(const SurfaceChart& chart, const TwistWord& w) { return rho(chart, w.letters()); }

// ---------------------------------------------------------------------------
// Rewriting

namespace {

class Rewriter {
 public:
  Rewriter(const SurfaceChart& chart, ReduceTrace* trace) : chart_(chart), trace_(trace) {}

  bool commutes(const std::string& x, const std::string& y) const { return chart_.disjoint(x, y); }

  // Right-angled normal form: each new letter slides left past letters on
  // disjoint curves until it meets its own curve (merge) or a blocker.
  LetterSequence cancel(const LetterSequence& in) const {
    LetterSequence stack;
    for (const auto& l : in) {
      chart_.curve(l.curve);
      if (l.exponent == 0) continue;
      std::size_t k = stack.size();
      bool merged = false;
      while (k > 0) {
        const auto& prev = stack[k - 1];
        if (prev.curve == l.curve) {
          for (std::size_t s = k; s < stack.size(); ++s) record(stack[s].curve, l.curve);
          stack[k - 1].exponent += l.exponent;
          if (stack[k - 1].exponent == 0) stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(k - 1));
          merged = true;
          break;
        }
        if (!commutes(prev.curve, l.curve)) break;
        --k;
      }
      if (!merged) stack.push_back(l);
    }
    return stack;
  }

  // Lexicographically least representative under commutation.
  LetterSequence order(LetterSequence rest) const {
    LetterSequence out;
    while (!rest.empty()) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < rest.size(); ++i) {
        if (rest[i].curve >= rest[best].curve) continue;
        bool movable = true;
        for (std::size_t j = 0; j < i && movable; ++j) {
          movable = rest[j].curve != rest[i].curve && commutes(rest[j].curve, rest[i].curve);
        }
        if (movable) best = i;
      }
      for (std::size_t j = best; j > 0; --j) record(rest[j - 1].curve, rest[best].curve);
      out.push_back(rest[best]);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return out;
  }

  TwistWord normalize(const LetterSequence& in) const { return TwistWord(order(cancel(in))); }

  void record(const std::string& left, const std::string& right) const {
    if (trace_) trace_->swaps.push_back({left, right});
  }

 private:
  const SurfaceChart& chart_;
  ReduceTrace* trace_;
};

struct Substitution {
  std::vector<TwistLetter> pattern;
  std::vector<TwistLetter> replacement;
};

std::vector<TwistLetter> signed_letters(const std::vector<std::string>& names, int sign) {
  std::vector<TwistLetter> out;
  for (const auto& n : names) out.push_back({n, sign});
  return out;
}

// Both directions of the lantern relation, including the cyclic rotations
// of f_gamma f_beta f_alpha (the boundary product commutes with all three)
// and the inverse relation.
std::vector<Substitution> lantern_substitutions(const LanternTuple& t) {
  const std::vector<std::vector<std::string>> rotations = {
      {t.gamma, t.beta, t.alpha}, {t.beta, t.alpha, t.gamma}, {t.alpha, t.gamma, t.beta}};
  std::vector<std::string> eps(t.eps.begin(), t.eps.end());
  std::sort(eps.begin(), eps.end());
  std::vector<std::vector<std::string>> eps_orders;
  do {
    eps_orders.push_back(eps);
  } while (std::next_permutation(eps.begin(), eps.end()));

  std::vector<Substitution> out;
  for (const auto& rot : rotations) {
    std::vector<std::string> inv_rot(rot.rbegin(), rot.rend());
    out.push_back({signed_letters(rot, 1), signed_letters({t.eps.begin(), t.eps.end()}, 1)});
    out.push_back({signed_letters(inv_rot, -1), signed_letters({t.eps.begin(), t.eps.end()}, -1)});
    for (const auto& order : eps_orders) {
      out.push_back({signed_letters(order, 1), signed_letters(rot, 1)});
      out.push_back({signed_letters(order, -1), signed_letters(inv_rot, -1)});
    }
  }
  return out;
}

// Pulls the pattern letters leftwards onto position `start`, passing only
// letters on disjoint curves. Returns the rewritten unit sequence.
std::optional<LetterSequence> apply_at(const Rewriter& rw, const LetterSequence& units, std::size_t start,
                                       const Substitution& sub, std::vector<CommutationStep>& swaps) {
  swaps.clear();
  const auto& pat = sub.pattern;
  if (units[start].curve != pat[0].curve || units[start].exponent != pat[0].exponent) return std::nullopt;
  std::vector<bool> chosen(units.size(), false);
  chosen[start] = true;
  for (std::size_t m = 1; m < pat.size(); ++m) {
    bool found = false;
    for (std::size_t j = start + 1; j < units.size(); ++j) {
      if (chosen[j]) continue;
      if (units[j].curve == pat[m].curve) {
        if (units[j].exponent != pat[m].exponent) return std::nullopt;
        chosen[j] = true;
        found = true;
        break;
      }
      if (!rw.commutes(units[j].curve, pat[m].curve)) return std::nullopt;
      swaps.push_back({units[j].curve, pat[m].curve});
    }
    if (!found) return std::nullopt;
  }
  LetterSequence out(units.begin(), units.begin() + static_cast<std::ptrdiff_t>(start));
  out.insert(out.end(), sub.replacement.begin(), sub.replacement.end());
  for (std::size_t j = start; j < units.size(); ++j) {
    if (!chosen[j]) out.push_back(units[j]);
  }
  return out;
}

bool shorter(const TwistWord& x, const TwistWord& y) {
  const Integer lx = x.length(), ly = y.length();
  if (lx != ly) return lx < ly;
  return x.str() < y.str();
}

// Lantern search expands exponents into unit letters; beyond this length the
// word is returned in normal form only.
constexpr long kMaxLanternSearchLength = 4096;

}  // namespace

TwistWord normal_form(const SurfaceChart& chart, const TwistWord& w, ReduceTrace* trace) {
  return Rewriter(chart, trace).normalize(w.letters());
}

TwistWord reduce(const SurfaceChart& chart, const TwistWord& w, ReduceTrace* trace) {
  Rewriter rw(chart, trace);
  Rewriter quiet(chart, nullptr);
  TwistWord current = rw.normalize(w.letters());
  if (chart.lanterns().empty()) return current;

  std::vector<Substitution> subs;
  for (const auto& t : chart.lanterns()) {
    auto s = lantern_substitutions(t);
    subs.insert(subs.end(), s.begin(), s.end());
  }

  while (current.length() <= kMaxLanternSearchLength) {
    const LetterSequence units = current.unit_letters();
    std::optional<TwistWord> best;
    std::optional<LetterSequence> best_units;
    std::vector<CommutationStep> swaps, best_swaps;
    for (const auto& sub : subs) {
      for (std::size_t start = 0; start < units.size(); ++start) {
        auto rewritten = apply_at(quiet, units, start, sub, swaps);
        if (!rewritten) continue;
        TwistWord candidate = quiet.normalize(*rewritten);
        if (candidate.length() >= current.length()) continue;
        if (!best || shorter(candidate, *best)) {
          best = std::move(candidate);
          best_units = std::move(rewritten);
          best_swaps = swaps;
        }
      }
    }
    if (!best) break;
    // Replay the winning rewrite through the tracing rewriter.
    if (trace) {
      trace->swaps.insert(trace->swaps.end(), best_swaps.begin(), best_swaps.end());
      ++trace->lantern_moves;
    }
    current = rw.normalize(*best_units);
  }
  return current;
}

// ---------------------------------------------------------------------------
// Built-in charts

ChartPtr lantern_chart() {
  // Symplectic basis (a1,b1,a2,b2,a3,b3): a_i is the boundary curve i of the
  // four-holed sphere P, b_i the double of an arc in P from boundary 4 to
  // boundary i. A curve in P enclosing holes S has class sum_{i in S} a_i.
  static const ChartPtr chart = [] {
    std::map<std::string, CurveData> curves;
    curves["1"] = {vec({1, 0, 0, 0, 0, 0}), false};
    curves["2"] = {vec({0, 0, 1, 0, 0, 0}), false};
    curves["3"] = {vec({0, 0, 0, 0, 1, 0}), false};
    curves["4"] = {vec({-1, 0, -1, 0, -1, 0}), false};
    curves["alpha"] = {vec({1, 0, 1, 0, 0, 0}), false};
    curves["beta"] = {vec({0, 0, 1, 0, 1, 0}), false};
    curves["gamma"] = {vec({1, 0, 0, 0, 1, 0}), false};
    LanternTuple t{"alpha", "beta", "gamma", {"1", "2", "3", "4"}};
    std::set<std::pair<std::string, std::string>> disjoint;
    for (const auto& e : t.eps) {
      for (const auto& m : t.members()) {
        if (m != e) disjoint.insert(ordered(e, m));
      }
    }
    return std::make_shared<const SurfaceChart>("lantern3", 3, std::move(curves), std::move(disjoint),
                                                std::vector<LanternTuple>{t});
  }();
  return chart;
}

std::vector<LetterSequence> theta_sequence() {
  LetterSequence theta = {{"1", -1}, {"gamma", 1}, {"2", -1}, {"beta", 1}, {"3", -1}, {"alpha", 1}, {"4", -1}};
  const LetterSequence tail = {{"4", 1}, {"alpha", -1}, {"3", 1}, {"beta", -1}, {"2", 1}, {"gamma", -1}, {"1", 1}};
  std::vector<LetterSequence> out{theta};
  for (const auto& l : tail) {
    theta.push_back(l);
    out.push_back(theta);
  }
  return out;
}

ChartPtr standard_chart(int genus) {
  if (genus < 1) throw Error(ErrorCode::MalformedInput, "standard chart needs genus >= 1");
  const Eigen::Index n = 2 * genus;
  auto basis = [&](Eigen::Index k) {
    IntVector v = IntVector::Zero(n);
    v(k) = 1;
    return v;
  };
  std::map<std::string, CurveData> curves;
  std::set<std::pair<std::string, std::string>> disjoint;
  auto a = [](int i) { return "a" + std::to_string(i); };
  auto b = [](int i) { return "b" + std::to_string(i); };
  auto c = [](int i) { return "c" + std::to_string(i); };
  for (int i = 1; i <= genus; ++i) {
    curves[a(i)] = {basis(2 * (i - 1)), false};
    curves[b(i)] = {basis(2 * (i - 1) + 1), false};
  }
  for (int i = 1; i < genus; ++i) curves[c(i)] = {IntVector(basis(2 * (i - 1)) - basis(2 * i)), false};
  if (genus >= 2) curves["s1"] = {IntVector::Zero(n), true};

  for (int i = 1; i <= genus; ++i) {
    for (int j = 1; j <= genus; ++j) {
      if (i < j) {
        disjoint.insert(ordered(a(i), a(j)));
        disjoint.insert(ordered(b(i), b(j)));
      }
      if (i != j) disjoint.insert(ordered(a(i), b(j)));
    }
  }
  for (int i = 1; i < genus; ++i) {
    for (int j = 1; j <= genus; ++j) {
      disjoint.insert(ordered(c(i), a(j)));
      if (j != i && j != i + 1) disjoint.insert(ordered(c(i), b(j)));
    }
    for (int j = i + 1; j < genus; ++j) disjoint.insert(ordered(c(i), c(j)));
  }
  if (genus >= 2) {
    for (int j = 1; j <= genus; ++j) {
      disjoint.insert(ordered("s1", a(j)));
      disjoint.insert(ordered("s1", b(j)));
    }
    for (int j = 2; j < genus; ++j) disjoint.insert(ordered("s1", c(j)));
  }
  return std::make_shared<const SurfaceChart>("std" + std::to_string(genus), genus, std::move(curves),
                                              std::move(disjoint), std::vector<LanternTuple>{});
}

// ---------------------------------------------------------------------------
// Registry

bool ChartRegistry::is_builtin_name(std::string_view name) {
  if (name == "lantern3") return true;
  if (name.size() > 3 && name.substr(0, 3) == "std") {
    std::string_view digits = name.substr(3);
    return digits.front() != '0' && std::all_of(digits.begin(), digits.end(), [](char ch) {
             return std::isdigit(static_cast<unsigned char>(ch));
           });
  }
  return false;
}

void ChartRegistry::add(ChartPtr chart) {
  if (is_builtin_name(chart->name())) {
    throw Error(ErrorCode::MalformedInput, "chart name '" + chart->name() + "' is reserved for a built-in chart");
  }
  auto [it, inserted] = user_.emplace(chart->name(), chart);
  if (!inserted && !(*it->second == *chart)) {
    throw Error(ErrorCode::MalformedInput, "chart '" + chart->name() + "' registered twice with different content");
  }
}

ChartPtr ChartRegistry::resolve(std::string_view name) const {
  if (name == "lantern3") return lantern_chart();
  if (is_builtin_name(name)) {
    const int genus = std::stoi(std::string(name.substr(3)));
    if (genus > 64) throw Error(ErrorCode::MalformedInput, "standard chart genus too large");
    return standard_chart(genus);
  }
  auto it = user_.find(std::string(name));
  if (it == user_.end()) throw Error(ErrorCode::MalformedInput, "unknown chart '" + std::string(name) + "'");
  return it->second;
}

}  // namespace haken
