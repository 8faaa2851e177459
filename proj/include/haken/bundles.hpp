#pragma once

// Oriented boundary labels S(g) and the gluing matcher.
//
// A block's boundary list already carries the outward orientation: the
// component written S(g^-1) is S(g) with its orientation reversed. Two slots
// may be glued when one label is (up to a checked witness) the
// monodromy-inverse of the other. Opaque manifolds have no monodromy and
// carry an explicit sign instead.

#include "haken/mcg.hpp"
#include "haken/sl2z.hpp"
#include "haken/symplectic.hpp"

#include <optional>
#include <string>
#include <variant>

namespace haken {

struct TorusBundle {
  Mat2 monodromy;
  friend bool operator==(const TorusBundle&, const TorusBundle&) = default;
};

struct SurfaceBundle {
  ChartPtr chart;
  TwistWord monodromy;
  friend bool operator==(const SurfaceBundle& x, const SurfaceBundle& y) {
    return x.chart->name() == y.chart->name() && x.monodromy == y.monodromy;
  }
};

/// Fiber of a product bundle: a genus or an opaque surface name.
using Fiber = std::variant<int, std::string>;

struct ProductBundle {
  Fiber fiber;
  friend bool operator==(const ProductBundle&, const ProductBundle&) = default;
};

struct OpaqueManifold {
  std::string name;
  int sign = 1;
  friend bool operator==(const OpaqueManifold&, const OpaqueManifold&) = default;
};

using ManifoldLabel = std::variant<TorusBundle, SurfaceBundle, ProductBundle, OpaqueManifold>;

inline ManifoldLabel torus_label(const Mat2& m) { return TorusBundle{m}; }
inline ManifoldLabel torus_label(const TorusTwistWord& w) { return TorusBundle{eval_torus_word(w)}; }
inline ManifoldLabel surface_label(ChartPtr chart, TwistWord w) { return SurfaceBundle{std::move(chart), std::move(w)}; }
inline ManifoldLabel product_label(Fiber f) { return ProductBundle{std::move(f)}; }
inline ManifoldLabel opaque_label(std::string name, int sign) { return OpaqueManifold{std::move(name), sign}; }

/// Orientation reversal: S(g) -> S(g^-1); opaque labels flip their sign.
ManifoldLabel inverse(const ManifoldLabel& label);

std::string kind_name(const ManifoldLabel& label);
std::string to_string(const Fiber& fiber);
/// T2[[1,0],[1,1]], lantern3(f_alpha), F2xS1, M1(+)
std::string to_string(const ManifoldLabel& label);

struct BoundarySlot {
  std::string id;
  ManifoldLabel label;
  friend bool operator==(const BoundarySlot&, const BoundarySlot&) = default;
};

struct InverseExact {
  friend bool operator==(const InverseExact&, const InverseExact&) = default;
};
struct ReducesToInverse {
  friend bool operator==(const ReducesToInverse&, const ReducesToInverse&) = default;
};
struct ConjugateWord {
  std::variant<TorusTwistWord, TwistWord> word;
  friend bool operator==(const ConjugateWord&, const ConjugateWord&) = default;
};
struct HomologyConjugate {
  IntMatrix matrix;
  friend bool operator==(const HomologyConjugate& x, const HomologyConjugate& y) {
    return x.matrix.rows() == y.matrix.rows() && x.matrix.cols() == y.matrix.cols() && x.matrix == y.matrix;
  }
};
struct OpaqueMatch {
  friend bool operator==(const OpaqueMatch&, const OpaqueMatch&) = default;
};

using GlueWitness = std::variant<InverseExact, ReducesToInverse, ConjugateWord, HomologyConjugate, OpaqueMatch>;

/// Witness for the same gluing read from the other side.
GlueWitness inverse_witness(const GlueWitness& w);
std::string kind_name(const GlueWitness& w);

enum class WitnessTier {
  Exact,          // certifies the homeomorphism symbolically
  NecessaryOnly,  // homological evidence only
};

enum class GlueFailure { None, KindMismatch, InapplicableWitness, CheckFailed };

struct GlueResult {
  bool accepted = false;
  WitnessTier tier = WitnessTier::Exact;
  GlueFailure failure = GlueFailure::None;
  std::string diagnostic;
};

/// Checks that b is the orientation-reversed partner of a under w.
///
///   InverseExact      m(b) == m(a)^-1 (matrix equality or literal word inverse)
///   ReducesToInverse  reduce(w_a w_b) is empty
///   ConjugateWord(c)  m(b) == c m(a)^-1 c^-1
///   HomologyConjugate rho(b) == M rho(a)^-1 M^-1, M symplectic (necessary only)
///   OpaqueMatch       same name, opposite signs
///
/// A product slot F x S1 pairs with a surface slot over a chart of the same
/// genus whose word is trivial (InverseExact: empty; ReducesToInverse:
/// reduces to empty).
GlueResult match_gluing(const BoundarySlot& a, const BoundarySlot& b, const GlueWitness& w);

}  // namespace haken
