#include "haken/bundles.hpp"

namespace haken {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

GlueResult accept(WitnessTier tier = WitnessTier::Exact) { return {true, tier, GlueFailure::None, {}}; }

GlueResult reject(GlueFailure why, std::string diagnostic) { return {false, WitnessTier::Exact, why, std::move(diagnostic)}; }

GlueResult inapplicable(const GlueWitness& w, const ManifoldLabel& a, const ManifoldLabel& b) {
  return reject(GlueFailure::InapplicableWitness,
                "witness " + kind_name(w) + " does not apply to " + kind_name(a) + "/" + kind_name(b) + " gluing");
}

GlueResult mismatch(const std::string& what, const ManifoldLabel& a, const ManifoldLabel& b) {
  return reject(GlueFailure::CheckFailed, "monodromy mismatch (" + what + "): " + to_string(a) + " vs " + to_string(b));
}

GlueResult match_torus(const TorusBundle& a, const TorusBundle& b, const GlueWitness& w, const ManifoldLabel& la,
                       const ManifoldLabel& lb) {
  const Mat2& ma = a.monodromy;
  const Mat2& mb = b.monodromy;
  if (std::holds_alternative<InverseExact>(w)) {
    return mb == ma.inverse() ? accept() : mismatch("not inverse", la, lb);
  }
  if (std::holds_alternative<ReducesToInverse>(w)) {
    return (ma * mb).is_identity() ? accept() : mismatch("product is not identity", la, lb);
  }
  if (const auto* cw = std::get_if<ConjugateWord>(&w)) {
    const auto* word = std::get_if<TorusTwistWord>(&cw->word);
    if (!word) return inapplicable(w, la, lb);
    const Mat2 c = eval_torus_word(*word);
    return mb == c * ma.inverse() * c.inverse() ? accept() : mismatch("conjugator does not relate inverse", la, lb);
  }
  return inapplicable(w, la, lb);
}

bool reduces_to_identity(const SurfaceChart& chart, const TwistWord& w) { return reduce(chart, w).empty(); }

GlueResult match_surface(const SurfaceBundle& a, const SurfaceBundle& b, const GlueWitness& w,
                         const ManifoldLabel& la, const ManifoldLabel& lb) {
  if (a.chart->name() != b.chart->name()) {
    return reject(GlueFailure::KindMismatch,
                  "surface bundles over different charts '" + a.chart->name() + "' and '" + b.chart->name() + "'");
  }
  const SurfaceChart& chart = *a.chart;
  const TwistWord& wa = a.monodromy;
  const TwistWord& wb = b.monodromy;
  try {
    if (std::holds_alternative<InverseExact>(w)) {
      return wb == wa.inverse() ? accept() : mismatch("not the literal inverse word", la, lb);
    }
    if (std::holds_alternative<ReducesToInverse>(w)) {
      return reduces_to_identity(chart, wa * wb) || reduces_to_identity(chart, wb * wa)
                 ? accept()
                 : mismatch("product does not reduce to the empty word", la, lb);
    }
    if (const auto* cw = std::get_if<ConjugateWord>(&w)) {
      const auto* c = std::get_if<TwistWord>(&cw->word);
      if (!c) return inapplicable(w, la, lb);
      // b^-1 c a^-1 c^-1 or its cyclic conjugate a^-1 c^-1 b^-1 c.
      const TwistWord x = wb.inverse() * *c * wa.inverse() * c->inverse();
      const TwistWord y = wa.inverse() * c->inverse() * wb.inverse() * *c;
      return reduces_to_identity(chart, x) || reduces_to_identity(chart, y)
                 ? accept()
                 : mismatch("conjugation word does not reduce to the empty word", la, lb);
    }
    if (const auto* hc = std::get_if<HomologyConjugate>(&w)) {
      const Eigen::Index n = 2 * chart.genus();
      if (hc->matrix.rows() != n || hc->matrix.cols() != n) {
        return reject(GlueFailure::CheckFailed, "homology witness has wrong size for chart '" + chart.name() + "'");
      }
      if (!is_symplectic(hc->matrix)) return reject(GlueFailure::CheckFailed, "homology witness is not symplectic");
      const IntMatrix ra = rho(chart, wa);
      const IntMatrix rb = rho(chart, wb);
      const IntMatrix expected = hc->matrix * symplectic_inverse(ra) * symplectic_inverse(hc->matrix);
      return rb == expected ? accept(WitnessTier::NecessaryOnly)
                            : mismatch("homology actions are not conjugate-inverse", la, lb);
    }
  } catch (const Error& e) {
    return reject(GlueFailure::CheckFailed, e.what());
  }
  return inapplicable(w, la, lb);
}

GlueResult match_product_surface(const ProductBundle& p, const SurfaceBundle& s, const GlueWitness& w,
                                 const ManifoldLabel& la, const ManifoldLabel& lb) {
  const int* genus = std::get_if<int>(&p.fiber);
  if (!genus || *genus != s.chart->genus()) {
    return reject(GlueFailure::KindMismatch, "product fiber " + to_string(p.fiber) + " does not match chart '" +
                                                 s.chart->name() + "' of genus " + std::to_string(s.chart->genus()));
  }
  try {
    if (std::holds_alternative<InverseExact>(w)) {
      return s.monodromy.empty() ? accept() : mismatch("surface monodromy is not the empty word", la, lb);
    }
    if (std::holds_alternative<ReducesToInverse>(w)) {
      return reduces_to_identity(*s.chart, s.monodromy) ? accept()
                                                        : mismatch("surface monodromy does not reduce", la, lb);
    }
  } catch (const Error& e) {
    return reject(GlueFailure::CheckFailed, e.what());
  }
  return inapplicable(w, la, lb);
}

}  // namespace

ManifoldLabel inverse(const ManifoldLabel& label) {
  return std::visit(overloaded{
                        [](const TorusBundle& t) -> ManifoldLabel { return TorusBundle{t.monodromy.inverse()}; },
                        [](const SurfaceBundle& s) -> ManifoldLabel {
                          return SurfaceBundle{s.chart, s.monodromy.inverse()};
                        },
                        [](const ProductBundle& p) -> ManifoldLabel { return p; },
                        [](const OpaqueManifold& o) -> ManifoldLabel { return OpaqueManifold{o.name, -o.sign}; },
                    },
                    label);
}

std::string kind_name(const ManifoldLabel& label) {
  static const char* names[] = {"torus", "surface", "product", "opaque"};
  return names[label.index()];
}

std::string to_string(const Fiber& fiber) {
  if (const int* g = std::get_if<int>(&fiber)) return "F" + std::to_string(*g);
  return std::get<std::string>(fiber);
}

std::string to_string(const ManifoldLabel& label) {
  return std::visit(overloaded{
                        [](const TorusBundle& t) { return "T2" + t.monodromy.str(); },
                        [](const SurfaceBundle& s) { return s.chart->name() + "(" + s.monodromy.str() + ")"; },
                        [](const ProductBundle& p) { return to_string(p.fiber) + "xS1"; },
                        [](const OpaqueManifold& o) { return o.name + (o.sign > 0 ? "(+)" : "(-)"); },
                    },
                    label);
}

GlueWitness inverse_witness(const GlueWitness& w) {
  if (const auto* cw = std::get_if<ConjugateWord>(&w)) {
    return std::visit([](const auto& word) -> GlueWitness { return ConjugateWord{word.inverse()}; }, cw->word);
  }
  if (const auto* hc = std::get_if<HomologyConjugate>(&w)) {
    return HomologyConjugate{symplectic_inverse(hc->matrix)};
  }
  return w;
}

std::string kind_name(const GlueWitness& w) {
  static const char* names[] = {"inverse_exact", "reduces_to_inverse", "conjugate_word", "homology_conjugate",
                                "opaque_match"};
  return names[w.index()];
}

GlueResult match_gluing(const BoundarySlot& a, const BoundarySlot& b, const GlueWitness& w) {
  const ManifoldLabel& la = a.label;
  const ManifoldLabel& lb = b.label;

  if (const auto* ta = std::get_if<TorusBundle>(&la)) {
    if (const auto* tb = std::get_if<TorusBundle>(&lb)) return match_torus(*ta, *tb, w, la, lb);
  }
  if (const auto* sa = std::get_if<SurfaceBundle>(&la)) {
    if (const auto* sb = std::get_if<SurfaceBundle>(&lb)) return match_surface(*sa, *sb, w, la, lb);
    if (const auto* pb = std::get_if<ProductBundle>(&lb)) return match_product_surface(*pb, *sa, w, la, lb);
  }
  if (const auto* pa = std::get_if<ProductBundle>(&la)) {
    if (const auto* sb = std::get_if<SurfaceBundle>(&lb)) return match_product_surface(*pa, *sb, w, la, lb);
    if (const auto* pb = std::get_if<ProductBundle>(&lb)) {
      if (!std::holds_alternative<InverseExact>(w) && !std::holds_alternative<ReducesToInverse>(w)) {
        return inapplicable(w, la, lb);
      }
      return pa->fiber == pb->fiber ? accept() : mismatch("different fibers", la, lb);
    }
  }
  if (const auto* oa = std::get_if<OpaqueManifold>(&la)) {
    if (const auto* ob = std::get_if<OpaqueManifold>(&lb)) {
      if (!std::holds_alternative<OpaqueMatch>(w)) return inapplicable(w, la, lb);
      if (oa->name != ob->name) return mismatch("different opaque manifolds", la, lb);
      if (oa->sign != -ob->sign) return mismatch("opaque signs must be opposite", la, lb);
      return accept();
    }
  }
  return reject(GlueFailure::KindMismatch, "cannot glue " + kind_name(la) + " slot '" + a.id + "' to " +
                                               kind_name(lb) + " slot '" + b.id + "'");
}

}  // namespace haken
