#pragma once

// Integer symplectic linear algebra on H_1 of a closed genus-g surface.
//
// Coordinates are ordered (a1, b1, a2, b2, ..., ag, bg) and the intersection
// form is block diagonal with blocks [[0,1],[-1,0]], so <a_i, b_i> = 1.
// Matrices act on row vectors: x -> x * M.

#include "haken/integer.hpp"

#include <Eigen/Core>

#include <string>
#include <utility>

namespace haken {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using IntMatrix = DenseMatrix<Integer>;
using IntVector = RowVector<Integer>;

template <typename Scalar>
DenseMatrix<Scalar> symplectic_form(Eigen::Index genus) {
  DenseMatrix<Scalar> j = DenseMatrix<Scalar>::Zero(2 * genus, 2 * genus);
  for (Eigen::Index i = 0; i < genus; ++i) {
    j(2 * i, 2 * i + 1) = Scalar(1);
    j(2 * i + 1, 2 * i) = Scalar(-1);
  }
  return j;
}

/// <x, y> = x J y^T
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar intersection_pairing(const Eigen::MatrixBase<DerivedX>& x,
                                               const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  Scalar out(0);
  for (Eigen::Index i = 0; i + 1 < x.size(); i += 2) {
    out += x(i) * y(i + 1) - x(i + 1) * y(i);
  }
  return out;
}

template <typename Derived>
bool is_symplectic(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols() || m.rows() % 2 != 0) return false;
  DenseMatrix<Scalar> j = symplectic_form<Scalar>(m.rows() / 2);
  DenseMatrix<Scalar> mm = m;
  return DenseMatrix<Scalar>(mm.transpose() * j * mm) == j;
}

/// Inverse of a symplectic matrix: M^-1 = -J M^T J.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> symplectic_inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  DenseMatrix<Scalar> j = symplectic_form<Scalar>(m.rows() / 2);
  DenseMatrix<Scalar> mt = m.transpose();
  return DenseMatrix<Scalar>(-(j * mt * j));
}

/// Homological action of the e-th power of a Dehn twist about a curve of
/// class c: x -> x + e <x,c> c, i.e. I + e J c^T c.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> transvection_matrix(const Eigen::MatrixBase<Derived>& c,
                                                         const typename Derived::Scalar& e) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = c.size();
  DenseMatrix<Scalar> j = symplectic_form<Scalar>(n / 2);
  RowVector<Scalar> cv = c;
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Identity(n, n);
  out += DenseMatrix<Scalar>(j * cv.transpose() * cv) * e;
  return out;
}

template <typename Derived>
Integer gcd_of_entries(const Eigen::MatrixBase<Derived>& v) {
  Integer g(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, Integer(v(i)));
  return g;
}

template <typename Derived>
bool is_primitive(const Eigen::MatrixBase<Derived>& v) {
  return gcd_of_entries(v) == 1;
}

namespace detail {

// Accumulates right-multiplications by elementary symplectic matrices.
class SymplecticReducer {
 public:
  explicit SymplecticReducer(const IntVector& v) : v_(v), p_(IntMatrix::Identity(v.size(), v.size())) {}

  const IntVector& vector() const { return v_; }
  const IntMatrix& transform() const { return p_; }

  // SL(2) block [[p,q],[r,s]] on pair i.
  void block(Eigen::Index i, const Integer& p, const Integer& q, const Integer& r, const Integer& s) {
    IntMatrix e = IntMatrix::Identity(v_.size(), v_.size());
    e(2 * i, 2 * i) = p;
    e(2 * i, 2 * i + 1) = q;
    e(2 * i + 1, 2 * i) = r;
    e(2 * i + 1, 2 * i + 1) = s;
    apply(e);
  }

  // a_i += k a_j and b_j -= k b_i on coordinates.
  void mix(Eigen::Index i, Eigen::Index j, const Integer& k) {
    IntMatrix e = IntMatrix::Identity(v_.size(), v_.size());
    e(2 * j, 2 * i) = k;
    e(2 * i + 1, 2 * j + 1) = -k;
    apply(e);
  }

  void swap_pairs(Eigen::Index i, Eigen::Index j) {
    IntMatrix e = IntMatrix::Zero(v_.size(), v_.size());
    for (Eigen::Index k = 0; k < v_.size(); ++k) e(k, k) = 1;
    for (Eigen::Index off = 0; off < 2; ++off) {
      e(2 * i + off, 2 * i + off) = 0;
      e(2 * j + off, 2 * j + off) = 0;
      e(2 * i + off, 2 * j + off) = 1;
      e(2 * j + off, 2 * i + off) = 1;
    }
    apply(e);
  }

 private:
  void apply(const IntMatrix& e) {
    v_ = IntVector(v_ * e);
    p_ = IntMatrix(p_ * e);
  }

  IntVector v_;
  IntMatrix p_;
};

// Symplectic P with v * P = a1 for primitive v.
inline IntMatrix symplectic_to_first_basis_vector(const IntVector& v) {
  if (v.size() == 0 || v.size() % 2 != 0) throw Error(ErrorCode::MalformedInput, "vector of odd length");
  if (!is_primitive(v)) throw Error(ErrorCode::MalformedInput, "vector is not primitive");
  const Eigen::Index genus = v.size() / 2;
  SymplecticReducer red(v);

  // Euclid inside each pair: (a, b) -> (gcd, 0).
  auto clear_pair = [&](Eigen::Index i) {
    while (red.vector()(2 * i + 1) != 0) {
      const Integer a = red.vector()(2 * i);
      const Integer b = red.vector()(2 * i + 1);
      if (a == 0) {
        red.block(i, 0, -1, 1, 0);  // (a, b) -> (b, -a)
        continue;
      }
      // (a, b) * [[1,-q],[0,1]] = (a, b - q a)
      Integer q = b / a;
      red.block(i, 1, Integer(-q), 0, 1);
      if (red.vector()(2 * i + 1) == 0) break;
      const Integer a2 = red.vector()(2 * i);
      const Integer b2 = red.vector()(2 * i + 1);
      // (a, b) * [[1,0],[-q,1]] = (a - q b, b)
      Integer q2 = a2 / b2;
      red.block(i, 1, 0, Integer(-q2), 1);
    }
  };
  for (Eigen::Index i = 0; i < genus; ++i) clear_pair(i);

  // Euclid across pairs on the a-coordinates (b-coordinates stay zero).
  for (;;) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = 0; i < genus; ++i) {
      if (red.vector()(2 * i) == 0) continue;
      if (pivot < 0 || abs(red.vector()(2 * i)) < abs(red.vector()(2 * pivot))) pivot = i;
    }
    bool others = false;
    for (Eigen::Index i = 0; i < genus; ++i) {
      if (i == pivot || red.vector()(2 * i) == 0) continue;
      others = true;
      Integer q = red.vector()(2 * i) / red.vector()(2 * pivot);
      red.mix(i, pivot, Integer(-q));
    }
    if (!others) {
      if (pivot != 0) red.swap_pairs(0, pivot);
      if (red.vector()(0) == -1) red.block(0, -1, 0, 0, -1);
      break;
    }
  }
  return red.transform();
}

}  // namespace detail

/// Symplectic M with from * M = to, for primitive classes of equal length.
inline IntMatrix symplectic_carrying(const IntVector& from, const IntVector& to) {
  if (from.size() != to.size()) throw Error(ErrorCode::MalformedInput, "vectors of different length");
  IntMatrix p_from = detail::symplectic_to_first_basis_vector(from);
  IntMatrix p_to = detail::symplectic_to_first_basis_vector(to);
  return IntMatrix(p_from * symplectic_inverse(p_to));
}

}  // namespace haken
