#pragma once

#include "tpoly/linalg.hpp"
#include "tpoly/models.hpp"
#include "tpoly/simplex.hpp"

namespace tpoly {

/// A configuration of N vectors in Z^d, stored as matrix columns. Labels are
/// the column positions 0..N-1.
struct VectorConfig {
  IntMatrix V;  // d x N
  Eigen::Index dim() const { return V.rows(); }
  Eigen::Index size() const { return V.cols(); }
};

/// Gale transform of the columns of B: a configuration whose row space is the
/// orthogonal complement of the row space of B. Rows are scaled to primitive
/// integer vectors; the kernel basis comes from the RREF of B, so the result
/// is canonical for a given B.
inline VectorConfig gale_transform(const RatMatrix& B) {
  RatMatrix K = nullspace_basis(B);  // cols(B) x corank
  VectorConfig conf;
  conf.V.resize(K.cols(), K.rows());
  for (Eigen::Index r = 0; r < K.cols(); ++r) {
    IntVector row = to_primitive_integer(RatVector(K.col(r)));
    for (Eigen::Index j = 0; j < K.rows(); ++j) conf.V(r, j) = row(j);
  }
  return conf;
}

inline VectorConfig gale_transform(const ConstraintSystem& sys) {
  return gale_transform(sys.B);
}

/// Configuration of the columns of a constraint system itself (integer 0/1
/// after restriction to independent rows).
inline VectorConfig column_config(const RatMatrix& B_reduced) {
  VectorConfig conf;
  conf.V.resize(B_reduced.rows(), B_reduced.cols());
  for (Eigen::Index i = 0; i < B_reduced.rows(); ++i)
    for (Eigen::Index j = 0; j < B_reduced.cols(); ++j) {
      const Rational& q = B_reduced(i, j);
      if (denominator(q) != 1) throw InputError("column_config expects integer entries");
      conf.V(i, j) = Int(numerator(q));
    }
  return conf;
}

/// cone(V) = R^d, tested exactly by expressing ±e_k as nonnegative
/// combinations.
inline bool is_totally_cyclic(const VectorConfig& conf) {
  const Eigen::Index d = conf.dim();
  RatMatrix A = to_rational(conf.V);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (int s : {1, -1}) {
      RatVector e = RatVector::Zero(d);
      e(k) = s;
      if (!lp_feasible_point(A, e)) return false;
    }
  }
  return true;
}

/// cone(V) is pointed: no nonzero nonnegative combination equals zero.
inline bool is_pointed(const VectorConfig& conf) {
  RatMatrix A(conf.dim() + 1, conf.size());
  A.topRows(conf.dim()) = to_rational(conf.V);
  for (Eigen::Index j = 0; j < conf.size(); ++j) A(conf.dim(), j) = 1;
  RatVector b = RatVector::Zero(conf.dim() + 1);
  b(conf.dim()) = 1;
  return !lp_feasible_point(A, b).has_value();
}

}  // namespace tpoly
