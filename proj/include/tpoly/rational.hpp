#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpoly {

/// Exact arbitrary-precision rational scalar, always kept in lowest terms
/// with a positive denominator (GMP canonical form).
using Rational = boost::multiprecision::mpq_rational;

/// Exact arbitrary-precision integer scalar.
using Int = boost::multiprecision::mpz_int;

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

/// Raised on malformed or shape-incompatible inputs.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when marginals violate the feasibility identities (e.g. the grand
/// totals of the axis sums disagree).
class InfeasibleMarginalsError : public InputError {
 public:
  explicit InfeasibleMarginalsError(const std::string& what) : InputError(what) {}
};

/// Raised when a right-hand side lies on a wall of the chamber complex and a
/// non-degenerate polytope was required.
class DegenerateRhsError : public std::runtime_error {
 public:
  explicit DegenerateRhsError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the staircase-path machinery when a tie breaks the genericity
/// assumptions it relies on.
class NonGenericMarginalsError : public std::runtime_error {
 public:
  explicit NonGenericMarginalsError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a vector configuration has the wrong corank for an operation.
class UnsupportedCorankError : public InputError {
 public:
  explicit UnsupportedCorankError(const std::string& what) : InputError(what) {}
};

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Int& z) { return z.sign(); }

/// Parses "p/q" or "p" into an exact rational.
inline Rational parse_rational(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw InputError("cannot parse rational value '" + s + "'");
  }
}

inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const Int& z) { return z.str(); }

/// Least common multiple of the entry denominators.
inline Int common_denominator(const RatVector& v) {
  Int lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    lcm = boost::multiprecision::lcm(lcm, Int(denominator(v(i))));
  return lcm;
}

/// Scales a rational vector to the shortest parallel integer vector
/// (clears denominators, divides by the gcd of the numerators).
inline IntVector to_primitive_integer(const RatVector& v) {
  Int lcm = common_denominator(v);
  IntVector w(v.size());
  Int g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    w(i) = Int(numerator(v(i))) * (lcm / Int(denominator(v(i))));
    g = boost::multiprecision::gcd(g, w(i));
  }
  if (g > 1)
    for (Eigen::Index i = 0; i < v.size(); ++i) w(i) /= g;
  return w;
}

/// Divides an integer vector by the gcd of its entries (in place semantics).
inline IntVector reduce_primitive(IntVector w) {
  Int g = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) g = boost::multiprecision::gcd(g, w(i));
  if (g > 1)
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) /= g;
  return w;
}

inline RatVector to_rational(const IntVector& v) {
  RatVector w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) w(i) = Rational(v(i));
  return w;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix w(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) w(i, j) = Rational(m(i, j));
  return w;
}

}  // namespace tpoly
