#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace kgsf {

// Arbitrary precision scalars. Expression templates are disabled so that
// the types behave as plain values inside Eigen kernels.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Mat<BigInt>;
using IntVector = Vec<BigInt>;
using RatMatrix = Mat<Rational>;
using RatVector = Vec<Rational>;

// Scalar helpers that work for both builtin integers and BigInt.

template <typename Scalar>
Scalar abs_value(const Scalar& a) {
  return a < 0 ? Scalar(-a) : a;
}

/// Quotient rounded toward negative infinity. b must be nonzero.
template <typename Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  Scalar r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

/// Remainder in [0, |b|).
template <typename Scalar>
Scalar floor_mod(const Scalar& a, const Scalar& b) {
  Scalar r = a % b;
  if (r < 0) r += abs_value(b);
  return r;
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
template <typename Scalar>
std::tuple<Scalar, Scalar, Scalar> ext_gcd(const Scalar& a, const Scalar& b) {
  Scalar old_r = a, r = b;
  Scalar old_s = 1, s = 0;
  Scalar old_t = 0, t = 1;
  while (r != 0) {
    Scalar q = old_r / r;
    Scalar tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

template <typename Scalar>
Scalar gcd_value(const Scalar& a, const Scalar& b) {
  return std::get<0>(ext_gcd(a, b));
}

inline IntMatrix identity_matrix(Eigen::Index n) { return IntMatrix::Identity(n, n); }

IntVector unit_vector(Eigen::Index n, Eigen::Index i);

/// Exact conversion of an integer matrix to rationals.
RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

/// Least common multiple of the denominators of v (1 for an empty vector).
BigInt common_denominator(const RatVector& v);

/// v scaled by its common denominator; exact.
IntVector clear_denominators(const RatVector& v);

IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
IntVector from_list(const std::vector<long>& values);

std::string format_vector(const IntVector& v);
std::string format_vector(const RatVector& v);
std::string format_matrix(const IntMatrix& m);

/// Integer matrix power; exponent 0 gives the identity.
IntMatrix matrix_power(const IntMatrix& m, std::size_t exponent);

bool is_zero(const IntMatrix& m);
bool is_zero(const IntVector& v);

}  // namespace kgsf
