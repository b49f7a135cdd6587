#include "kgsf/numeric.hpp"

#include <sstream>

namespace kgsf {

IntVector unit_vector(Eigen::Index n, Eigen::Index i) {
  IntVector v = IntVector::Zero(n);
  v(i) = 1;
  return v;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
  return out;
}

BigInt common_denominator(const RatVector& v) {
  BigInt l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    BigInt den = boost::multiprecision::denominator(v(i));
    l = l / gcd_value(l, den) * den;
  }
  return l;
}

IntVector clear_denominators(const RatVector& v) {
  const BigInt l = common_denominator(v);
  IntVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Rational scaled = v(i) * Rational(l);
    out(i) = boost::multiprecision::numerator(scaled);
  }
  return out;
}

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.front().size());
  IntMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  return m;
}

IntVector from_list(const std::vector<long>& values) {
  IntVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

namespace {

template <typename V>
std::string format_any(const V& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v(i);
  }
  os << ')';
  return os.str();
}

}  // namespace

std::string format_vector(const IntVector& v) { return format_any(v); }
std::string format_vector(const RatVector& v) { return format_any(v); }

std::string format_matrix(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix matrix_power(const IntMatrix& m, std::size_t exponent) {
  IntMatrix result = IntMatrix::Identity(m.rows(), m.cols());
  IntMatrix base = m;
  while (exponent > 0) {
    if (exponent & 1U) result = (result * base).eval();
    exponent >>= 1U;
    if (exponent > 0) base = (base * base).eval();
  }
  return result;
}

bool is_zero(const IntMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

bool is_zero(const IntVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

}  // namespace kgsf
