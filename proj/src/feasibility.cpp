#include "kgsf/feasibility.hpp"

#include <cmath>

namespace kgsf {

OrthantResult lattice_meets_orthant(const IntMatrix& b) {
  OrthantResult out;
  const Eigen::Index d = b.rows();
  const Eigen::Index r = b.cols();
  if (d == 0 || r == 0 || is_zero(b)) return out;
  const RatMatrix bq = to_rational(b);
  for (Eigen::Index i = 0; i < d; ++i) {
    RatLP lp = make_lp(r);
    for (Eigen::Index k = 0; k < d; ++k)
      lp.add_row(bq.row(k).transpose(), Relation::GreaterEq, Rational(k == i ? 1 : 0));
    auto z = exact_lp_feasible(lp);
    if (!z) continue;
    out.found = true;
    out.z = clear_denominators(*z);
    out.x = b * out.z;
    return out;
  }
  return out;
}

OrthantResult bounded_orthant_oracle(const IntMatrix& b, long radius) {
  const Eigen::Index d = b.rows();
  if (radius < 1) throw Error(ErrorCode::BoxTooLarge, "oracle radius must be positive");
  if (static_cast<double>(d) * std::log(static_cast<double>(radius + 1)) > std::log(kMaxOracleBox))
    throw Error(ErrorCode::BoxTooLarge, "box [0," + std::to_string(radius) + "]^" + std::to_string(d) + " is too large");
  OrthantResult out;
  if (d == 0) return out;
  auto form = hnf(b);
  const Lattice lattice = Lattice::span(b);
  std::vector<long> x(static_cast<std::size_t>(d), 0);
  while (true) {
    // odometer increment; stops after wrapping back to zero
    std::size_t pos = 0;
    while (pos < x.size() && x[pos] == radius) x[pos++] = 0;
    if (pos == x.size()) break;
    ++x[pos];
    IntVector xv = from_list(x);
    auto m = lattice.contains(xv);
    if (!m.member) continue;
    out.found = true;
    out.x = xv;
    out.z = form.U.leftCols(form.rank()) * m.coefficients;
    return out;
  }
  return out;
}

bool is_graph_trace(const TwoGraph& g, const RatVector& tau) {
  if (tau.size() != g.num_vertices()) return false;
  for (Eigen::Index v = 0; v < tau.size(); ++v)
    if (tau(v) <= 0) return false;
  for (Color c : kColors) {
    RatVector image = to_rational(g.adjacency(c)) * tau;
    if (image != tau) return false;
  }
  return true;
}

std::optional<GraphTrace> faithful_graph_trace(const TwoGraph& g) {
  const Eigen::Index n = g.num_vertices();
  RatLP lp = make_lp(n);
  const RatMatrix id = RatMatrix::Identity(n, n);
  for (Color c : kColors) {
    const RatMatrix rows = id - to_rational(g.adjacency(c));
    for (Eigen::Index v = 0; v < n; ++v) lp.add_row(rows.row(v).transpose(), Relation::Equal, Rational(0));
  }
  for (Eigen::Index v = 0; v < n; ++v) lp.add_row(id.col(v), Relation::GreaterEq, Rational(1));
  auto tau = exact_lp_feasible(lp);
  if (!tau) return std::nullopt;
  return GraphTrace{*tau};
}

}  // namespace kgsf
