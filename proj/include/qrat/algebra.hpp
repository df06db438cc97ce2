#pragma once

#include <qrat/core.hpp>
#include <qrat/state_space.hpp>

#include <Eigen/LU>

#include <stdexcept>
#include <vector>

namespace qrat {

// The presence of the constant block decides how a realization evaluates:
// with D it is D + z C (I - zA)^{-1} B, without it is C (I - zA)^{-1} B.
// The combinators below therefore require matching shapes; a vanishing
// constant term must be stored as an explicit zero.

namespace detail {

inline CMat inverse_or_throw(const CMat& M, const char* what) {
  Eigen::FullPivLU<CMat> lu(M);
  if (!lu.isInvertible()) throw numeric_error(what);
  return lu.inverse();
}

}  // namespace detail

// Pointwise sum: block-diagonal state, stacked input map, concatenated
// output map. Constant terms add when present.
inline StateSpace sum_weiz(const StateSpace& f, const StateSpace& g) {
  if (f.out_dim() != g.out_dim() || f.in_dim() != g.in_dim())
    throw std::invalid_argument("sum: output/input dimensions differ");
  if (f.has_d() != g.has_d())
    throw std::invalid_argument("sum: operands have different shapes");
  const Eigen::Index n1 = f.state_dim(), n2 = g.state_dim();
  CMat A = CMat::Zero(n1 + n2, n1 + n2);
  A.topLeftCorner(n1, n1) = f.A;
  A.bottomRightCorner(n2, n2) = g.A;
  CMat B(n1 + n2, f.in_dim());
  B.topRows(n1) = f.B;
  B.bottomRows(n2) = g.B;
  CMat C(f.out_dim(), n1 + n2);
  C.leftCols(n1) = f.C;
  C.rightCols(n2) = g.C;
  if (f.has_d()) return StateSpace(C, A, B, *f.D + *g.D);
  return StateSpace(C, A, B);
}

// Pointwise product of functions written with an explicit constant term,
// F(z) = D + z C (I - zA)^{-1} B. Cascade blocks.
inline StateSpace product_weiz(const StateSpace& f, const StateSpace& g) {
  if (!f.has_d() || !g.has_d())
    throw std::invalid_argument("product: operands must carry constant terms");
  if (f.in_dim() != g.out_dim())
    throw std::invalid_argument("product: inner dimensions differ");
  const Eigen::Index n1 = f.state_dim(), n2 = g.state_dim();
  const CMat D1 = *f.D, D2 = *g.D;
  CMat A = CMat::Zero(n1 + n2, n1 + n2);
  A.topLeftCorner(n1, n1) = f.A;
  A.topRightCorner(n1, n2) = f.B * g.C;
  A.bottomRightCorner(n2, n2) = g.A;
  CMat B(n1 + n2, g.in_dim());
  B.topRows(n1) = f.B * D2;
  B.bottomRows(n2) = g.B;
  CMat C(f.out_dim(), n1 + n2);
  C.leftCols(n1) = f.C;
  C.rightCols(n2) = D1 * g.C;
  return StateSpace(C, A, B, D1 * D2);
}

// Pointwise product of functions written without a constant term,
// F(z) = C (I - zA)^{-1} B. The result is again of that shape.
inline StateSpace product_weiz2(const StateSpace& f, const StateSpace& g) {
  if (f.has_d() || g.has_d())
    throw std::invalid_argument("product_weiz2: operands must not carry D");
  if (f.in_dim() != g.out_dim())
    throw std::invalid_argument("product: inner dimensions differ");
  const Eigen::Index n1 = f.state_dim(), n2 = g.state_dim();
  CMat A = CMat::Zero(n1 + n2, n1 + n2);
  A.topLeftCorner(n1, n1) = f.A;
  A.topRightCorner(n1, n2) = f.B * g.C;
  A.bottomRightCorner(n2, n2) = g.A;
  CMat B(n1 + n2, g.in_dim());
  B.topRows(n1) = f.B * (g.C * g.B);
  B.bottomRows(n2) = g.A * g.B;
  CMat C = CMat::Zero(f.out_dim(), n1 + n2);
  C.leftCols(n1) = f.C;
  return StateSpace(C, A, B);
}

// J-factor product in one shot. Equivalent to left-folding product_weiz,
// but the blocks are written out directly.
inline StateSpace product_chain_weiz(const std::vector<StateSpace>& fs) {
  if (fs.empty()) throw std::invalid_argument("product chain: empty");
  const std::size_t J = fs.size();
  for (std::size_t i = 0; i < J; ++i)
    if (!fs[i].has_d())
      throw std::invalid_argument(
          "product: operands must carry constant terms");
  for (std::size_t i = 0; i + 1 < J; ++i)
    if (fs[i].in_dim() != fs[i + 1].out_dim())
      throw std::invalid_argument("product: inner dimensions differ");

  std::vector<Eigen::Index> off(J + 1, 0);
  for (std::size_t i = 0; i < J; ++i) off[i + 1] = off[i] + fs[i].state_dim();
  const Eigen::Index n = off[J];

  // Product D_a * ... * D_{b-1} applied to the left of M (half-open range).
  auto mid_apply = [&](std::size_t a, std::size_t b, CMat M) {
    for (std::size_t l = b; l-- > a;) M = *fs[l].D * M;
    return M;
  };
  const CMat Iright =
      CMat::Identity(fs[J - 1].in_dim(), fs[J - 1].in_dim());

  CMat A = CMat::Zero(n, n);
  CMat B = CMat::Zero(n, fs[J - 1].in_dim());
  CMat C = CMat::Zero(fs[0].out_dim(), n);
  for (std::size_t i = 0; i < J; ++i) {
    A.block(off[i], off[i], fs[i].state_dim(), fs[i].state_dim()) = fs[i].A;
    for (std::size_t j = i + 1; j < J; ++j)
      A.block(off[i], off[j], fs[i].state_dim(), fs[j].state_dim()) =
          fs[i].B * mid_apply(i + 1, j, fs[j].C);
    B.middleRows(off[i], fs[i].state_dim()) =
        fs[i].B * mid_apply(i + 1, J, Iright);
    C.middleCols(off[i], fs[i].state_dim()) = mid_apply(0, i, fs[i].C);
  }
  return StateSpace(C, A, B, mid_apply(0, J, Iright));
}

// J-factor product for the D-free shape.
inline StateSpace product_chain_weiz2(const std::vector<StateSpace>& fs) {
  if (fs.empty()) throw std::invalid_argument("product chain: empty");
  const std::size_t J = fs.size();
  for (std::size_t i = 0; i < J; ++i)
    if (fs[i].has_d())
      throw std::invalid_argument("product_weiz2: operands must not carry D");
  for (std::size_t i = 0; i + 1 < J; ++i)
    if (fs[i].in_dim() != fs[i + 1].out_dim())
      throw std::invalid_argument("product: inner dimensions differ");

  std::vector<Eigen::Index> off(J + 1, 0);
  for (std::size_t i = 0; i < J; ++i) off[i + 1] = off[i] + fs[i].state_dim();
  const Eigen::Index n = off[J];

  // Product (C_a B_a) * ... * (C_{b-1} B_{b-1}) applied to the left of M.
  auto mid_apply = [&](std::size_t a, std::size_t b, CMat M) {
    for (std::size_t l = b; l-- > a;) M = fs[l].C * (fs[l].B * M);
    return M;
  };
  const CMat Iright =
      CMat::Identity(fs[J - 1].in_dim(), fs[J - 1].in_dim());

  CMat A = CMat::Zero(n, n);
  CMat B = CMat::Zero(n, fs[J - 1].in_dim());
  CMat C = CMat::Zero(fs[0].out_dim(), n);
  C.leftCols(fs[0].state_dim()) = fs[0].C;
  for (std::size_t i = 0; i < J; ++i) {
    A.block(off[i], off[i], fs[i].state_dim(), fs[i].state_dim()) = fs[i].A;
    // Rows after the first pick up a leading factor A_i.
    const CMat lead = (i == 0) ? CMat(fs[i].B) : CMat(fs[i].A * fs[i].B);
    for (std::size_t j = i + 1; j < J; ++j)
      A.block(off[i], off[j], fs[i].state_dim(), fs[j].state_dim()) =
          lead * mid_apply(i + 1, j, fs[j].C);
    B.middleRows(off[i], fs[i].state_dim()) = lead * mid_apply(i + 1, J, Iright);
  }
  return StateSpace(C, A, B);
}

// Pointwise inverse for the shape with constant term; needs invertible D.
inline StateSpace inverse_weiz(const StateSpace& f) {
  if (!f.has_d())
    throw std::invalid_argument("inverse: constant term required");
  if (f.out_dim() != f.in_dim())
    throw std::invalid_argument("inverse: function must be square-valued");
  const CMat Dinv =
      detail::inverse_or_throw(*f.D, "inverse: constant term is singular");
  return StateSpace(-Dinv * f.C, f.A - f.B * Dinv * f.C, f.B * Dinv, Dinv);
}

// Pointwise inverse for the D-free shape; needs invertible value at the
// origin, C*B. Rewrites F = CB + z C (I - zA)^{-1} (A B) and inverts that.
inline StateSpace inverse_weiz2(const StateSpace& f) {
  if (f.has_d())
    throw std::invalid_argument("inverse_weiz2: operand must not carry D");
  if (f.out_dim() != f.in_dim())
    throw std::invalid_argument("inverse: function must be square-valued");
  return inverse_weiz(StateSpace(f.C, f.A, f.A * f.B, f.C * f.B));
}

// Absorb the constant term into the state: D + z C (I-zA)^{-1} B equals
// [I 0] (I - z A')^{-1} [D; B] with A' = [[0, C], [0, A]].
inline StateSpace weiz_to_weiz2(const StateSpace& f) {
  if (!f.has_d())
    throw std::invalid_argument("conversion: constant term required");
  const Eigen::Index p = f.out_dim(), n = f.state_dim();
  CMat A = CMat::Zero(p + n, p + n);
  A.topRightCorner(p, n) = f.C;
  A.bottomRightCorner(n, n) = f.A;
  CMat B(p + n, f.in_dim());
  B.topRows(p) = *f.D;
  B.bottomRows(n) = f.B;
  CMat C = CMat::Zero(p, p + n);
  C.leftCols(p) = CMat::Identity(p, p);
  return StateSpace(C, A, B);
}

// Sum and convolution-style product in the deformed class. Coefficients
// obey [k]! (f*g)_k = sum_{i+j=k} ([i]! f_i)([j]! g_j), which is exactly
// the block product of the underlying realizations.
inline QRational star_sum(const QRational& f, const QRational& g) {
  if (f.q != g.q)
    throw std::invalid_argument("star operation: deformation parameters differ");
  return QRational(sum_weiz(f.ss, g.ss), f.q);
}

inline QRational star_product(const QRational& f, const QRational& g) {
  if (f.q != g.q)
    throw std::invalid_argument("star operation: deformation parameters differ");
  return QRational(product_weiz2(f.ss, g.ss), f.q);
}

// Convolution inverse: the result h satisfies f * h = identity sequence
// (value I at order zero, zero beyond). Needs invertible C*B.
inline QRational star_inverse(const QRational& f) {
  return QRational(weiz_to_weiz2(inverse_weiz2(f.ss)), f.q);
}

}  // namespace qrat
