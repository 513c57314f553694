#pragma once

// Matrix-field representation A = P + iQ of omega-compatible complex
// structures near the real polarization, and the pointwise matrix algebra
// built from it (J, Theta, g_A, the connection metric g^_A).
//
// Frame convention, fixed project-wide: coframe order is (dt, dtheta, dx);
// points of the frame bundle are laid out as (t, theta_1..theta_n,
// x_1..x_n), base points as (theta, x). All matrix representations below
// are stated in these frames.

#include <functional>
#include <vector>

#include "gq/expr.hpp"

namespace gq {

// A(s, x, theta): complex symmetric n x n with Im A positive definite on the
// working region. Closed-form partial derivatives when built from
// expressions, central finite differences otherwise.
class AField {
 public:
  using Evaluator = std::function<CMat(double s, const Vec& x, const Vec& th)>;

  int n() const { return n_; }
  CMat value(double s, const Vec& x, const Vec& th) const { return eval_(s, x, th); }
  CMat dtheta(int k, double s, const Vec& x, const Vec& th) const;
  CMat dx(int k, double s, const Vec& x, const Vec& th) const;
  // second partial by variable slots (x1..xn = 0..n-1, th1..thn = n..2n-1)
  CMat d2(int slot_a, int slot_b, double s, const Vec& x, const Vec& th) const;

  using PartialFn = std::function<CMat(int, double, const Vec&, const Vec&)>;

  // entries[i][j] in variables x1..xn, th1..thn, s; symmetry is enforced
  static AField from_exprs(int n, const std::vector<std::vector<std::string>>& entries);
  static AField from_callable(int n, Evaluator f, double fd_step = 1e-5);
  // exact first partials supplied by the caller; second partials fall back
  // to differencing the supplied first partials
  static AField from_parts(int n, Evaluator f, PartialFn dth, PartialFn dx);

 private:
  int n_ = 0;
  Evaluator eval_;
  std::function<CMat(int, double, const Vec&, const Vec&)> dth_, dx_;
  std::function<CMat(int, int, double, const Vec&, const Vec&)> d2_;
};

// max over (i,j,k) of |dA_jk/dth^i - dA_ik/dth^j + A_il dA_jk/dx_l - A_jl dA_ik/dx_l|
double integrability_residual(const AField& A, double s, const Vec& x, const Vec& th);

// Pointwise operations on the matrix A at a point.

Mat j_matrix(const CMat& A);                 // 2n x 2n in the (dtheta, dx) vector frame
Mat theta_matrix(const CMat& A);             // Theta = Q + P Q^{-1} P
Mat base_metric(const CMat& A);              // g_A, (dtheta, dx) coframe
Mat base_metric_completed_square(const CMat& A);  // independent assembly route
Mat omega_matrix(int n);                     // omega in the (dtheta, dx) frame
// g^_A = sigma (dt - x_i dtheta^i)^2 + g_A, coframe (dt, dtheta, dx)
Mat connection_metric(const CMat& A, double sigma, const Vec& x);
int lag_type(const CMat& A, double tol = 1e-10);

Mat sqrt_spd(const Mat& m);       // symmetric square root
Mat inv_sqrt_spd(const Mat& m);

// Throws unless m is symmetric positive definite with min eigenvalue > tol.
void require_spd(const Mat& m, const char* what, double tol = 1e-12);

}  // namespace gq
