#pragma once

// One-parameter families A(s) = s A^0 + s^2 A^1 degenerating to the real
// polarization, the frozen family A'(s,x,theta) = s A^0(0,theta), the data
// (Pbar, Qbar, H, Thetabar, Sbar) extracted from A^0(0,.), the coordinate
// maps F_s, F^_s, phi_{m,s} and the limit metrics on R^n x S^1.

#include <optional>

#include "gq/afield.hpp"

namespace gq {

// A^0(x, theta): leading coefficient of a spade family; no s dependence.
class A0Field {
 public:
  int n() const { return n_; }
  CMat value(const Vec& x, const Vec& th) const { return eval_(x, th); }
  CMat dtheta(int k, const Vec& x, const Vec& th) const { return dth_(k, x, th); }
  CMat dx(int k, const Vec& x, const Vec& th) const { return dxf_(k, x, th); }

  static A0Field from_exprs(int n, const std::vector<std::vector<std::string>>& entries);
  static A0Field from_callable(int n, std::function<CMat(const Vec&, const Vec&)> f,
                               double fd_step = 1e-5);

 private:
  int n_ = 0;
  std::function<CMat(const Vec&, const Vec&)> eval_;
  std::function<CMat(int, const Vec&, const Vec&)> dth_, dxf_;
};

struct SpadeFamily {
  A0Field a0;
  std::optional<A0Field> a1;  // optional s^2 remainder coefficient
  double K = 0.0;             // measured remainder constant, sup |A - sA^0|_{C^2} / s^2

  AField family() const;  // A(s,x,theta) = s a0 + s^2 a1
  AField frozen() const;  // A'(s,x,theta) = s a0(0,theta)
  // estimate K on a sample grid over U_R x {s values}; 0 when a1 is absent
  double measure_remainder(double R, int grid = 8) const;
};

// Zero-mean scalar ℋ on T^n stored by Fourier coefficients (theta period 1).
struct FourierSeries {
  int n = 0;
  // (k, c) pairs with conjugate symmetry kept explicit
  std::vector<std::pair<std::vector<int>, Complex>> terms;

  double eval(const Vec& th) const;
  Vec grad(const Vec& th) const;
  Mat hess(const Vec& th) const;
};

struct FrozenData {
  int n;
  Mat Pbar;      // mean of P^0(0,.) over T^n
  Mat Qbar;      // Q^0(0,.), required theta-independent
  Mat Thetabar;  // Qbar + Pbar Qbar^{-1} Pbar
  Mat Sbar;      // sqrt(Thetabar)^{-1} Pbar Qbar^{-1} sqrt(Thetabar), symmetric
  FourierSeries H;  // P^0_ij(0,.) = Pbar_ij + d^2 H / dtheta^i dtheta^j
};

// Fourier recovery of H with consistency checks across (i,j); rejects fields
// violating the derivative-symmetry precondition or with theta-dependent Q^0.
FrozenData decompose_P0(const A0Field& a0, int grid_per_axis = 128, double tol = 1e-8);

// F_{dir*s}(x, theta) = (x + dir*s grad H(theta), theta)
Vec map_F(const FrozenData& fz, double s, int direction, const Vec& x, const Vec& th);

// Lift to the frame bundle; points laid out (t, theta, x).
Vec map_Fhat(const FrozenData& fz, double s, int direction, const Vec& p);

// phi_{m,s}(x, theta, e^{it}) = ((s Thetabar)^{-1/2} x, e^{it}); input laid
// out (t, theta, x), output (t, y).
Vec map_phi(double s, const Mat& Thetabar, const Vec& p);

enum class LimitGauge { Submersion, Diagonal };

// g_{m,infty} at y, coframe (dt, dy), size (n+1) x (n+1).
// Submersion: sigma/(1+sigma|y|^2) (dt/m - y.Sbar dy)^2 + dy.dy
// Diagonal:   sigma/(m^2 (1+sigma|y|^2)) dt^2 + dy.dy
// The two are isometric via t -> t + m y.Sbar y / 2.
Mat limit_metric(int m, double sigma, const FrozenData& fz, LimitGauge gauge, const Vec& y);

}  // namespace gq
