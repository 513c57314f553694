#include "gq/afield.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gq {

namespace {

std::vector<double> make_env(int n, double s, const Vec& x, const Vec& th) {
  std::vector<double> env(2 * n + 1);
  for (int j = 0; j < n; ++j) env[j] = x[j];
  for (int j = 0; j < n; ++j) env[n + j] = th[j];
  env[2 * n] = s;
  return env;
}

Mat real_part(const CMat& a) { return a.real(); }
Mat imag_part(const CMat& a) { return a.imag(); }

}  // namespace

CMat AField::dtheta(int k, double s, const Vec& x, const Vec& th) const {
  return dth_(k, s, x, th);
}

CMat AField::dx(int k, double s, const Vec& x, const Vec& th) const { return dx_(k, s, x, th); }

CMat AField::d2(int slot_a, int slot_b, double s, const Vec& x, const Vec& th) const {
  return d2_(slot_a, slot_b, s, x, th);
}

AField AField::from_exprs(int n, const std::vector<std::vector<std::string>>& entries) {
  if (static_cast<int>(entries.size()) != n) throw ConfigError("AField: need n rows of entries");
  VarTable vars = VarTable::for_dimension(n);
  auto exprs = std::make_shared<std::vector<std::vector<Expr>>>(n, std::vector<Expr>(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(entries[i].size()) != n) throw ConfigError("AField: need n columns");
    for (int j = 0; j < n; ++j) (*exprs)[i][j] = Expr::parse(entries[i][j], vars);
  }
  // enforce symmetry: use the upper triangle for both (i,j) and (j,i)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) (*exprs)[i][j] = (*exprs)[j][i];

  // first partials, all slots (x: 0..n-1, th: n..2n-1)
  auto d1 = std::make_shared<std::vector<std::vector<std::vector<Expr>>>>();
  d1->resize(2 * n);
  for (int slot = 0; slot < 2 * n; ++slot) {
    (*d1)[slot].assign(n, std::vector<Expr>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        (*d1)[slot][i][j] = (*exprs)[i][j].diff(slot);
        if (i != j) (*d1)[slot][j][i] = (*d1)[slot][i][j];
      }
  }

  AField f;
  f.n_ = n;
  f.eval_ = [n, exprs](double s, const Vec& x, const Vec& th) {
    auto env = make_env(n, s, x, th);
    CMat a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = (*exprs)[i][j].eval(env);
    return a;
  };
  auto eval_table = [n](const std::vector<std::vector<Expr>>& table, double s, const Vec& x,
                        const Vec& th) {
    auto env = make_env(n, s, x, th);
    CMat a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = table[i][j].eval(env);
    return a;
  };
  f.dth_ = [n, d1, eval_table](int k, double s, const Vec& x, const Vec& th) {
    return eval_table((*d1)[n + k], s, x, th);
  };
  f.dx_ = [d1, eval_table](int k, double s, const Vec& x, const Vec& th) {
    return eval_table((*d1)[k], s, x, th);
  };
  f.d2_ = [n, d1, eval_table](int a, int b, double s, const Vec& x, const Vec& th) {
    // differentiate the cached first-partial table once more
    std::vector<std::vector<Expr>> table(n, std::vector<Expr>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) table[i][j] = (*d1)[a][i][j].diff(b);
    return eval_table(table, s, x, th);
  };
  return f;
}

AField AField::from_callable(int n, Evaluator f, double fd_step) {
  AField out;
  out.n_ = n;
  out.eval_ = f;
  const double h = fd_step;
  auto shift_eval = [n, f](int slot, double delta, double s, Vec x, Vec th) {
    if (slot < n)
      x[slot] += delta;
    else
      th[slot - n] += delta;
    return f(s, x, th);
  };
  auto d1 = [shift_eval, h](int slot, double s, const Vec& x, const Vec& th) {
    return ((shift_eval(slot, h, s, x, th) - shift_eval(slot, -h, s, x, th)) / (2.0 * h)).eval();
  };
  out.dth_ = [n, d1](int k, double s, const Vec& x, const Vec& th) { return d1(n + k, s, x, th); };
  out.dx_ = [d1](int k, double s, const Vec& x, const Vec& th) { return d1(k, s, x, th); };
  double h2 = std::sqrt(h);  // larger step for the noisier second difference
  out.d2_ = [n, shift_eval, h2](int a, int b, double s, const Vec& x, const Vec& th) {
    auto at = [&](double da, double db) {
      Vec xx = x, tt = th;
      auto& ra = a < n ? xx[a] : tt[a - n];
      ra += da;
      auto& rb = b < n ? xx[b] : tt[b - n];
      rb += db;
      return shift_eval(0, 0.0, s, xx, tt);
    };
    return ((at(h2, h2) - at(h2, -h2) - at(-h2, h2) + at(-h2, -h2)) / (4.0 * h2 * h2)).eval();
  };
  return out;
}

AField AField::from_parts(int n, Evaluator f, PartialFn dth, PartialFn dx) {
  AField out;
  out.n_ = n;
  out.eval_ = std::move(f);
  out.dth_ = std::move(dth);
  out.dx_ = std::move(dx);
  const double h = 1e-4;
  auto dth_copy = out.dth_;
  auto dx_copy = out.dx_;
  out.d2_ = [n, h, dth_copy, dx_copy](int a, int b, double s, const Vec& x, const Vec& th) {
    // d/d(slot a) of the exact first partial in slot b
    auto first = [&](const Vec& xx, const Vec& tt) {
      return b < n ? dx_copy(b, s, xx, tt) : dth_copy(b - n, s, xx, tt);
    };
    Vec xp = x, xm = x, tp = th, tm = th;
    if (a < n) {
      xp[a] += h;
      xm[a] -= h;
    } else {
      tp[a - n] += h;
      tm[a - n] -= h;
    }
    return ((first(xp, tp) - first(xm, tm)) / (2.0 * h)).eval();
  };
  return out;
}

double integrability_residual(const AField& A, double s, const Vec& x, const Vec& th) {
  const int n = A.n();
  CMat a = A.value(s, x, th);
  std::vector<CMat> dth(n), dxm(n);
  for (int k = 0; k < n; ++k) {
    dth[k] = A.dtheta(k, s, x, th);
    dxm[k] = A.dx(k, s, x, th);
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Complex r = dth[i](j, k) - dth[j](i, k);
        for (int l = 0; l < n; ++l) r += a(i, l) * dxm[l](j, k) - a(j, l) * dxm[l](i, k);
        worst = std::max(worst, std::abs(r));
      }
  return worst;
}

void require_spd(const Mat& m, const char* what, double tol) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + m.cwiseAbs().maxCoeff()))
    throw Error(std::string(what) + ": matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= tol)
    throw Error(std::string(what) + ": matrix not positive definite (min eigenvalue " +
                std::to_string(es.eigenvalues().minCoeff()) + ")");
}

Mat sqrt_spd(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  return es.operatorSqrt();
}

Mat inv_sqrt_spd(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  return es.operatorInverseSqrt();
}

Mat omega_matrix(int n) {
  Mat w = Mat::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n) = -Mat::Identity(n, n);
  w.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return w;
}

Mat j_matrix(const CMat& A) {
  const int n = static_cast<int>(A.rows());
  Mat P = real_part(A), Q = imag_part(A);
  require_spd(Q, "j_matrix: Im A");
  Mat Qi = Q.inverse();
  Mat Theta = Q + P * Qi * P;
  Mat J(2 * n, 2 * n);
  J.topLeftCorner(n, n) = -Qi * P;
  J.topRightCorner(n, n) = Qi;
  J.bottomLeftCorner(n, n) = -Theta;
  J.bottomRightCorner(n, n) = P * Qi;
  return J;
}

Mat theta_matrix(const CMat& A) {
  Mat P = real_part(A), Q = imag_part(A);
  require_spd(Q, "theta_matrix: Im A");
  return Q + P * Q.inverse() * P;
}

Mat base_metric(const CMat& A) {
  const int n = static_cast<int>(A.rows());
  Mat P = real_part(A), Q = imag_part(A);
  require_spd(Q, "base_metric: Im A");
  Mat Qi = Q.inverse();
  Mat g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = Q + P * Qi * P;
  g.topRightCorner(n, n) = -P * Qi;
  g.bottomLeftCorner(n, n) = -Qi * P;
  g.bottomRightCorner(n, n) = Qi;
  return g;
}

Mat base_metric_completed_square(const CMat& A) {
  const int n = static_cast<int>(A.rows());
  Mat P = real_part(A), Q = imag_part(A);
  require_spd(Q, "base_metric_completed_square: Im A");
  Mat Theta = theta_matrix(A);
  Mat W(n, 2 * n);
  W.leftCols(n) = sqrt_spd(Theta);
  W.rightCols(n) = -inv_sqrt_spd(Theta) * P * Q.inverse();
  Mat g = W.transpose() * W;
  g.bottomRightCorner(n, n) += Theta.inverse();
  return g;
}

Mat connection_metric(const CMat& A, double sigma, const Vec& x) {
  const int n = static_cast<int>(A.rows());
  if (x.size() != n) throw Error("connection_metric: x dimension mismatch");
  if (!(sigma > 0)) throw Error("connection_metric: sigma must be positive");
  Mat g = Mat::Zero(2 * n + 1, 2 * n + 1);
  g.bottomRightCorner(2 * n, 2 * n) = base_metric(A);
  // sigma (dt - x_i dtheta^i)^2
  g(0, 0) = sigma;
  g.block(0, 1, 1, n) = -sigma * x.transpose();
  g.block(1, 0, n, 1) = -sigma * x;
  g.block(1, 1, n, n) += sigma * x * x.transpose();
  return g;
}

int lag_type(const CMat& A, double tol) {
  const int n = static_cast<int>(A.rows());
  CMat d = A - A.conjugate();
  Eigen::JacobiSVD<CMat> svd(d);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol) ++rank;
  return n - rank;
}

}  // namespace gq
