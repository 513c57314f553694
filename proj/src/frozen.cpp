#include "gq/frozen.hpp"

#include <map>

namespace gq {

A0Field A0Field::from_exprs(int n, const std::vector<std::vector<std::string>>& entries) {
  AField base = AField::from_exprs(n, entries);
  A0Field f;
  f.n_ = n;
  f.eval_ = [base](const Vec& x, const Vec& th) { return base.value(0.0, x, th); };
  f.dth_ = [base](int k, const Vec& x, const Vec& th) { return base.dtheta(k, 0.0, x, th); };
  f.dxf_ = [base](int k, const Vec& x, const Vec& th) { return base.dx(k, 0.0, x, th); };
  return f;
}

A0Field A0Field::from_callable(int n, std::function<CMat(const Vec&, const Vec&)> f,
                               double fd_step) {
  AField base = AField::from_callable(
      n, [f](double, const Vec& x, const Vec& th) { return f(x, th); }, fd_step);
  A0Field out;
  out.n_ = n;
  out.eval_ = [f](const Vec& x, const Vec& th) { return f(x, th); };
  out.dth_ = [base](int k, const Vec& x, const Vec& th) { return base.dtheta(k, 0.0, x, th); };
  out.dxf_ = [base](int k, const Vec& x, const Vec& th) { return base.dx(k, 0.0, x, th); };
  return out;
}

AField SpadeFamily::family() const {
  const int n = a0.n();
  A0Field lead = a0;
  std::optional<A0Field> rem = a1;
  auto val = [lead, rem](double s, const Vec& x, const Vec& th) {
    CMat a = s * lead.value(x, th);
    if (rem) a += s * s * rem->value(x, th);
    return a;
  };
  struct Parts {
    A0Field lead;
    std::optional<A0Field> rem;
  };
  auto parts = std::make_shared<Parts>(Parts{lead, rem});
  auto dth = [parts](int k, double s, const Vec& x, const Vec& th) {
    CMat a = s * parts->lead.dtheta(k, x, th);
    if (parts->rem) a += s * s * parts->rem->dtheta(k, x, th);
    return a;
  };
  auto dxf = [parts](int k, double s, const Vec& x, const Vec& th) {
    CMat a = s * parts->lead.dx(k, x, th);
    if (parts->rem) a += s * s * parts->rem->dx(k, x, th);
    return a;
  };
  return AField::from_parts(n, val, dth, dxf);
}

AField SpadeFamily::frozen() const {
  const int n = a0.n();
  A0Field lead = a0;
  Vec zero = Vec::Zero(n);
  auto val = [lead, zero](double s, const Vec&, const Vec& th) {
    return (s * lead.value(zero, th)).eval();
  };
  auto dth = [lead, zero](int k, double s, const Vec&, const Vec& th) {
    return (s * lead.dtheta(k, zero, th)).eval();
  };
  auto dxf = [lead, zero, n](int, double, const Vec&, const Vec&) {
    return CMat(CMat::Zero(n, n));
  };
  return AField::from_parts(n, val, dth, dxf);
}

double SpadeFamily::measure_remainder(double R, int grid) const {
  if (!a1) return 0.0;
  // C^2 norm of the remainder coefficient A^1, sampled
  const int n = a0.n();
  double worst = 0.0;
  AField rem = AField::from_callable(
      n, [this](double, const Vec& x, const Vec& th) { return a1->value(x, th); });
  Halton seq(2 * n, 7);
  for (int it = 0; it < grid * grid; ++it) {
    Vec u = seq.next();
    Vec x(n), th(n);
    for (int j = 0; j < n; ++j) {
      x[j] = (2.0 * u[j] - 1.0) * R * 0.7;
      th[j] = u[n + j];
    }
    worst = std::max(worst, rem.value(0, x, th).cwiseAbs().maxCoeff());
    for (int k = 0; k < n; ++k) {
      worst = std::max(worst, rem.dtheta(k, 0, x, th).cwiseAbs().maxCoeff());
      worst = std::max(worst, rem.dx(k, 0, x, th).cwiseAbs().maxCoeff());
    }
    for (int a = 0; a < 2 * n; ++a)
      for (int b = a; b < 2 * n; ++b)
        worst = std::max(worst, rem.d2(a, b, 0, x, th).cwiseAbs().maxCoeff());
  }
  return worst;
}

double FourierSeries::eval(const Vec& th) const {
  double acc = 0.0;
  for (const auto& [k, c] : terms) {
    double ph = 0.0;
    for (int j = 0; j < n; ++j) ph += k[j] * th[j];
    acc += (c * std::polar(1.0, kTwoPi * ph)).real();
  }
  return acc;
}

Vec FourierSeries::grad(const Vec& th) const {
  Vec g = Vec::Zero(n);
  for (const auto& [k, c] : terms) {
    double ph = 0.0;
    for (int j = 0; j < n; ++j) ph += k[j] * th[j];
    Complex w = c * std::polar(1.0, kTwoPi * ph) * Complex(0, kTwoPi);
    for (int j = 0; j < n; ++j) g[j] += (w * static_cast<double>(k[j])).real();
  }
  return g;
}

Mat FourierSeries::hess(const Vec& th) const {
  Mat h = Mat::Zero(n, n);
  for (const auto& [k, c] : terms) {
    double ph = 0.0;
    for (int j = 0; j < n; ++j) ph += k[j] * th[j];
    Complex w = c * std::polar(1.0, kTwoPi * ph) * (-kTwoPi * kTwoPi);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) h(a, b) += (w * static_cast<double>(k[a] * k[b])).real();
  }
  return h;
}

namespace {

// All integer vectors with entries in [-kmax, kmax], n components.
void enumerate_modes(int n, int kmax, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int k = -kmax; k <= kmax; ++k) {
    cur.push_back(k);
    enumerate_modes(n, kmax, cur, out);
    cur.pop_back();
  }
}

}  // namespace

FrozenData decompose_P0(const A0Field& a0, int grid_per_axis, double tol) {
  const int n = a0.n();
  const int G = grid_per_axis;
  Vec zero = Vec::Zero(n);

  // precondition (i): dA^0_ij/dth^k = dA^0_ik/dth^j at x = 0, sampled
  {
    Halton seq(n, 11);
    for (int it = 0; it < 40; ++it) {
      Vec th = seq.next();
      std::vector<CMat> dth(n);
      for (int k = 0; k < n; ++k) dth[k] = a0.dtheta(k, zero, th);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            if (std::abs(dth[k](i, j) - dth[j](i, k)) > tol)
              throw Error("decompose_P0: dA0_ij/dth_k symmetry fails (residual " +
                          std::to_string(std::abs(dth[k](i, j) - dth[j](i, k))) + ")");
    }
  }

  // sample P^0, Q^0 on the grid
  long long total = 1;
  for (int j = 0; j < n; ++j) total *= G;
  std::vector<Mat> psamples(total);
  Mat qmean = Mat::Zero(n, n);
  double qdev = 0.0;
  std::vector<Mat> qsamples(total);
  for (long long idx = 0; idx < total; ++idx) {
    Vec th(n);
    long long rest = idx;
    for (int j = 0; j < n; ++j) {
      th[j] = static_cast<double>(rest % G) / G;
      rest /= G;
    }
    CMat a = a0.value(zero, th);
    psamples[idx] = a.real();
    qsamples[idx] = a.imag();
    qmean += a.imag();
  }
  qmean /= static_cast<double>(total);
  for (const auto& q : qsamples) qdev = std::max(qdev, (q - qmean).cwiseAbs().maxCoeff());
  if (qdev > tol)
    throw Error("decompose_P0: Q^0(0,.) depends on theta (max deviation " + std::to_string(qdev) +
                ")");

  FrozenData fz;
  fz.n = n;
  fz.Qbar = qmean;
  require_spd(fz.Qbar, "decompose_P0: Qbar");

  // DFT of P^0 entries; modes up to |k|_inf <= kmax
  const int kmax = std::min(32, G / 2 - 1);
  std::vector<std::vector<int>> modes;
  {
    std::vector<int> cur;
    enumerate_modes(n, kmax, cur, modes);
  }
  fz.Pbar = Mat::Zero(n, n);
  std::map<std::vector<int>, Complex> hcoef;
  for (const auto& mode : modes) {
    bool all_zero = true;
    for (int j = 0; j < n; ++j) all_zero = all_zero && mode[j] == 0;
    // coefficient of e^{2 pi i <k,theta>} for every entry
    CMat coef = CMat::Zero(n, n);
    for (long long idx = 0; idx < total; ++idx) {
      Vec th(n);
      long long rest = idx;
      for (int j = 0; j < n; ++j) {
        th[j] = static_cast<double>(rest % G) / G;
        rest /= G;
      }
      double ph = 0.0;
      for (int j = 0; j < n; ++j) ph += mode[j] * th[j];
      coef += psamples[idx].cast<Complex>() * std::polar(1.0 / total, -kTwoPi * ph);
    }
    if (all_zero) {
      fz.Pbar = coef.real();
      continue;
    }
    // H_k = P_ij,k / (-4 pi^2 k_i k_j), consistent across all valid (i,j)
    bool have = false;
    Complex hk(0, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double kk = static_cast<double>(mode[i]) * static_cast<double>(mode[j]);
        if (kk == 0.0) {
          if (std::abs(coef(i, j)) > tol)
            throw Error("decompose_P0: inconsistent Fourier data, entry (" + std::to_string(i) +
                        "," + std::to_string(j) + ") has mass on a mode with k_i k_j = 0");
          continue;
        }
        Complex cand = coef(i, j) / (-4.0 * kPi * kPi * kk);
        if (!have) {
          hk = cand;
          have = true;
        } else if (std::abs(cand - hk) > tol) {
          throw Error("decompose_P0: inconsistent Fourier recovery of H across entries");
        }
      }
    if (have && std::abs(hk) > 1e-12) hcoef[mode] = hk;
  }

  fz.H.n = n;
  for (const auto& [k, c] : hcoef) fz.H.terms.emplace_back(k, c);

  fz.Thetabar = fz.Qbar + fz.Pbar * fz.Qbar.inverse() * fz.Pbar;
  require_spd(fz.Thetabar, "decompose_P0: Thetabar");
  Mat rt = sqrt_spd(fz.Thetabar), rti = inv_sqrt_spd(fz.Thetabar);
  fz.Sbar = rti * fz.Pbar * fz.Qbar.inverse() * rt;
  if ((fz.Sbar - fz.Sbar.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw Error("decompose_P0: Sbar failed to come out symmetric");
  fz.Sbar = 0.5 * (fz.Sbar + fz.Sbar.transpose());
  return fz;
}

Vec map_F(const FrozenData& fz, double s, int direction, const Vec& x, const Vec& th) {
  Vec out(2 * fz.n);
  out.head(fz.n) = x + direction * s * fz.H.grad(th);
  out.tail(fz.n) = th;
  return out;
}

Vec map_Fhat(const FrozenData& fz, double s, int direction, const Vec& p) {
  const int n = fz.n;
  if (p.size() != 2 * n + 1) throw Error("map_Fhat: point must be (t, theta, x)");
  Vec th = p.segment(1, n), x = p.tail(n);
  Vec out(2 * n + 1);
  out[0] = p[0] + direction * s * fz.H.eval(th);
  out.segment(1, n) = th;
  out.tail(n) = x + direction * s * fz.H.grad(th);
  return out;
}

Vec map_phi(double s, const Mat& Thetabar, const Vec& p) {
  const int n = static_cast<int>(Thetabar.rows());
  if (!(s > 0)) throw Error("map_phi: s must be positive");
  if (p.size() != 2 * n + 1) throw Error("map_phi: point must be (t, theta, x)");
  Mat scale = inv_sqrt_spd(s * Thetabar);
  Vec out(n + 1);
  out[0] = p[0];
  out.tail(n) = scale * p.tail(n);
  return out;
}

Mat limit_metric(int m, double sigma, const FrozenData& fz, LimitGauge gauge, const Vec& y) {
  const int n = fz.n;
  if (m < 1) throw Error("limit_metric: m must be >= 1");
  if (!(sigma > 0)) throw Error("limit_metric: sigma must be positive");
  double c = sigma / (1.0 + sigma * y.squaredNorm());
  Mat g = Mat::Zero(n + 1, n + 1);
  g.bottomRightCorner(n, n) = Mat::Identity(n, n);
  if (gauge == LimitGauge::Diagonal) {
    g(0, 0) = c / (static_cast<double>(m) * m);
    return g;
  }
  Vec u(n + 1);
  u[0] = 1.0 / m;
  u.tail(n) = -(fz.Sbar * y);
  g += c * u * u.transpose();
  return g;
}

}  // namespace gq
