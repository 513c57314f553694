#include "gq/metric.hpp"

#include <random>

#include <Eigen/Eigenvalues>

#include "gq/afield.hpp"

namespace gq {

double MetricField::density(const Vec& p) const {
  double det = g(p).determinant();
  if (!(det > 0)) throw Error("MetricField: non-positive metric determinant");
  return std::sqrt(det);
}

double dsym(const Mat& g, const Mat& gp) {
  require_spd(g, "dsym: g");
  require_spd(gp, "dsym: g'");
  // eigenvalues of g' g^{-1} = generalized eigenvalues of (g', g)
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(gp, g, Eigen::EigenvaluesOnly);
  double worst = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    worst = std::max(worst, std::fabs(std::log(es.eigenvalues()[i])));
  return worst;
}

double dsym_field(const MetricField& g, const MetricField& gp, const Box& region, int samples,
                  std::uint64_t seed) {
  const int D = region.dim();
  Halton seq(D, seed);
  double sup = 0.0;
  for (int it = 0; it < samples; ++it) {
    Vec u = seq.next();
    Vec p(D);
    for (int j = 0; j < D; ++j) p[j] = region.lo[j] + u[j] * (region.hi[j] - region.lo[j]);
    sup = std::max(sup, dsym(g.g(p), gp.g(p)));
  }
  return sup;
}

double integrate(const std::function<double(const Vec&)>& f, const MetricField& mf, const Box& box,
                 int resolution) {
  const int D = box.dim();
  long long cells = 1;
  double cell_vol = 1.0;
  for (int j = 0; j < D; ++j) {
    cells *= resolution;
    cell_vol *= (box.hi[j] - box.lo[j]) / resolution;
  }
  double acc = 0.0;
  for (long long idx = 0; idx < cells; ++idx) {
    Vec p(D);
    long long rest = idx;
    for (int j = 0; j < D; ++j) {
      p[j] = box.lo[j] + (static_cast<double>(rest % resolution) + 0.5) *
                             (box.hi[j] - box.lo[j]) / resolution;
      rest /= resolution;
    }
    double fv = f(p);
    if (fv != 0.0) acc += fv * mf.density(p);
  }
  return acc * cell_vol;
}

EigenStabilityReport eigen_stability_check(const std::vector<std::pair<Mat, Mat>>& pairs,
                                           int poly_trials, int poly_n, double K, double eps,
                                           std::uint64_t seed) {
  EigenStabilityReport rep;
  for (const auto& [a, b] : pairs) {
    ++rep.trials;
    Eigen::SelfAdjointEigenSolver<Mat> ea(a, Eigen::EigenvaluesOnly),
        eb(b, Eigen::EigenvaluesOnly);
    Vec da = ea.eigenvalues(), db = eb.eigenvalues();  // ascending
    double dist = (da - db).norm();
    double frob = (a - b).norm();
    rep.worst_hw_margin = std::max(rep.worst_hw_margin, dist - frob);
    if (dist > frob * (1.0 + 1e-10) + 1e-12) ++rep.violations;
  }

  // roots of lambda^{2n+1} + sum_i c_i eps^{2n+1-i} lambda^i with |c_i| <= K
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-K, K);
  const int deg = 2 * poly_n + 1;
  const double bound = std::max(1.0, deg * K) * eps;
  for (int trial = 0; trial < poly_trials; ++trial) {
    ++rep.trials;
    Vec c(deg);
    for (int i = 0; i < deg; ++i) c[i] = unif(rng) * std::pow(eps, deg - i);
    // companion matrix of the monic polynomial
    Mat comp = Mat::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i];
    Eigen::EigenSolver<Mat> es(comp, false);
    for (int i = 0; i < deg; ++i) {
      double mag = std::abs(es.eigenvalues()[i]);
      rep.worst_root_margin = std::max(rep.worst_root_margin, mag - bound);
      if (mag > bound * (1.0 + 1e-9)) ++rep.violations;
    }
  }
  return rep;
}

}  // namespace gq
