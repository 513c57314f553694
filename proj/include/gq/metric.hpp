#pragma once

// Pointwise metric fields, the log-eigenvalue distance d_Sym+ between
// positive forms, cell-sum integration against the Riemannian measure, and
// eigenvalue-stability property checks.

#include <functional>

#include "gq/common.hpp"

namespace gq {

struct MetricField {
  int D = 0;
  std::function<Mat(const Vec&)> g;  // point -> D x D SPD matrix

  double density(const Vec& p) const;  // sqrt(det g)
};

// max_i |log alpha_i| over eigenvalues alpha of g' g^{-1}; both SPD.
double dsym(const Mat& g, const Mat& gp);

struct Box {
  Vec lo, hi;  // axis-aligned region
  int dim() const { return static_cast<int>(lo.size()); }
};

// sup of dsym(g(p), g'(p)) over a deterministic low-discrepancy sample.
double dsym_field(const MetricField& g, const MetricField& gp, const Box& region, int samples,
                  std::uint64_t seed = 1);

// Riemann cell sum of f sqrt(det g) over the box, `resolution` cells per axis.
double integrate(const std::function<double(const Vec&)>& f, const MetricField& mf, const Box& box,
                 int resolution);

struct EigenStabilityReport {
  int trials = 0;
  int violations = 0;
  double worst_hw_margin = 0.0;    // max over trials of (eig distance - frobenius)
  double worst_root_margin = 0.0;  // max over trials of (|root| - N eps)
};

// Property checks: sorted-eigenvalue distance vs Frobenius norm of the
// difference (Hoffman-Wielandt) on supplied symmetric pairs, and root bounds
// |lambda| <= max(1,(2n+1)K) eps for monic polynomials with coefficient i
// bounded by K eps^{2n+1-i}.
EigenStabilityReport eigen_stability_check(const std::vector<std::pair<Mat, Mat>>& pairs,
                                           int poly_trials, int poly_n, double K, double eps,
                                           std::uint64_t seed = 2);

}  // namespace gq
