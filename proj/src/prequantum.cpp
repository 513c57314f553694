#include "gq/prequantum.hpp"

#include <cmath>
#include <numeric>

namespace gq {

LocalModel::LocalModel(int n_, double R_, double sigma_, Homomorphism phi_, std::optional<IVec> w0_)
    : n(n_), R(R_), sigma(sigma_), phi(std::move(phi_)) {
  if (n < 1) throw ConfigError("LocalModel: n must be >= 1");
  if (!(R > 0.0 && R <= 1.0)) throw ConfigError("LocalModel: require 0 < R <= 1");
  if (!(sigma > 0.0)) throw ConfigError("LocalModel: require sigma > 0");
  if (phi.n != n) throw ConfigError("LocalModel: Phi dimension mismatch");
  if (w0_) {
    w0 = *w0_;
    if (phi.apply(w0) != 1) throw ConfigError("LocalModel: Phi(w0) != 1");
  } else if (auto found = find_w0(phi)) {
    w0 = *found;
  } else if (phi.m == 1) {
    w0 = IVec(n, 0);  // trivial group, deck action is the identity
  } else {
    throw ConfigError("LocalModel: Phi is not surjective and no w0 given");
  }
}

Complex holonomy(const LocalModel& model, const FiberLoop& loop) {
  if (static_cast<int>(loop.winding.size()) != model.n || loop.x.size() != model.n)
    throw Error("holonomy: dimension mismatch");
  double phase = 0.0;
  for (int j = 0; j < model.n; ++j) phase += loop.x[j] * static_cast<double>(loop.winding[j]);
  return std::polar(1.0, phase);
}

Complex parallel_transport(const LocalModel& model, const Mat& vertices) {
  const int n = model.n;
  if (vertices.rows() != 2 * n || vertices.cols() < 1)
    throw Error("parallel_transport: vertices must be (2n) x (#points)");
  // 2-node Gauss-Legendre on [0,1]
  static const double gauss_nodes[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
  const int panels = 64;
  double phase = 0.0;
  for (int seg = 0; seg + 1 < vertices.cols(); ++seg) {
    Vec x0 = vertices.col(seg).head(n), x1 = vertices.col(seg + 1).head(n);
    Vec th0 = vertices.col(seg).tail(n), th1 = vertices.col(seg + 1).tail(n);
    Vec dth = (th1 - th0) / panels;
    for (int p = 0; p < panels; ++p) {
      for (double gn : gauss_nodes) {
        double tau = (p + gn) / panels;
        Vec x = x0 + tau * (x1 - x0);
        phase += 0.5 * x.dot(dth);
      }
    }
  }
  return std::polar(1.0, phase);
}

BSClass classify_fiber(const LocalModel& model, const Vec& x, long long m_max, double tol) {
  if (m_max < 1) throw ConfigError("classify_fiber: m_max must be >= 1");
  if (!(tol > 0.0)) throw ConfigError("classify_fiber: tol must be positive");
  // Distinct roots of unity with orders <= m_max are at least
  // 2 sin(pi / (m_max (m_max - 1))) apart (Farey gap); an equal-or-larger
  // tolerance cannot classify unambiguously.
  if (m_max > 1) {
    double sep = 2.0 * std::sin(kPi / (static_cast<double>(m_max) * static_cast<double>(m_max - 1)));
    if (tol >= sep)
      throw ConfigError("classify_fiber: tol " + std::to_string(tol) +
                        " cannot separate roots of unity up to order " + std::to_string(m_max));
  } else if (tol >= 1.0) {
    throw ConfigError("classify_fiber: tol must be < 1");
  }

  BSClass out;
  out.witnesses.reserve(model.n);
  for (int j = 0; j < model.n; ++j) out.witnesses.push_back(std::polar(1.0, x[j]));

  for (long long m = 1; m <= m_max; ++m) {
    bool all_fixed = true;
    for (int j = 0; j < model.n; ++j) {
      if (std::abs(std::polar(1.0, m * x[j]) - Complex(1, 0)) >= tol) {
        all_fixed = false;
        break;
      }
    }
    if (!all_fixed) continue;
    // verify the witnesses generate exactly Z/mZ: the residues p_j with
    // x_j ~ 2 pi p_j / m must satisfy gcd(p_1,...,p_n,m) = 1
    long long g = m;
    for (int j = 0; j < model.n; ++j) {
      long long p = std::llround(m * x[j] / kTwoPi);
      g = std::gcd(g, ((p % m) + m) % m);
    }
    if (g != 1) continue;  // subgroup is Z/(m/g)Z, not Z/mZ
    out.kind = BSClass::StrictBS;
    out.m = m;
    return out;
  }
  out.kind = BSClass::NotBSUpTo;
  out.m = m_max;
  return out;
}

}  // namespace gq
