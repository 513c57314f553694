#pragma once

// Action-angle local model U = B x T^n with omega = dx_i ^ dtheta^i and the
// normalized prequantum connection nabla E = -i x_i dtheta^i (x) E on the
// unit frame bundle. Holonomy along a fiber loop of winding w at base x is
// exp(i<x,w>).
//
// Unit convention (fixed project-wide): theta has period 1 per axis and the
// fiber over x is an m-BS point iff x lies in (2 pi / m) Z^n. This follows
// from the connection normalization above and is the convention every
// classification below uses.

#include <optional>

#include "gq/lattice.hpp"

namespace gq {

struct LocalModel {
  int n;
  double R;      // ball radius, 0 < R <= 1
  double sigma;  // connection-metric weight > 0
  Homomorphism phi;
  IVec w0;  // Phi(w0) = 1 whenever surjective

  LocalModel(int n, double R, double sigma, Homomorphism phi, std::optional<IVec> w0 = {});
};

struct FiberLoop {
  Vec x;        // base point
  IVec winding;  // class in Z^n
};

Complex holonomy(const LocalModel& model, const FiberLoop& loop);

// Piecewise-linear path in U (columns of `vertices` are (x, theta) points,
// dimension 2n). Returns the frame-transport phase exp(i \int x . dtheta),
// composite 2-node Gauss quadrature (order 4) with >= 64 panels per segment;
// closed fiber loops reproduce holonomy().
Complex parallel_transport(const LocalModel& model, const Mat& vertices);

struct BSClass {
  enum Kind { StrictBS, NotBSUpTo } kind;
  long long m;  // order when StrictBS, the scanned bound otherwise
  std::vector<Complex> witnesses;  // e^{i x_j}
};

// Smallest m <= m_max with e^{i m x_j} = 1 (within tol) for all j, verified
// to generate exactly Z/mZ. Rejects tolerances that cannot separate distinct
// roots of unity of order <= m_max.
BSClass classify_fiber(const LocalModel& model, const Vec& x, long long m_max, double tol);

}  // namespace gq
