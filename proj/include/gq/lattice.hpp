#pragma once

// Integer-lattice algebra for the covering space B x (R^n / Ker Phi), its
// Z/mZ deck action and covolumes. All lattice computations are exact over
// 64-bit integers (Hermite normal form); only the fundamental-domain
// reduction touches floating point.

#include <optional>

#include "gq/common.hpp"

namespace gq {

// Phi : Z^n -> Z/mZ, k |-> <w,k> mod m.
struct Homomorphism {
  int n;
  long long m;
  IVec w;  // reduced mod m on construction

  Homomorphism(int n, long long m, IVec w);
  long long apply(const IVec& k) const;  // in [0, m)
};

bool is_surjective(const Homomorphism& phi);

struct KernelLattice {
  int n;
  // columns generate Ker Phi; Hermite normal form (lower triangular,
  // positive diagonal, entries below reduced)
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> basis;
  long long covolume;  // |det basis| = index [Z^n : Ker Phi]

  bool contains(const IVec& k) const;
  Mat basis_d() const;  // double copy
};

KernelLattice kernel_basis(const Homomorphism& phi);

// theta - B round(B^-1 theta): representative of the coset theta + Ker Phi
// near the origin (Babai rounding; coset-exact, not a canonical cell).
Vec reduce_mod_kernel(const KernelLattice& lat, const Vec& theta);

// Smallest (lexicographically, entries in [0,m)) w0 with Phi(w0) = 1.
// Empty when Phi is not surjective.
std::optional<IVec> find_w0(const Homomorphism& phi);

struct DeckElement {
  long long k;  // residue class in Z/mZ
  IVec w0;      // Phi(w0) = 1
};

// Point of the frame bundle over the cover, coordinates (x, theta, t):
// theta in R^n/Ker Phi, e^{it} in S^1.
struct CoverPoint {
  Vec x;
  Vec theta;
  double t;
};

// k.(x, theta, e^{it}) = (x, theta + k w0, e^{i(t - 2 k pi / m)})
CoverPoint deck_apply(const Homomorphism& phi, const KernelLattice& lat, const IVec& w0,
                      long long k, const CoverPoint& p);

}  // namespace gq
