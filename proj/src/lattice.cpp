#include "gq/lattice.hpp"

#include <numeric>

namespace gq {

using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

namespace {

long long mod_pos(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

// Column-operation HNF: returns H (lower triangular, positive diagonal,
// entries to the left of the diagonal reduced mod the diagonal) with
// H = A * U for unimodular U. A must have full row rank.
IMat hermite_normal_form(IMat a) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  int pivot_col = 0;
  for (int r = 0; r < rows && pivot_col < cols; ++r) {
    // gcd sweep: eliminate entries right of pivot_col in row r
    for (int c = pivot_col + 1; c < cols; ++c) {
      while (a(r, c) != 0) {
        if (a(r, pivot_col) == 0) {
          a.col(pivot_col).swap(a.col(c));
          continue;
        }
        long long q = a(r, c) / a(r, pivot_col);
        a.col(c) -= q * a.col(pivot_col);
        if (a(r, c) != 0) a.col(pivot_col).swap(a.col(c));
      }
    }
    if (a(r, pivot_col) == 0) continue;  // rank deficiency in this row
    if (a(r, pivot_col) < 0) a.col(pivot_col) = -a.col(pivot_col);
    // reduce columns left of the pivot
    for (int c = 0; c < pivot_col; ++c) {
      long long q = a(r, c) / a(r, pivot_col);
      if (a(r, c) - q * a(r, pivot_col) < 0) q -= 1;  // floor division
      a.col(c) -= q * a.col(pivot_col);
    }
    ++pivot_col;
  }
  return a;
}

}  // namespace

Homomorphism::Homomorphism(int n_, long long m_, IVec w_) : n(n_), m(m_), w(std::move(w_)) {
  if (n < 1) throw ConfigError("Homomorphism: n must be >= 1");
  if (m < 1) throw ConfigError("Homomorphism: m must be >= 1");
  if (static_cast<int>(w.size()) != n) throw ConfigError("Homomorphism: w must have length n");
  for (auto& wi : w) wi = mod_pos(wi, m);
}

long long Homomorphism::apply(const IVec& k) const {
  if (static_cast<int>(k.size()) != n) throw Error("Homomorphism::apply: bad vector length");
  long long acc = 0;
  for (int j = 0; j < n; ++j) acc = mod_pos(acc + mod_pos(w[j] * mod_pos(k[j], m), m), m);
  return acc;
}

bool is_surjective(const Homomorphism& phi) {
  long long g = phi.m;
  for (auto wi : phi.w) g = std::gcd(g, wi);
  return g == 1;
}

bool KernelLattice::contains(const IVec& k) const {
  // solve basis * c = k over Z by forward substitution (basis lower triangular)
  if (static_cast<int>(k.size()) != n) return false;
  IVec residual = k;
  for (int j = 0; j < n; ++j) {
    if (basis(j, j) == 0) return false;
    if (residual[j] % basis(j, j) != 0) return false;
    long long c = residual[j] / basis(j, j);
    for (int r = j; r < n; ++r) residual[r] -= c * basis(r, j);
  }
  for (int r = 0; r < n; ++r)
    if (residual[r] != 0) return false;
  return true;
}

Mat KernelLattice::basis_d() const {
  Mat b(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) b(r, c) = static_cast<double>(basis(r, c));
  return b;
}

KernelLattice kernel_basis(const Homomorphism& phi) {
  const int n = phi.n;
  // Ker Phi is the projection to the first n coordinates of
  // ker([w | m] : Z^{n+1} -> Z). Column-reduce the 1x(n+1) system to
  // [g 0 ... 0]; the columns of the accumulated transform that map to 0
  // project to a basis of Ker Phi.
  IMat top(1, n + 1);
  for (int j = 0; j < n; ++j) top(0, j) = phi.w[j];
  top(0, n) = phi.m;
  IMat u = IMat::Identity(n + 1, n + 1);
  // gcd sweep on the single row, mirroring operations into u
  int pc = 0;
  for (int c = 1; c <= n; ++c) {
    while (top(0, c) != 0) {
      if (top(0, pc) == 0) {
        top.col(pc).swap(top.col(c));
        u.col(pc).swap(u.col(c));
        continue;
      }
      long long q = top(0, c) / top(0, pc);
      top.col(c) -= q * top.col(pc);
      u.col(c) -= q * u.col(pc);
      if (top(0, c) != 0) {
        top.col(pc).swap(top.col(c));
        u.col(pc).swap(u.col(c));
      }
    }
  }
  // columns 1..n of u are a basis of ker([w|m]); drop the last coordinate
  IMat gen(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) gen(r, c) = u(r, c + 1);
  KernelLattice lat;
  lat.n = n;
  lat.basis = hermite_normal_form(gen);
  long long det = 1;
  for (int j = 0; j < n; ++j) det *= lat.basis(j, j);
  if (det == 0) throw Error("kernel_basis: degenerate kernel lattice");
  lat.covolume = det < 0 ? -det : det;
  return lat;
}

Vec reduce_mod_kernel(const KernelLattice& lat, const Vec& theta) {
  Mat b = lat.basis_d();
  Vec c = b.partialPivLu().solve(theta);
  for (int j = 0; j < lat.n; ++j) c[j] = std::round(c[j]);
  return theta - b * c;
}

std::optional<IVec> find_w0(const Homomorphism& phi) {
  if (!is_surjective(phi)) return std::nullopt;
  // entries of w0 can be taken in [0, m); lexicographic scan, smallest first
  const int n = phi.n;
  IVec k(n, 0);
  for (;;) {
    if (phi.apply(k) == 1) return k;
    int j = n - 1;
    while (j >= 0) {
      if (++k[j] < phi.m) break;
      k[j] = 0;
      --j;
    }
    if (j < 0) return std::nullopt;  // unreachable for surjective phi
  }
}

CoverPoint deck_apply(const Homomorphism& phi, const KernelLattice& lat, const IVec& w0,
                      long long k, const CoverPoint& p) {
  if (phi.apply(w0) != 1) throw Error("deck_apply: w0 does not satisfy Phi(w0) = 1");
  CoverPoint q;
  q.x = p.x;
  Vec shift(phi.n);
  for (int j = 0; j < phi.n; ++j) shift[j] = static_cast<double>(k * w0[j]);
  q.theta = reduce_mod_kernel(lat, p.theta + shift);
  q.t = wrap_angle(p.t - 2.0 * kPi * static_cast<double>(k) / static_cast<double>(phi.m));
  return q;
}

}  // namespace gq
