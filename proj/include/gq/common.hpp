#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Dense>

namespace gq {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using IVec = std::vector<long long>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Generic failure (bad input, numerical breakdown). The C API maps this to
// GQ_ERR_RUNTIME unless a more specific subclass applies.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid configuration / malformed expression input, exit code 3 at the CLI.
struct ConfigError : Error {
  using Error::Error;
};

inline double wrap_angle(double t) {
  // reduce to [0, 2*pi)
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

inline double wrap_period(double v, double period) {
  v = std::fmod(v, period);
  if (v < 0) v += period;
  return v;
}

// Distance on the circle R/(period Z).
inline double circle_dist(double a, double b, double period) {
  double d = std::fabs(wrap_period(a - b, period));
  return std::min(d, period - d);
}

long long binomial(int a, int b);

// Deterministic Halton low-discrepancy sequence; `seed` offsets the start
// index so distinct experiments draw distinct but reproducible samples.
class Halton {
 public:
  Halton(int dim, std::uint64_t seed);
  Vec next();  // components in [0,1)

 private:
  int dim_;
  std::uint64_t index_;
  static double radical_inverse(std::uint64_t i, int base);
};

// Runs fn(i) for i in [0,n); honors GEOQUANT_THREADS (default: hardware).
void parallel_for(int n, const std::function<void(int)>& fn);

int max_threads();

}  // namespace gq
