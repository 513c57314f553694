#include "gq/common.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace gq {

long long binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  long long r = 1;
  for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

Halton::Halton(int dim, std::uint64_t seed) : dim_(dim), index_(seed % 100003 + 1) {}

double Halton::radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

Vec Halton::next() {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  Vec v(dim_);
  for (int d = 0; d < dim_; ++d) v[d] = radical_inverse(index_, primes[d % 8]);
  ++index_;
  return v;
}

int max_threads() {
  if (const char* env = std::getenv("GEOQUANT_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) return t;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(std::min(hc, 8u));
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int nt = std::min(max_threads(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace gq
