#include "maxint/sampling.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace maxint {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Engine batch_engine(std::uint64_t seed, Stream stream, std::uint64_t batch) {
  const std::uint64_t key = splitmix64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(stream)) ^ batch);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  return Engine(seq);
}

unsigned worker_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MAXINT_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (...) {
    }
  }
  return n;
}

Vec sample_sphere(Engine& rng, int n) {
  std::normal_distribution<double> g;
  Vec x(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) x(i) = g(rng);
    norm = x.norm();
  } while (norm == 0.0);
  return x / norm;
}

Vec sample_ball(Engine& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec x = sample_sphere(rng, n);
  return std::pow(u(rng), 1.0 / n) * x;
}

}  // namespace maxint
