#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "maxint/linalg.hpp"

namespace maxint {

/// Samples per Monte Carlo batch; the stream is split by batch index so results
/// do not depend on how many threads evaluate the batches.
inline constexpr std::size_t kBatchSize = 8192;

/// Independent sub-streams drawn from one user seed.
enum class Stream : std::uint64_t { Volume = 1, Sphere = 2, Oracle = 3, BodyVolume = 4, Start = 5 };

using Engine = std::mt19937_64;

/// Engine for batch `batch` of `stream` under `seed` (splitmix64-derived key).
Engine batch_engine(std::uint64_t seed, Stream stream, std::uint64_t batch);

/// Worker count, capped by the MAXINT_THREADS environment variable.
unsigned worker_threads();

Vec sample_sphere(Engine& rng, int n);
Vec sample_ball(Engine& rng, int n);

/// Evaluates `fn(batch, count)` for every batch of `total` samples in
/// parallel and returns the partial results in batch order.
template <class Partial, class Fn>
std::vector<Partial> run_batches(std::size_t total, Fn&& fn);

}  // namespace maxint

#include "maxint/sampling_impl.hpp"
