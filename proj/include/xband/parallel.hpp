// parallel.hpp - hierarchical seeding and a deterministic parallel-for

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace xband {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive child seeds (campaign -> point -> trial).
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

/// Worker count: hardware concurrency capped by the XBAND_THREADS environment variable.
int worker_count();

/// Runs fn(i) for i in [0, n). Work is split into contiguous chunks; callers write
/// results into per-index slots and reduce in index order, so output does not depend
/// on the thread count. threads <= 0 means worker_count().
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace xband
