#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace spinlab {

// Worker count: SPINLAB_WORKERS if set, else hardware concurrency.
int worker_count();
void set_worker_count(int n);

// Runs body(i) for i in [0, n). Each index is independent, so results written
// into per-index slots are identical for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Seeded generator for stream `stream` derived from a user seed. Streams are
// independent of scheduling, which keeps multistart runs reproducible.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace spinlab
