#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace fekete_dyn {

/// Worker count: FEKETE_DYN_THREADS when set to a positive integer, otherwise hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Each index must write only its own output
/// slot; results are then independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

std::uint64_t splitmix64(std::uint64_t x);

/// Independent generator for stream `index` of a seed.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (index * 0x9E3779B97F4A7C15ULL + 1)));
}

}  // namespace fekete_dyn
