#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rieszlab {

/// Caps the number of worker threads used by the compute modules (0 = hardware concurrency).
void set_thread_limit(unsigned limit);
unsigned thread_limit();

/// Runs fn(block, begin, end) over fixed-size blocks of [0, n).
///
/// The block partition depends only on n and block_size, never on the
/// thread count, so per-block partial results merged in block order are
/// bit-identical for any number of workers.
void for_each_block(std::size_t n, std::size_t block_size,
                    const std::function<void(std::size_t block, std::size_t begin, std::size_t end)>& fn);

inline std::size_t block_count(std::size_t n, std::size_t block_size) {
  return (n + block_size - 1) / block_size;
}

/// Pairwise (tree) summation; order fixed by the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace rieszlab
