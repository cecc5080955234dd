#pragma once

// Deterministic data parallelism. Work is split into fixed-size blocks;
// block results are combined in index order, so the outcome is independent
// of the number of worker threads.

#include <cstddef>
#include <functional>
#include <vector>

namespace holoball {

inline constexpr std::size_t kBlockSize = 4096;

// Effective worker count: HOLOBALL_THREADS if set, else hardware concurrency.
unsigned thread_count();

// Override for tests (0 restores the environment-driven default).
void set_thread_count(unsigned n);

// Runs fn(block_index, begin, end) over [0, count) split into kBlockSize
// blocks. Exceptions from workers are rethrown on the caller thread.
void for_blocks(std::size_t count, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// Block-parallel sum of per-element doubles: fn(i) evaluated for i in
// [0, count), accumulated sequentially within a block, blocks combined in
// index order.
double block_sum(std::size_t count, const std::function<double(std::size_t)>& fn);

}  // namespace holoball
