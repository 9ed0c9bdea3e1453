#pragma once

#include <cstddef>
#include <functional>

namespace kglab::util {

// Worker count used by parallel_for; 0 selects hardware concurrency.
void set_thread_count(unsigned count);
unsigned thread_count();

// Runs body(i) for i in [begin, end) split into contiguous blocks, one per
// worker.  Bodies must write only to disjoint state.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace kglab::util
