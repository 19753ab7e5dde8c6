#pragma once

#include <cstddef>
#include <functional>

namespace vctl {

/// Worker count used by parallel_for. Results never depend on it.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [begin, end) split into contiguous chunks. Each index
/// must write disjoint output so the result is independent of partitioning.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace vctl
