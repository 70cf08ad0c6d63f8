#pragma once

#include <cstddef>
#include <functional>

namespace wwlab {

// Runs fn(i) for i in [0, count) across up to `workers` threads. Work is
// assigned by contiguous index blocks and results must be written to
// index-addressed slots by the caller, so output is identical for any worker
// count (including 1, which runs inline).
void parallel_for_indexed(std::size_t count, int workers,
                          const std::function<void(std::size_t)>& fn);

}  // namespace wwlab
