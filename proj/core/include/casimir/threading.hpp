#pragma once

#include <cstddef>
#include <functional>

namespace casimir {

/// Cap on the number of worker threads used by the quadrature engine.
/// 0 restores the default (hardware concurrency). Results are bit-identical
/// for any thread count: workers only fill disjoint slots of a node buffer
/// and the reduction is always serial in fixed order.
void set_max_threads(unsigned n);

unsigned max_threads();

/// Run body(0..count-1), partitioned into contiguous chunks over the
/// available workers. Exceptions are rethrown on the calling thread
/// (lowest-index chunk wins).
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body);

}  // namespace casimir
