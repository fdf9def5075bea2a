#ifndef POSSWEEP_PARALLEL_HPP
#define POSSWEEP_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace possweep {

/// Worker count: POSSWEEP_THREADS if set and positive, otherwise the
/// hardware concurrency.
std::size_t thread_count() noexcept;

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// body(begin, end) on each. Chunks are disjoint so results do not depend
/// on the worker count as long as body writes only to its own range.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace possweep

#endif // POSSWEEP_PARALLEL_HPP
