#ifndef FCSKIT_PARALLEL_HPP
#define FCSKIT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace fcskit {

/// Threading knobs shared by the parallel kernels.
/// threads == 0 means "use FCS_KIT_THREADS, or hardware concurrency if unset/0".
/// With deterministic == true the work split and reduction order do not depend
/// on the thread count, so results are bit-identical for any budget.
struct ExecOptions {
  unsigned threads = 0;
  bool deterministic = true;
};

unsigned resolve_threads(const ExecOptions& opts);

/// Runs body(i) for i in [0, count) on up to `threads` workers.
/// Each index is executed exactly once; the caller owns per-index output slots.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace fcskit

#endif  // FCSKIT_PARALLEL_HPP
