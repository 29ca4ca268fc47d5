#pragma once

#include <cstddef>
#include <functional>

namespace qlspb {

/// Execution policy for the data-parallel ensemble loops. The serial mode is
/// the reference implementation; the parallel mode runs the same per-index
/// work under OpenMP. Both must produce identical bytes: workers only write
/// to disjoint, pre-sized slots and all reductions happen serially afterwards.
enum class ExecMode { serial, parallel };

/// Threads available to parallel loops: min(hardware, QLSPB_THREADS if set).
int thread_cap();

/// Runs fn(i) for i in [0, count). In parallel mode iterations may run in any
/// order and concurrently; fn must be safe for that.
void for_each_index(std::size_t count, ExecMode mode,
                    const std::function<void(std::size_t)>& fn);

/// Parallel mode unless compiled without OpenMP or capped to one thread.
ExecMode default_mode();

}  // namespace qlspb
