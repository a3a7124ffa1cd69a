#pragma once

#include <functional>

namespace cpbench {

// Run fn(0..count-1) across `threads` workers (1 = inline). Work items must
// not share mutable state; the first exception is rethrown after all workers
// join.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

int default_thread_count();

}  // namespace cpbench
