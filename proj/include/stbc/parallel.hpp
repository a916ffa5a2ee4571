#pragma once

#include <cstddef>
#include <functional>

namespace stbc {

/// Worker count: STBC_LAB_THREADS when set (>= 1), otherwise hardware concurrency.
unsigned default_thread_count();

/// Runs task(i) for i in [0, count) on up to `threads` workers. Tasks must be independent.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

} // namespace stbc
