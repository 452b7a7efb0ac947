#pragma once

#include <cstddef>
#include <functional>

namespace ctphs {

/// Worker cap used when a call passes threads = 0. Defaults to the number of
/// hardware threads.
int default_threads() noexcept;
void set_default_threads(int threads) noexcept;

/// Runs body(begin, end) over a static partition of [0, n). Each index is
/// visited exactly once; callers write to disjoint slots so results do not
/// depend on the thread count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  int threads = 0);

}  // namespace ctphs
