#pragma once

#include <cstddef>
#include <functional>

namespace ellipsolve::detail {

// Worker count: ELLIPSOLVE_THREADS if set and positive, else the hardware
// concurrency.
std::size_t worker_count();

// Runs body(i) for i in [0, n). The first exception by index is rethrown
// after all workers finish, so failures are reported deterministically.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ellipsolve::detail
