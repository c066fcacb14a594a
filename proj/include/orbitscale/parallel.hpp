#pragma once

#include <cstddef>
#include <functional>

namespace orbitscale::detail {

// Worker count: hardware concurrency, capped by ORBITSCALE_THREADS when set.
int thread_cap();

// Static partition of [0, n) across workers; results must not depend on
// the partition (workers write disjoint slots).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace orbitscale::detail
