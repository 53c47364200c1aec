#pragma once

#include <cstddef>
#include <functional>

namespace darwin {

/// Worker count: DARWIN_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Calls body(i) for every i in [0, n), spread over worker_count() threads.
/// Each index runs exactly once; callers write results into slot i so the
/// outcome does not depend on scheduling. The first exception thrown by any
/// body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace darwin
