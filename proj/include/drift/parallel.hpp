#pragma once

#include <functional>

namespace drift {

// Runs body(0..n-1) across up to `workers` threads. Results must land in
// per-index slots; aggregation over them afterwards is the caller's job,
// which keeps outputs independent of the worker count.
void parallel_for(long n, int workers, const std::function<void(long)>& body);

}  // namespace drift
