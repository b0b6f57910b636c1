#pragma once

// Worker-count convention shared by the parallel kernels.
//
// Every kernel that runs on OpenMP also keeps a plain serial path. Passing
// workers = 1 selects that path (no OpenMP region is entered at all), which
// is what the tests compare the parallel results against. workers = 0 uses
// the OpenMP default thread count.

namespace bgax
{

inline constexpr int serial_workers = 1;
inline constexpr int default_workers = 0;

/// Effective thread count for a request (at least 1).
int resolve_workers(int requested);

} // namespace bgax
