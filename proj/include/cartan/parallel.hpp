#pragma once

// Batch kernels. Every kernel has a serial reference and an OpenMP version;
// per-item work depends only on the item index, so both produce identical
// results regardless of thread count or schedule.

#include <functional>
#include <span>
#include <vector>

#include "cartan/liegroup.hpp"

namespace cartan {

using SampleFn = std::function<double(long)>;

/// max_i f(i) over [0, count); 0 when count == 0. An exception thrown by f
/// is rethrown (the one from the lowest index in the parallel version).
double max_over_serial(long count, const SampleFn& f);
double max_over_parallel(long count, const SampleFn& f);

std::vector<Motion> se_exp_batch_serial(std::span<const Screw> screws);
std::vector<Motion> se_exp_batch_parallel(std::span<const Screw> screws);

/// Number of threads the parallel kernels will use.
int parallel_threads();

} // namespace cartan
