#include "cartan/parallel.hpp"

#include <algorithm>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cartan {

int parallel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

double max_over_serial(long count, const SampleFn& f) {
  double worst = 0.0;
  for (long i = 0; i < count; ++i) {
    worst = std::max(worst, f(i));
  }
  return worst;
}

double max_over_parallel(long count, const SampleFn& f) {
  double worst = 0.0;
  long failed_index = std::numeric_limits<long>::max();
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : worst)
  for (long i = 0; i < count; ++i) {
    try {
      worst = std::max(worst, f(i));
    } catch (...) {
#pragma omp critical(cartan_max_over_failure)
      {
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return worst;
}

std::vector<Motion> se_exp_batch_serial(std::span<const Screw> screws) {
  std::vector<Motion> out;
  out.reserve(screws.size());
  for (const Screw& xi : screws) {
    out.push_back(se_exp(xi));
  }
  return out;
}

std::vector<Motion> se_exp_batch_parallel(std::span<const Screw> screws) {
  const long count = static_cast<long>(screws.size());
  std::vector<Motion> out;
  out.reserve(screws.size());
  for (const Screw& xi : screws) {
    out.push_back(Motion::identity(xi.n()));
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = se_exp(screws[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(cartan_se_exp_batch_failure)
      if (!failure) {
        failure = std::current_exception();
      }
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return out;
}

} // namespace cartan
