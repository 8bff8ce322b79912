#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace mqg {

/// Worker count used by sweeps; 0 means hardware concurrency.
void set_default_jobs(unsigned jobs);
unsigned default_jobs();

/// Smallest i in [0, n) with fails(i), evaluated on `jobs` threads. The
/// answer does not depend on scheduling.
std::optional<std::size_t> parallel_first_failure(std::size_t n, const std::function<bool(std::size_t)>& fails,
                                                  unsigned jobs = 0);

}  // namespace mqg
