#pragma once

#include <functional>

#include <Eigen/Core>

namespace dha {

// Worker count used by the parallel loops; results never depend on it.
void set_thread_count(int n);
int thread_count();

// Calls body(begin, end) on disjoint contiguous chunks of [0, n).
void parallel_for(Eigen::Index n, const std::function<void(Eigen::Index, Eigen::Index)>& body);

}  // namespace dha
