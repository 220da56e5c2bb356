#pragma once

#include <cstddef>
#include <functional>

namespace gflap {

/// Worker threads used by the library's parallel loops (default 1). Results
/// never depend on this value: work is split into a fixed number of blocks
/// and block results are combined in block order.
void set_num_threads(int n);
int num_threads();

/// Runs body(block) for block in [0, n_blocks) on up to num_threads() threads.
void parallel_blocks(std::size_t n_blocks,
                     const std::function<void(std::size_t)>& body);

}  // namespace gflap
