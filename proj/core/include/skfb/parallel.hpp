#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace skfb::parallel {

// Trials are processed in fixed-size blocks; each block fills a private
// accumulator array and the block partials are reduced in block order.
// The result is therefore byte-identical for every worker count.
inline constexpr std::uint64_t kBlockSize = 8192;

using BlockBody =
    std::function<void(std::uint64_t begin, std::uint64_t end, double* acc)>;

// Runs `body` over [0, trials) in blocks and returns the width-sized column
// sums. `threads == 0` selects the hardware concurrency.
std::vector<double> reduce_blocks(std::uint64_t trials, unsigned threads,
                                  std::size_t width, const BlockBody& body);

}  // namespace skfb::parallel
