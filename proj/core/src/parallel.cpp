#include "skfb/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace skfb::parallel {

std::vector<double> reduce_blocks(std::uint64_t trials, unsigned threads,
                                  std::size_t width, const BlockBody& body) {
  std::vector<double> total(width, 0.0);
  if (trials == 0 || width == 0) {
    return total;
  }

  const std::uint64_t n_blocks = (trials + kBlockSize - 1) / kBlockSize;
  std::vector<double> partials(n_blocks * width, 0.0);

  unsigned workers = threads != 0 ? threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, 256));
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, n_blocks));

  std::atomic<std::uint64_t> next{0};
  auto run = [&] {
    for (;;) {
      const std::uint64_t block = next.fetch_add(1, std::memory_order_relaxed);
      if (block >= n_blocks) {
        break;
      }
      const std::uint64_t begin = block * kBlockSize;
      const std::uint64_t end = std::min(begin + kBlockSize, trials);
      body(begin, end, partials.data() + block * width);
    }
  };

  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) {
      pool.emplace_back(run);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  // Block-ordered reduction keeps floating-point sums schedule-independent.
  for (std::uint64_t block = 0; block < n_blocks; ++block) {
    const double* p = partials.data() + block * width;
    for (std::size_t c = 0; c < width; ++c) {
      total[c] += p[c];
    }
  }
  return total;
}

}  // namespace skfb::parallel
