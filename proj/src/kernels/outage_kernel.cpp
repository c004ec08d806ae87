#include <algorithm>
#include <vector>

#include <omp.h>

#include "hdrc/channel_sim.hpp"
#include "hdrc/kernels.hpp"
#include "hdrc/rng.hpp"

namespace hdrc::kernels {

namespace {

int thread_count(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

std::int64_t block_count(const OutageJob& job) {
  return (job.n_samples + kSampleBlock - 1) / kSampleBlock;
}

void count_block(const OutageJob& job, std::int64_t block, std::int64_t* counts) {
  PhiloxStream rng(job.seed, static_cast<std::uint64_t>(block));
  const std::int64_t first = block * kSampleBlock;
  const std::int64_t last = std::min(job.n_samples, first + kSampleBlock);
  for (std::int64_t i = first; i < last; ++i) {
    const sim::ChannelSample h = sim::sample_channel(job.config, rng);
    for (std::size_t s = 0; s < job.rho.size(); ++s) {
      const double rate = sim::rate_upper(sim::cutset_terms(h, job.rho[s]));
      if (rate < job.thresholds[s]) ++counts[s];
    }
  }
}

}  // namespace

std::vector<std::int64_t> outage_count_serial(const OutageJob& job) {
  std::vector<std::int64_t> counts(job.rho.size(), 0);
  const std::int64_t blocks = block_count(job);
  for (std::int64_t b = 0; b < blocks; ++b) count_block(job, b, counts.data());
  return counts;
}

std::vector<std::int64_t> outage_count_parallel(const OutageJob& job, int workers) {
  const std::int64_t blocks = block_count(job);
  const std::size_t width = job.rho.size();
  std::vector<std::int64_t> per_block(static_cast<std::size_t>(blocks) * width, 0);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(workers))
  for (std::int64_t b = 0; b < blocks; ++b) count_block(job, b, per_block.data() + b * width);
  std::vector<std::int64_t> counts(width, 0);
  for (std::int64_t b = 0; b < blocks; ++b)
    for (std::size_t s = 0; s < width; ++s) counts[s] += per_block[b * width + s];
  return counts;
}

}  // namespace hdrc::kernels
