#pragma once

#include <cstdlib>
#include <functional>
#include <future>
#include <string>
#include <thread>
#include <vector>

namespace fse {

// Number of worker threads. Reads FSE_WORKERS if set (a positive integer),
// otherwise uses hardware concurrency. Results of every engine are required
// to be independent of this value; it only controls how scans are chunked.
int worker_count();

// Splits [0, total) into contiguous chunks, runs `work` on each chunk (possibly
// in parallel) and combines the per-chunk results in chunk order, so the final
// value is deterministic.
template <typename R>
R parallel_chunks(long long total,
                  const std::function<R(long long, long long)>& work,
                  const std::function<void(R&, R&&)>& merge) {
  int workers = worker_count();
  if (total <= 0) return R{};
  long long nchunks = std::min<long long>(total, workers * 4LL);
  if (workers <= 1 || nchunks <= 1) return work(0, total);
  std::vector<std::future<R>> futs;
  futs.reserve(nchunks);
  for (long long c = 0; c < nchunks; ++c) {
    long long lo = total * c / nchunks;
    long long hi = total * (c + 1) / nchunks;
    futs.push_back(std::async(std::launch::async, [&work, lo, hi] { return work(lo, hi); }));
  }
  R out{};
  for (auto& f : futs) merge(out, f.get());
  return out;
}

}  // namespace fse
