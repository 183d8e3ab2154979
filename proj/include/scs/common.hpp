#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace scs {

// Errors. Precondition failures derive from InvalidArgument; the CLI maps
// those to exit code 1 and PropertyViolation to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class Unsupported : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class OutOfRange : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class PropertyViolation : public Error {
 public:
  using Error::Error;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }
  void merge(const CompensatedSum& o) {
    add(o.sum_);
    add(o.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Number of worker threads used by the range-partitioned kernels. Reads
/// SCS_THREADS, falls back to the hardware concurrency.
unsigned worker_count();

/// Runs body(chunk_index) for chunk_index in [0, chunks) across the worker
/// pool. Chunks are claimed dynamically; callers store per-chunk results and
/// merge them in index order, so the result never depends on thread count.
template <class Body>
void parallel_chunks(std::size_t chunks, Body&& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(worker_count(), chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) body(c);
    });
  }
  for (auto& th : pool) th.join();
}

/// Deterministic compensated sum of term(i) over i in [lo, hi].
template <class Term>
CompensatedSum deterministic_sum(std::uint64_t lo, std::uint64_t hi, Term&& term,
                                 std::uint64_t chunk = std::uint64_t{1} << 15) {
  CompensatedSum total;
  if (hi < lo) return total;
  const std::uint64_t count = hi - lo + 1;
  const std::size_t chunks = static_cast<std::size_t>((count + chunk - 1) / chunk);
  std::vector<CompensatedSum> parts(chunks);
  parallel_chunks(chunks, [&](std::size_t c) {
    const std::uint64_t a = lo + c * chunk;
    const std::uint64_t b = std::min(hi, a + chunk - 1);
    CompensatedSum s;
    for (std::uint64_t i = a; i <= b; ++i) s.add(term(i));
    parts[c] = s;
  });
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace scs
