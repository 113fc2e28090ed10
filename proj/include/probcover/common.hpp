#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace probcover {

namespace detail {
/// Shortest decimal form that round-trips the double (to_chars default).
inline std::string fmt_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}
}  // namespace detail

// Error categories map onto CLI exit codes: validation 1, io 2, capacity 3.

class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline unsigned& thread_setting() {
  static unsigned value = 1;
  return value;
}
}  // namespace detail

/// Thread budget for internal loops. 0 selects hardware concurrency.
inline void set_thread_count(unsigned n) { detail::thread_setting() = n; }

inline unsigned thread_count() {
  unsigned n = detail::thread_setting();
  if (n == 0) {
    n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
  }
  return n;
}

/// Runs fn(i) for every i in [begin, end). Work is split into contiguous
/// chunks, so per-index writes land in the same slot no matter how many
/// threads run. fn must not throw.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, Fn&& fn) {
  const std::size_t count = end > begin ? end - begin : 0;
  if (count == 0) return;
  const unsigned threads = thread_count();
  if (threads <= 1 || count < 2 * threads) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  const std::size_t chunk = (count + threads - 1) / threads;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = begin + static_cast<std::size_t>(t) * chunk;
    if (lo >= end) break;
    const std::size_t hi = std::min(end, lo + chunk);
    workers.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace probcover
