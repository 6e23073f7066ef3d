#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace braces {

  inline std::size_t default_jobs() {
    auto n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
  }

  // Runs body(i) for i in [0, n) on up to `jobs` threads (0 = all cores).
  // The first exception thrown by any task is rethrown after all threads join.
  inline void parallel_for(std::size_t n, std::size_t jobs,
                           std::function<void(std::size_t)> const& body) {
    if (jobs == 0) {
      jobs = default_jobs();
    }
    jobs = std::min(jobs, n);
    if (jobs <= 1) {
      for (std::size_t i = 0; i < n; ++i) {
        body(i);
      }
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr       error;
    std::mutex               error_mutex;
    auto                     worker = [&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) {
            error = std::current_exception();
          }
          next = n;
        }
      }
    };
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < jobs; ++t) {
      threads.emplace_back(worker);
    }
    for (auto& t : threads) {
      t.join();
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }

}  // namespace braces
