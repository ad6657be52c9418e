#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace herder {

// Fixed-size worker pool for index-parallel loops. Work items are pure
// functions of their index, so the result of parallel_for does not depend on
// how indices are distributed over workers.
class ThreadPool {
 public:
  // threads == 0 picks the hardware concurrency; threads == 1 runs inline.
  explicit ThreadPool(std::size_t threads = 0);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  std::size_t thread_count() const { return thread_count_; }

  // Runs fn(0) ... fn(count-1), returning when all have completed.
  // The calling thread participates. Rethrows the first captured exception.
  void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

 private:
  void worker_loop();
  void run_indices(const std::function<void(std::size_t)>& fn);

  std::size_t thread_count_ = 1;
  std::vector<std::thread> workers_;

  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::size_t job_count_ = 0;
  std::size_t next_index_ = 0;
  std::size_t active_workers_ = 0;
  std::uint64_t generation_ = 0;
  bool stopping_ = false;
  std::exception_ptr first_error_;
};

}  // namespace herder
