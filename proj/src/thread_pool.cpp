#include "herder/thread_pool.hpp"

#include <algorithm>

namespace herder {

ThreadPool::ThreadPool(std::size_t threads) {
  if (threads == 0) {
    threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
  thread_count_ = threads;
  // The calling thread acts as one worker; extra workers sleep between jobs.
  for (std::size_t i = 1; i < threads; ++i) {
    workers_.emplace_back([this] { worker_loop(); });
  }
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  start_cv_.notify_all();
  for (auto& worker : workers_) worker.join();
}

void ThreadPool::worker_loop() {
  std::uint64_t seen_generation = 0;
  while (true) {
    const std::function<void(std::size_t)>* fn = nullptr;
    {
      std::unique_lock lock(mutex_);
      start_cv_.wait(lock, [&] { return stopping_ || generation_ != seen_generation; });
      if (stopping_) return;
      seen_generation = generation_;
      // The job may already be complete if the submitting thread drained it
      // before this worker woke up.
      if (job_ == nullptr || next_index_ >= job_count_) continue;
      fn = job_;
      ++active_workers_;
    }
    run_indices(*fn);
    {
      std::lock_guard lock(mutex_);
      if (--active_workers_ == 0) done_cv_.notify_all();
    }
  }
}

void ThreadPool::run_indices(const std::function<void(std::size_t)>& fn) {
  while (true) {
    std::size_t index;
    {
      std::lock_guard lock(mutex_);
      if (next_index_ >= job_count_) return;
      index = next_index_++;
    }
    try {
      fn(index);
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!first_error_) first_error_ = std::current_exception();
    }
  }
}

void ThreadPool::parallel_for(std::size_t count,
                              const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  if (workers_.empty()) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  {
    std::lock_guard lock(mutex_);
    job_ = &fn;
    job_count_ = count;
    next_index_ = 0;
    first_error_ = nullptr;
    ++generation_;
  }
  start_cv_.notify_all();

  run_indices(fn);

  std::unique_lock lock(mutex_);
  done_cv_.wait(lock, [&] { return active_workers_ == 0 && next_index_ >= job_count_; });
  job_ = nullptr;
  if (first_error_) std::rethrow_exception(first_error_);
}

}  // namespace herder
