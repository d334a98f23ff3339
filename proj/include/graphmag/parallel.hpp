#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace graphmag {

// Runs fn(i) for i in [0, count) on at most `workers` threads. Results are
// written by index, so output order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
	workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
	if (workers == 1) {
		for (std::size_t i = 0; i < count; ++i) fn(i);
		return;
	}
	std::atomic<std::size_t> next{0};
	std::exception_ptr failure;
	std::mutex failure_mutex;
	{
		std::vector<std::jthread> pool;
		pool.reserve(workers);
		for (unsigned w = 0; w < workers; ++w) {
			pool.emplace_back([&] {
				for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
					try {
						fn(i);
					} catch (...) {
						std::lock_guard lock(failure_mutex);
						if (!failure) failure = std::current_exception();
					}
				}
			});
		}
	}
	if (failure) std::rethrow_exception(failure);
}

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

} // namespace graphmag
