#pragma once
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>

#include <omp.h>

namespace louvainsplit {

/// Maps the conventional "0 = use all hardware threads" to a concrete count.
inline int resolveWorkers(int workers) {
  if (workers > 0) return workers;
  int n = omp_get_max_threads();
  return n > 0 ? n : 1;
}

/**
 * Fixed-size vector of boolean flags with atomic test-and-set.
 *
 * Used for visited/processed marks that are set concurrently by several
 * workers. All operations use relaxed ordering; callers rely only on the
 * monotone set-once property, never on cross-flag ordering.
 */
class AtomicFlags {
 public:
  explicit AtomicFlags(std::size_t n, bool initial = false)
      : size_(n), flags_(std::make_unique<std::atomic<std::uint8_t>[]>(n)) {
    fill(initial);
  }

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const { return flags_[i].load(std::memory_order_relaxed) != 0; }
  void set(std::size_t i) { flags_[i].store(1, std::memory_order_relaxed); }
  void clear(std::size_t i) { flags_[i].store(0, std::memory_order_relaxed); }

  /// Returns true if this call set the flag (it was clear before).
  bool testAndSet(std::size_t i) {
    return flags_[i].exchange(1, std::memory_order_relaxed) == 0;
  }

  void fill(bool value) {
    for (std::size_t i = 0; i < size_; ++i)
      flags_[i].store(value ? 1 : 0, std::memory_order_relaxed);
  }

  bool all() const {
    for (std::size_t i = 0; i < size_; ++i)
      if (!get(i)) return false;
    return true;
  }

 private:
  std::size_t size_;
  std::unique_ptr<std::atomic<std::uint8_t>[]> flags_;
};

}  // namespace louvainsplit
