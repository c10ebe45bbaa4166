#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "mbkrg/vertex_set.hpp"

namespace mbkrg {

/// Memo of small per-position values keyed on (maker set, breaker set).
/// Zero means "absent". Safe for concurrent load/store; values stored for a
/// key are unique per solve, so racing writers agree.
class PositionTable {
 public:
  virtual ~PositionTable() = default;

  virtual std::uint8_t load(VertexSet maker, VertexSet breaker) const = 0;
  virtual void store(VertexSet maker, VertexSet breaker, std::uint8_t value) = 0;
  virtual std::size_t entries() const = 0;
  virtual bool dense() const = 0;
};

/// One byte per point of {empty, maker, breaker}^n, addressed by the base-3
/// number whose digit i is the owner of vertex i.
class DenseTernaryTable final : public PositionTable {
 public:
  explicit DenseTernaryTable(int n);

  std::uint8_t load(VertexSet maker, VertexSet breaker) const override {
    return cells_[index(maker, breaker)].load(std::memory_order_relaxed);
  }
  void store(VertexSet maker, VertexSet breaker, std::uint8_t value) override {
    if (cells_[index(maker, breaker)].exchange(value, std::memory_order_relaxed) == 0) {
      entries_.fetch_add(1, std::memory_order_relaxed);
    }
  }
  std::size_t entries() const override { return entries_.load(std::memory_order_relaxed); }
  bool dense() const override { return true; }

  std::uint64_t index(VertexSet maker, VertexSet breaker) const;

  static std::uint64_t cell_count(int n);

 private:
  int n_;
  std::vector<std::atomic<std::uint8_t>> cells_;
  std::atomic<std::size_t> entries_{0};
};

/// Hash map split into mutex-guarded shards, for orders too large to address
/// densely within the memory budget.
class ShardedHashTable final : public PositionTable {
 public:
  std::uint8_t load(VertexSet maker, VertexSet breaker) const override;
  void store(VertexSet maker, VertexSet breaker, std::uint8_t value) override;
  std::size_t entries() const override;
  bool dense() const override { return false; }

 private:
  static constexpr std::size_t kShards = 64;

  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<std::uint64_t, std::uint8_t> map;
  };

  static std::uint64_t key(VertexSet maker, VertexSet breaker) {
    return maker | (breaker << 32);
  }
  static std::size_t shard_of(std::uint64_t key) {
    return static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ULL) >> 58) % kShards;
  }

  std::array<Shard, kShards> shards_;
};

/// Dense when 3^n cells fit in `budget_entries`, hashed otherwise.
std::unique_ptr<PositionTable> make_position_table(int n, std::size_t budget_entries);

}  // namespace mbkrg
