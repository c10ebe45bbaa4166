#include "mbkrg/position_table.hpp"

#include "mbkrg/error.hpp"

namespace mbkrg {

namespace {

// kTernaryByte[b] is the base-3 number whose digits are the bits of b.
constexpr std::array<std::uint32_t, 256> make_ternary_bytes() {
  std::array<std::uint32_t, 256> out{};
  for (std::uint32_t b = 0; b < 256; ++b) {
    std::uint32_t value = 0;
    std::uint32_t place = 1;
    for (int i = 0; i < 8; ++i) {
      if ((b >> i) & 1U) value += place;
      place *= 3;
    }
    out[b] = value;
  }
  return out;
}

constexpr auto kTernaryByte = make_ternary_bytes();
constexpr std::uint64_t kPow3Byte = 6561;  // 3^8

}  // namespace

DenseTernaryTable::DenseTernaryTable(int n) : n_(n), cells_(cell_count(n)) {
  if (n > 32) throw Error(ErrorCode::SizeCapExceeded, "dense table beyond 32 vertices");
}

std::uint64_t DenseTernaryTable::cell_count(int n) {
  std::uint64_t c = 1;
  for (int i = 0; i < n; ++i) c *= 3;
  return c;
}

std::uint64_t DenseTernaryTable::index(VertexSet maker, VertexSet breaker) const {
  std::uint64_t idx = 0;
  std::uint64_t place = 1;
  for (int shift = 0; shift < n_; shift += 8) {
    const auto m = static_cast<std::size_t>((maker >> shift) & 0xFF);
    const auto b = static_cast<std::size_t>((breaker >> shift) & 0xFF);
    idx += (kTernaryByte[m] + 2 * static_cast<std::uint64_t>(kTernaryByte[b])) * place;
    place *= kPow3Byte;
  }
  return idx;
}

std::uint8_t ShardedHashTable::load(VertexSet maker, VertexSet breaker) const {
  const std::uint64_t k = key(maker, breaker);
  const Shard& shard = shards_[shard_of(k)];
  std::lock_guard lock(shard.mutex);
  auto it = shard.map.find(k);
  return it == shard.map.end() ? 0 : it->second;
}

void ShardedHashTable::store(VertexSet maker, VertexSet breaker, std::uint8_t value) {
  const std::uint64_t k = key(maker, breaker);
  Shard& shard = shards_[shard_of(k)];
  std::lock_guard lock(shard.mutex);
  shard.map[k] = value;
}

std::size_t ShardedHashTable::entries() const {
  std::size_t total = 0;
  for (const Shard& shard : shards_) {
    std::lock_guard lock(shard.mutex);
    total += shard.map.size();
  }
  return total;
}

std::unique_ptr<PositionTable> make_position_table(int n, std::size_t budget_entries) {
  if (n <= 32 && DenseTernaryTable::cell_count(n) <= budget_entries) {
    return std::make_unique<DenseTernaryTable>(n);
  }
  return std::make_unique<ShardedHashTable>();
}

}  // namespace mbkrg
