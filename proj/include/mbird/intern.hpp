#pragma once

// Append-only set of byte strings for exploring millions of states. Keys
// live back to back in one arena and are addressed by insertion index, so
// insertion order doubles as a breadth-first queue.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace mbird {

class InternTable {
 public:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  explicit InternTable(std::size_t expected = 1024) { rehash(capacity_for(expected)); }

  /// Index of `key`, inserting it if absent. The flag is true on insertion.
  std::pair<std::uint32_t, bool> insert(std::string_view key) {
    const std::uint64_t h = hash(key);
    std::size_t slot = h & mask_;
    for (;; slot = (slot + 1) & mask_) {
      const std::uint32_t id = slots_[slot];
      if (id == kNone) break;
      if (hashes_[id] == static_cast<std::uint32_t>(h) && at(id) == key) return {id, false};
    }
    const auto id = static_cast<std::uint32_t>(hashes_.size());
    arena_.insert(arena_.end(), key.begin(), key.end());
    offsets_.push_back(arena_.size());
    hashes_.push_back(static_cast<std::uint32_t>(h));
    slots_[slot] = id;
    if (2 * size() > slots_.size()) rehash(2 * slots_.size());
    return {id, true};
  }

  std::optional<std::uint32_t> find(std::string_view key) const {
    const std::uint64_t h = hash(key);
    for (std::size_t slot = h & mask_;; slot = (slot + 1) & mask_) {
      const std::uint32_t id = slots_[slot];
      if (id == kNone) return std::nullopt;
      if (hashes_[id] == static_cast<std::uint32_t>(h) && at(id) == key) return id;
    }
  }

  std::string_view at(std::uint32_t id) const {
    return {arena_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }

  std::size_t size() const noexcept { return hashes_.size(); }
  std::size_t arena_bytes() const noexcept { return arena_.size(); }

 private:
  static std::uint64_t hash(std::string_view key) {
    return std::hash<std::string_view>{}(key);
  }

  static std::size_t capacity_for(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap *= 2;
    return cap;
  }

  void rehash(std::size_t capacity) {
    slots_.assign(capacity, kNone);
    mask_ = capacity - 1;
    for (std::uint32_t id = 0; id < hashes_.size(); ++id) {
      std::size_t slot = hashes_[id] & mask_;
      while (slots_[slot] != kNone) slot = (slot + 1) & mask_;
      slots_[slot] = id;
    }
  }

  std::vector<char> arena_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> hashes_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
};

}  // namespace mbird
