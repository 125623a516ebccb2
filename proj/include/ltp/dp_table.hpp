#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ltp/graph.hpp"
#include "ltp/oracle.hpp"

namespace ltp {

struct DpEntry {
  TrailLength length;
  // Last arc of the trail before `last`; absent for single-edge trails and
  // for unreachable entries.
  std::optional<Arc> predecessor;
};

// Memo of L(S, first, last) keyed by edge set and oriented end edges. Each
// touched set owns a dense block of (2|S|)^2 slots addressed by the rank of
// the end edges inside the set.
class DpTable {
 public:
  explicit DpTable(int edge_count);

  int edge_count() const { return edge_count_; }

  std::optional<DpEntry> find(EdgeSet s, Arc first, Arc last) const;
  void store(EdgeSet s, Arc first, Arc last, const DpEntry& entry);

  // Number of stored entries, overall or for sets of one cardinality.
  std::size_t size() const { return stored_; }
  std::size_t size_with_cardinality(int k) const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [bits, offset] : order_) {
      const EdgeSet s(bits);
      const std::vector<int> members = s.to_vector();
      const int width = 2 * s.size();
      for (int i = 0; i < width; ++i) {
        for (int j = 0; j < width; ++j) {
          const Slot& slot = slots_[offset + static_cast<std::size_t>(i * width + j)];
          if (slot.length == kEmpty) continue;
          const Arc first(2 * members[static_cast<std::size_t>(i / 2)] + (i & 1));
          const Arc last(2 * members[static_cast<std::size_t>(j / 2)] + (j & 1));
          fn(s, first, last, decode(slot));
        }
      }
    }
  }

  // Binary spill records: set as a little-endian bit field padded to a
  // multiple of 8 bytes, first/last arc ids as uint16, length as int16
  // (-1 for none), predecessor arc id as uint16 (0xFFFF for none).
  void write_spill(std::ostream& out) const;
  static DpTable read_spill(std::istream& in, int edge_count);

 private:
  static constexpr std::int8_t kEmpty = -2;
  static constexpr std::int8_t kNone = -1;
  static constexpr std::uint8_t kNoArc = 0xFF;

  struct Slot {
    std::int8_t length = kEmpty;
    std::uint8_t predecessor = kNoArc;
  };

  static DpEntry decode(const Slot& slot);
  std::optional<std::size_t> block_offset(EdgeSet s) const;
  std::size_t block_offset_or_create(EdgeSet s);
  static std::size_t local_index(EdgeSet s, Arc first, Arc last);

  int edge_count_;
  std::size_t stored_ = 0;
  std::vector<Slot> slots_;
  // Set bits -> block offset, in creation order.
  std::vector<std::pair<std::uint32_t, std::size_t>> order_;
  std::unordered_map<std::uint32_t, std::size_t> offsets_;
};

}  // namespace ltp
