#include "ltp/dp_table.hpp"

#include <istream>
#include <ostream>

namespace ltp {

DpTable::DpTable(int edge_count) : edge_count_(edge_count) {
  if (edge_count < 0 || edge_count > kMaxEdges) throw std::invalid_argument("DpTable: bad edge count");
}

std::size_t DpTable::local_index(EdgeSet s, Arc first, Arc last) {
  const int width = 2 * s.size();
  const int i = 2 * s.rank(first.edge()) + (first.is_backward() ? 1 : 0);
  const int j = 2 * s.rank(last.edge()) + (last.is_backward() ? 1 : 0);
  return static_cast<std::size_t>(i * width + j);
}

std::optional<std::size_t> DpTable::block_offset(EdgeSet s) const {
  const auto it = offsets_.find(s.bits());
  if (it == offsets_.end()) return std::nullopt;
  return it->second;
}

std::size_t DpTable::block_offset_or_create(EdgeSet s) {
  if (auto offset = block_offset(s)) return *offset;
  const std::size_t offset = slots_.size();
  const std::size_t width = 2 * static_cast<std::size_t>(s.size());
  slots_.resize(offset + width * width);
  offsets_.emplace(s.bits(), offset);
  order_.emplace_back(s.bits(), offset);
  return offset;
}

DpEntry DpTable::decode(const Slot& slot) {
  DpEntry entry;
  if (slot.length >= 0) entry.length = slot.length;
  if (slot.predecessor != kNoArc) entry.predecessor = Arc(slot.predecessor);
  return entry;
}

std::optional<DpEntry> DpTable::find(EdgeSet s, Arc first, Arc last) const {
  if (!s.contains(first.edge()) || !s.contains(last.edge())) return std::nullopt;
  const auto offset = block_offset(s);
  if (!offset) return std::nullopt;
  const Slot& slot = slots_[*offset + local_index(s, first, last)];
  if (slot.length == kEmpty) return std::nullopt;
  return decode(slot);
}

void DpTable::store(EdgeSet s, Arc first, Arc last, const DpEntry& entry) {
  if (!s.contains(first.edge()) || !s.contains(last.edge())) {
    throw std::invalid_argument("DpTable::store: end edges must belong to the set");
  }
  const std::size_t offset = block_offset_or_create(s);
  Slot& slot = slots_[offset + local_index(s, first, last)];
  if (slot.length == kEmpty) ++stored_;
  slot.length = entry.length ? static_cast<std::int8_t>(*entry.length) : kNone;
  slot.predecessor = entry.predecessor ? static_cast<std::uint8_t>(entry.predecessor->id()) : kNoArc;
}

std::size_t DpTable::size_with_cardinality(int k) const {
  std::size_t count = 0;
  for (const auto& [bits, offset] : order_) {
    const EdgeSet s(bits);
    if (s.size() != k) continue;
    const std::size_t width = 2 * static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < width * width; ++i) {
      if (slots_[offset + i].length != kEmpty) ++count;
    }
  }
  return count;
}

namespace {

void put_u16(std::ostream& out, std::uint16_t v) {
  const char bytes[2] = {static_cast<char>(v & 0xFF), static_cast<char>(v >> 8)};
  out.write(bytes, 2);
}

std::uint16_t get_u16(std::istream& in) {
  unsigned char bytes[2];
  in.read(reinterpret_cast<char*>(bytes), 2);
  return static_cast<std::uint16_t>(bytes[0] | (bytes[1] << 8));
}

std::size_t set_field_bytes(int edge_count) {
  return 8 * static_cast<std::size_t>((std::max(edge_count, 1) + 63) / 64);
}

}  // namespace

void DpTable::write_spill(std::ostream& out) const {
  const std::size_t field = set_field_bytes(edge_count_);
  for_each([&](EdgeSet s, Arc first, Arc last, const DpEntry& entry) {
    for (std::size_t i = 0; i < field; ++i) {
      out.put(static_cast<char>(i < 4 ? (s.bits() >> (8 * i)) & 0xFF : 0));
    }
    put_u16(out, static_cast<std::uint16_t>(first.id()));
    put_u16(out, static_cast<std::uint16_t>(last.id()));
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(entry.length.value_or(-1))));
    put_u16(out, entry.predecessor ? static_cast<std::uint16_t>(entry.predecessor->id()) : 0xFFFF);
  });
}

DpTable DpTable::read_spill(std::istream& in, int edge_count) {
  DpTable table(edge_count);
  const std::size_t field = set_field_bytes(edge_count);
  std::vector<unsigned char> bytes(field);
  while (in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(field))) {
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < 4; ++i) bits |= std::uint32_t{bytes[i]} << (8 * i);
    const Arc first(get_u16(in));
    const Arc last(get_u16(in));
    const auto length = static_cast<std::int16_t>(get_u16(in));
    const std::uint16_t predecessor = get_u16(in);
    if (!in) throw std::runtime_error("truncated spill record");
    DpEntry entry;
    if (length >= 0) entry.length = length;
    if (predecessor != 0xFFFF) entry.predecessor = Arc(predecessor);
    table.store(EdgeSet(bits), first, last, entry);
  }
  return table;
}

}  // namespace ltp
