#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string_view>
#include <vector>

#include "prio/bytes.hpp"
#include "prio/errors.hpp"

namespace prio {

// Finite set of naturals, kept sorted and duplicate-free. Value semantics
// throughout; the engine never mutates a set another value still refers to.
class NatSet {
 public:
  NatSet() = default;
  NatSet(std::initializer_list<Nat> xs) : elems_(xs) { normalize(); }

  static NatSet from(std::vector<Nat> xs) {
    NatSet s;
    s.elems_ = std::move(xs);
    s.normalize();
    return s;
  }

  bool empty() const { return elems_.empty(); }
  std::size_t size() const { return elems_.size(); }
  const std::vector<Nat>& values() const { return elems_; }

  bool contains(Nat x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
  }

  void insert(Nat x) {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
    if (it == elems_.end() || *it != x) elems_.insert(it, x);
  }

  bool subset_of(const NatSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(),
                         elems_.begin(), elems_.end());
  }

  bool disjoint_with(const NatSet& other) const {
    auto a = elems_.begin();
    auto b = other.elems_.begin();
    while (a != elems_.end() && b != other.elems_.end()) {
      if (*a == *b) return false;
      if (*a < *b) ++a; else ++b;
    }
    return true;
  }

  NatSet united(const NatSet& other) const {
    NatSet out;
    out.elems_.reserve(size() + other.size());
    std::set_union(elems_.begin(), elems_.end(),
                   other.elems_.begin(), other.elems_.end(),
                   std::back_inserter(out.elems_));
    return out;
  }

  NatSet intersected(const NatSet& other) const {
    NatSet out;
    std::set_intersection(elems_.begin(), elems_.end(),
                          other.elems_.begin(), other.elems_.end(),
                          std::back_inserter(out.elems_));
    return out;
  }

  auto operator<=>(const NatSet&) const = default;

 private:
  void normalize() {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  std::vector<Nat> elems_;
};

// Canonical set serialization: count, then strictly increasing elements, all
// as varints.
inline void put_set(Bytes& out, const NatSet& s) {
  put_varint(out, s.size());
  for (Nat x : s.values()) put_varint(out, x);
}

inline bool get_set(std::string_view buf, std::size_t& pos, NatSet& out) {
  Nat count = 0;
  if (!get_varint(buf, pos, count)) return false;
  std::vector<Nat> xs;
  xs.reserve(static_cast<std::size_t>(count));
  Nat prev = 0;
  for (Nat i = 0; i < count; ++i) {
    Nat x = 0;
    if (!get_varint(buf, pos, x)) return false;
    if (i > 0 && x <= prev) return false;  // must be strictly increasing
    xs.push_back(x);
    prev = x;
  }
  out = NatSet::from(std::move(xs));
  return true;
}

// Finite bit string. Bits are stored unpacked for simplicity; the canonical
// serialization packs them (bit s lives in byte s>>3 at position s&7).
class BitStr {
 public:
  BitStr() = default;

  static BitStr parse(std::string_view zeros_ones) {
    BitStr b;
    b.bits_.reserve(zeros_ones.size());
    for (char c : zeros_ones) {
      if (c != '0' && c != '1') throw_error(ErrKind::parse, "bit string must be over {0,1}");
      b.bits_.push_back(c == '1' ? 1 : 0);
    }
    return b;
  }

  std::string str() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(b ? '1' : '0');
    return out;
  }

  bool empty() const { return bits_.empty(); }
  std::size_t size() const { return bits_.size(); }
  int at(std::size_t i) const { return bits_[i]; }

  void push(int bit) { bits_.push_back(bit ? 1 : 0); }

  BitStr extended(int bit) const {
    BitStr out = *this;
    out.push(bit);
    return out;
  }

  BitStr prefix(std::size_t len) const {
    BitStr out;
    out.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(std::min(len, size())));
    return out;
  }

  // True when *this is a proper prefix of longer.
  bool proper_prefix_of(const BitStr& longer) const {
    if (size() >= longer.size()) return false;
    return std::equal(bits_.begin(), bits_.end(), longer.bits_.begin());
  }

  bool prefix_of(const BitStr& other) const {
    if (size() > other.size()) return false;
    return std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
  }

  auto operator<=>(const BitStr&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline void put_bits(Bytes& out, const BitStr& b) {
  put_varint(out, b.size());
  unsigned char byte = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.at(i)) byte |= static_cast<unsigned char>(1u << (i & 7));
    if ((i & 7) == 7) {
      out.push_back(static_cast<char>(byte));
      byte = 0;
    }
  }
  if (b.size() % 8 != 0) out.push_back(static_cast<char>(byte));
}

inline bool get_bits(std::string_view buf, std::size_t& pos, BitStr& out) {
  Nat count = 0;
  if (!get_varint(buf, pos, count)) return false;
  const std::size_t nbytes = (static_cast<std::size_t>(count) + 7) / 8;
  if (nbytes > buf.size() - pos) return false;
  out = BitStr();
  for (Nat i = 0; i < count; ++i) {
    const auto byte = static_cast<unsigned char>(buf[pos + static_cast<std::size_t>(i / 8)]);
    out.push((byte >> (i & 7)) & 1);
  }
  // Trailing padding bits must be zero for the encoding to be canonical.
  if (count % 8 != 0) {
    const auto last = static_cast<unsigned char>(buf[pos + nbytes - 1]);
    if ((last >> (count % 8)) != 0) return false;
  }
  pos += nbytes;
  return true;
}

}  // namespace prio
