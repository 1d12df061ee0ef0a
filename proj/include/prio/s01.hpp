#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prio/framework.hpp"
#include "prio/sets.hpp"

namespace prio {

// Request over bit-string items: block0 holds the enumerated values barred
// from side 0, block1 those barred from side 1. The parts are disjoint, so a
// fresh position always has at least one admissible bit.
struct S01Request {
  NatSet block0;
  NatSet block1;

  bool operator==(const S01Request&) const = default;
};

// The two sides a bit string carves an enumerated set into.
struct S01Sides {
  NatSet side0;
  NatSet side1;
};

// Framework of finite bit strings routing an injectively enumerated set: bit s
// sends the s-th enumerated value to side 0 or side 1. An item may follow
// another when the latter is a proper prefix, so every stage must grow the
// string. The enumeration is a finite list at desk scale; asking for a
// position beyond it raises a universe-exhausted error rather than inventing
// elements.
class S01Framework {
 public:
  using Item = BitStr;
  using Request = S01Request;

  explicit S01Framework(std::vector<Nat> enumeration) : enum_(std::move(enumeration)) {
    NatSet seen;
    for (Nat v : enum_) {
      if (seen.contains(v))
        throw_error(ErrKind::input, "s01: enumeration must be injective");
      seen.insert(v);
    }
  }

  std::string id() const { return "s01"; }

  const std::vector<Nat>& enumeration() const { return enum_; }

  Nat value_at(std::size_t index) const {
    if (index >= enum_.size())
      throw_error(ErrKind::universe_exhausted,
                  "s01: index " + std::to_string(index) + " beyond the supplied enumeration");
    return enum_[index];
  }

  Item initial_item() const { return {}; }
  Request initial_request() const { return {}; }

  bool may_follow(const Item& next, const Item& prev) const {
    return prev.proper_prefix_of(next);
  }

  // The split of the enumerated prefix induced by the routing bits.
  S01Sides sides(const Item& m) const {
    S01Sides out;
    for (std::size_t s = 0; s < m.size(); ++s) {
      if (m.at(s) == 0) out.side0.insert(value_at(s));
      else out.side1.insert(value_at(s));
    }
    return out;
  }

  bool compatible(const Item& m, const Request& u) const {
    const S01Sides sp = sides(m);
    return sp.side0.disjoint_with(u.block0) && sp.side1.disjoint_with(u.block1);
  }

  bool dominates(const Request& u, const Request& v) const {
    return v.block0.subset_of(u.block0) && v.block1.subset_of(u.block1);
  }

  std::optional<Request> try_join(const Request& u, const Request& v) const {
    Request j{u.block0.united(v.block0), u.block1.united(v.block1)};
    if (!j.block0.disjoint_with(j.block1)) return std::nullopt;
    return j;
  }

  void validate_request(const Request& u) const {
    if (!u.block0.disjoint_with(u.block1))
      throw_error(ErrKind::input, "s01 request: both sides blocked for the same value");
  }

  Successors<Item> successors(const Item& prev, const Request& u, std::size_t max_results) const {
    if (prev.size() >= enum_.size())
      throw_error(ErrKind::universe_exhausted, "s01: no enumeration indices left to route");
    Successors<Item> out;
    std::vector<Item> pool;
    const std::size_t depth = std::min<std::size_t>(2, enum_.size() - prev.size());
    grow(prev, u, depth, pool);
    sort_items_shortlex(*this, pool);
    // The listing stops at `depth` extra bits; longer extensions exist unless
    // the enumeration boundary is inside the listed horizon.
    out.complete = (enum_.size() - prev.size() <= depth);
    if (pool.size() > max_results) pool.resize(max_results);
    out.items = std::move(pool);
    return out;
  }

  Bytes item_bytes(const Item& m) const {
    Bytes out;
    put_bits(out, m);
    return out;
  }

  Bytes request_bytes(const Request& u) const {
    Bytes out, part;
    put_set(part, u.block0);
    put_block(out, part);
    part.clear();
    put_set(part, u.block1);
    put_block(out, part);
    return out;
  }

  Item item_from_bytes(const Bytes& bytes) const {
    std::size_t pos = 0;
    BitStr b;
    if (!get_bits(bytes, pos, b) || pos != bytes.size())
      throw_error(ErrKind::parse, "s01 item: bad serialization");
    return b;
  }

  Request request_from_bytes(const Bytes& bytes) const {
    std::size_t pos = 0;
    std::string_view p0, p1;
    if (!get_block(bytes, pos, p0) || !get_block(bytes, pos, p1) || pos != bytes.size())
      throw_error(ErrKind::parse, "s01 request: bad serialization");
    Request u;
    std::size_t inner = 0;
    if (!get_set(p0, inner, u.block0) || inner != p0.size())
      throw_error(ErrKind::parse, "s01 request: bad block0");
    inner = 0;
    if (!get_set(p1, inner, u.block1) || inner != p1.size())
      throw_error(ErrKind::parse, "s01 request: bad block1");
    validate_request(u);
    return u;
  }

  // All bit strings of length <= min(bound, enumeration length).
  template <class Fn>
  void for_each_item(Nat bound, Fn&& fn) const {
    const Nat maxlen = std::min<Nat>(bound, enum_.size());
    if (maxlen > 18) throw_error(ErrKind::resource, "s01: exhaustive bound too large");
    fn(BitStr{});
    for (Nat len = 1; len <= maxlen; ++len) {
      const Nat total = Nat{1} << len;
      for (Nat mask = 0; mask < total; ++mask) {
        BitStr b;
        for (Nat i = 0; i < len; ++i) b.push(static_cast<int>((mask >> i) & 1));
        fn(std::move(b));
      }
    }
  }

  bool operator==(const S01Framework&) const = default;

 private:
  void grow(const Item& from, const Request& u, std::size_t depth, std::vector<Item>& pool) const {
    if (depth == 0 || from.size() >= enum_.size()) return;
    const Nat value = enum_[from.size()];
    for (int bit : {0, 1}) {
      if (bit == 0 && u.block0.contains(value)) continue;
      if (bit == 1 && u.block1.contains(value)) continue;
      Item next = from.extended(bit);
      pool.push_back(next);
      grow(next, u, depth - 1, pool);
    }
  }

  std::vector<Nat> enum_;
};

}  // namespace prio
