#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prio/framework.hpp"
#include "prio/sets.hpp"

namespace prio {

// Item for the disjoint-pair framework: the two sets under construction.
struct SppItem {
  NatSet a;
  NatSet b;

  bool operator==(const SppItem&) const = default;
};

// Request: elements forced into each side plus a barred zone no side may
// touch. The three parts are pairwise disjoint.
struct SppRequest {
  NatSet a_pos;
  NatSet b_pos;
  NatSet barred;

  bool operator==(const SppRequest&) const = default;
};

// Framework of growing pairs of disjoint finite sets, used to build pairs of
// enumerable sets with prescribed joint behavior.
class SppFramework {
 public:
  using Item = SppItem;
  using Request = SppRequest;

  std::string id() const { return "spp"; }

  Item initial_item() const { return {}; }
  Request initial_request() const { return {}; }

  void validate_item(const Item& m) const {
    if (!m.a.disjoint_with(m.b))
      throw_error(ErrKind::input, "spp item: sides overlap");
  }

  bool may_follow(const Item& next, const Item& prev) const {
    return prev.a.subset_of(next.a) && prev.b.subset_of(next.b);
  }

  bool compatible(const Item& m, const Request& u) const {
    return u.a_pos.subset_of(m.a) && u.b_pos.subset_of(m.b) &&
           m.a.disjoint_with(u.barred) && m.b.disjoint_with(u.barred);
  }

  bool dominates(const Request& u, const Request& v) const {
    return v.a_pos.subset_of(u.a_pos) && v.b_pos.subset_of(u.b_pos) &&
           v.barred.subset_of(u.barred);
  }

  std::optional<Request> try_join(const Request& u, const Request& v) const {
    Request j{u.a_pos.united(v.a_pos), u.b_pos.united(v.b_pos), u.barred.united(v.barred)};
    if (!j.a_pos.disjoint_with(j.b_pos) || !j.a_pos.disjoint_with(j.barred) ||
        !j.b_pos.disjoint_with(j.barred))
      return std::nullopt;
    return j;
  }

  void validate_request(const Request& u) const {
    if (!u.a_pos.disjoint_with(u.b_pos) || !u.a_pos.disjoint_with(u.barred) ||
        !u.b_pos.disjoint_with(u.barred))
      throw_error(ErrKind::input, "spp request: parts must be pairwise disjoint");
  }

  Successors<Item> successors(const Item& prev, const Request& u, std::size_t max_results) const {
    validate_item(prev);
    Successors<Item> out;
    Item base{prev.a.united(u.a_pos), prev.b.united(u.b_pos)};
    const NatSet touched = base.a.united(base.b);
    if (!base.a.disjoint_with(base.b) || !touched.disjoint_with(u.barred)) {
      out.complete = true;
      return out;
    }
    std::vector<Item> pool;
    pool.push_back(base);
    Nat x = 0;
    std::size_t found = 0;
    while (found + 1 < max_results + 4 &&
           x < touched.size() + u.barred.size() + max_results + 8) {
      if (!touched.contains(x) && !u.barred.contains(x)) {
        Item left = base;
        left.a.insert(x);
        pool.push_back(std::move(left));
        Item right = base;
        right.b.insert(x);
        pool.push_back(std::move(right));
        ++found;
      }
      ++x;
    }
    sort_items_shortlex(*this, pool);
    if (pool.size() > max_results) pool.resize(max_results);
    out.items = std::move(pool);
    return out;
  }

  Bytes item_bytes(const Item& m) const {
    Bytes out, part;
    put_set(part, m.a);
    put_block(out, part);
    part.clear();
    put_set(part, m.b);
    put_block(out, part);
    return out;
  }

  Bytes request_bytes(const Request& u) const {
    Bytes out, part;
    put_set(part, u.a_pos);
    put_block(out, part);
    part.clear();
    put_set(part, u.b_pos);
    put_block(out, part);
    part.clear();
    put_set(part, u.barred);
    put_block(out, part);
    return out;
  }

  Item item_from_bytes(const Bytes& bytes) const {
    std::size_t pos = 0;
    std::string_view p0, p1;
    if (!get_block(bytes, pos, p0) || !get_block(bytes, pos, p1) || pos != bytes.size())
      throw_error(ErrKind::parse, "spp item: bad serialization");
    Item m;
    std::size_t inner = 0;
    if (!get_set(p0, inner, m.a) || inner != p0.size())
      throw_error(ErrKind::parse, "spp item: bad first side");
    inner = 0;
    if (!get_set(p1, inner, m.b) || inner != p1.size())
      throw_error(ErrKind::parse, "spp item: bad second side");
    validate_item(m);
    return m;
  }

  Request request_from_bytes(const Bytes& bytes) const {
    std::size_t pos = 0;
    std::string_view p0, p1, p2;
    if (!get_block(bytes, pos, p0) || !get_block(bytes, pos, p1) ||
        !get_block(bytes, pos, p2) || pos != bytes.size())
      throw_error(ErrKind::parse, "spp request: bad serialization");
    Request u;
    std::size_t inner = 0;
    if (!get_set(p0, inner, u.a_pos) || inner != p0.size())
      throw_error(ErrKind::parse, "spp request: bad a-positive part");
    inner = 0;
    if (!get_set(p1, inner, u.b_pos) || inner != p1.size())
      throw_error(ErrKind::parse, "spp request: bad b-positive part");
    inner = 0;
    if (!get_set(p2, inner, u.barred) || inner != p2.size())
      throw_error(ErrKind::parse, "spp request: bad barred part");
    validate_request(u);
    return u;
  }

  // All pairs of disjoint subsets of {0..bound-1} (3^bound assignments).
  template <class Fn>
  void for_each_item(Nat bound, Fn&& fn) const {
    if (bound > 13) throw_error(ErrKind::resource, "spp: exhaustive bound too large");
    Nat total = 1;
    for (Nat i = 0; i < bound; ++i) total *= 3;
    for (Nat code = 0; code < total; ++code) {
      Item m;
      Nat c = code;
      for (Nat i = 0; i < bound; ++i) {
        switch (c % 3) {
          case 1: m.a.insert(i); break;
          case 2: m.b.insert(i); break;
          default: break;
        }
        c /= 3;
      }
      fn(std::move(m));
    }
  }

  bool operator==(const SppFramework&) const = default;
};

}  // namespace prio
