#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "prio/framework.hpp"
#include "prio/sets.hpp"

namespace prio {

// Request over growing finite sets: a positive part that must be inside the
// item and a negative part the item must avoid. The parts are disjoint.
struct SpmRequest {
  NatSet pos;
  NatSet neg;

  bool operator==(const SpmRequest&) const = default;
};

// Framework of growing finite subsets of the naturals. An item may follow
// another when it contains it (improper containment, so a stage may repeat
// the previous item).
class SpmFramework {
 public:
  using Item = NatSet;
  using Request = SpmRequest;

  std::string id() const { return "spm"; }

  Item initial_item() const { return {}; }
  Request initial_request() const { return {}; }

  bool may_follow(const Item& next, const Item& prev) const {
    return prev.subset_of(next);
  }

  bool compatible(const Item& m, const Request& u) const {
    return u.pos.subset_of(m) && m.disjoint_with(u.neg);
  }

  // Exact over the unbounded item space: positive and negative parts can only
  // be discharged by containment.
  bool dominates(const Request& u, const Request& v) const {
    return v.pos.subset_of(u.pos) && v.neg.subset_of(u.neg);
  }

  std::optional<Request> try_join(const Request& u, const Request& v) const {
    Request j{u.pos.united(v.pos), u.neg.united(v.neg)};
    if (!j.pos.disjoint_with(j.neg)) return std::nullopt;
    return j;
  }

  void validate_request(const Request& u) const {
    if (!u.pos.disjoint_with(u.neg))
      throw_error(ErrKind::input, "spm request: positive and negative parts overlap");
  }

  Successors<Item> successors(const Item& prev, const Request& u, std::size_t max_results) const {
    Successors<Item> out;
    Item base = prev.united(u.pos);
    if (!base.disjoint_with(u.neg)) {
      out.complete = true;  // nothing can ever satisfy u from here
      return out;
    }
    std::vector<Item> pool;
    pool.push_back(base);
    // Single-element growths over the smallest admissible fresh naturals.
    Nat x = 0;
    std::size_t found = 0;
    while (found + 1 < max_results + 4 && x < base.size() + u.neg.size() + max_results + 8) {
      if (!base.contains(x) && !u.neg.contains(x)) {
        Item grown = base;
        grown.insert(x);
        pool.push_back(std::move(grown));
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
    Bytes out;
    put_set(out, m);
    return out;
  }

  Bytes request_bytes(const Request& u) const {
    Bytes out, part;
    put_set(part, u.pos);
    put_block(out, part);
    part.clear();
    put_set(part, u.neg);
    put_block(out, part);
    return out;
  }

  Item item_from_bytes(const Bytes& bytes) const {
    std::size_t pos = 0;
    NatSet s;
    if (!get_set(bytes, pos, s) || pos != bytes.size())
      throw_error(ErrKind::parse, "spm item: bad serialization");
    return s;
  }

  Request request_from_bytes(const Bytes& bytes) const {
    std::size_t pos = 0;
    std::string_view p0, p1;
    Request u;
    std::size_t inner = 0;
    if (!get_block(bytes, pos, p0) || !get_block(bytes, pos, p1) || pos != bytes.size())
      throw_error(ErrKind::parse, "spm request: bad serialization");
    inner = 0;
    if (!get_set(p0, inner, u.pos) || inner != p0.size())
      throw_error(ErrKind::parse, "spm request: bad positive part");
    inner = 0;
    if (!get_set(p1, inner, u.neg) || inner != p1.size())
      throw_error(ErrKind::parse, "spm request: bad negative part");
    validate_request(u);
    return u;
  }

  // Exhaustive enumeration for the brute-force oracle: all subsets of
  // {0..bound-1}.
  template <class Fn>
  void for_each_item(Nat bound, Fn&& fn) const {
    if (bound > 20) throw_error(ErrKind::resource, "spm: exhaustive bound too large");
    const Nat total = Nat{1} << bound;
    for (Nat mask = 0; mask < total; ++mask) {
      std::vector<Nat> xs;
      for (Nat i = 0; i < bound; ++i) {
        if (mask & (Nat{1} << i)) xs.push_back(i);
      }
      fn(NatSet::from(std::move(xs)));
    }
  }

  bool operator==(const SpmFramework&) const = default;
};

}  // namespace prio
