#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prio/framework.hpp"
#include "prio/sets.hpp"

namespace prio {

// Request over index sets: indices that must be collected, and enumerated
// values the collected image must avoid. Well-formed only when the required
// indices map outside the banned values.
struct SsepRequest {
  NatSet must_include;   // enumeration indices
  NatSet banned_values;  // elements of the enumerated set

  bool operator==(const SsepRequest&) const = default;
};

// Framework of growing sets of enumeration indices into a fixed injectively
// enumerated set; the limit object is the image of the collected indices.
class SsepFramework {
 public:
  using Item = NatSet;  // indices into the enumeration
  using Request = SsepRequest;

  explicit SsepFramework(std::vector<Nat> enumeration) : enum_(std::move(enumeration)) {
    NatSet seen;
    for (Nat v : enum_) {
      if (seen.contains(v))
        throw_error(ErrKind::input, "ssep: enumeration must be injective");
      seen.insert(v);
    }
  }

  std::string id() const { return "ssep"; }

  const std::vector<Nat>& enumeration() const { return enum_; }

  Nat value_at(Nat index) const {
    if (index >= enum_.size())
      throw_error(ErrKind::universe_exhausted,
                  "ssep: index " + std::to_string(index) + " beyond the supplied enumeration");
    return enum_[static_cast<std::size_t>(index)];
  }

  NatSet image(const Item& indices) const {
    NatSet out;
    for (Nat s : indices.values()) out.insert(value_at(s));
    return out;
  }

  Item initial_item() const { return {}; }
  Request initial_request() const { return {}; }

  bool may_follow(const Item& next, const Item& prev) const {
    return prev.subset_of(next);
  }

  bool compatible(const Item& k, const Request& u) const {
    return u.must_include.subset_of(k) && image(k).disjoint_with(u.banned_values);
  }

  bool dominates(const Request& u, const Request& v) const {
    return v.must_include.subset_of(u.must_include) &&
           v.banned_values.subset_of(u.banned_values);
  }

  std::optional<Request> try_join(const Request& u, const Request& v) const {
    Request j{u.must_include.united(v.must_include), u.banned_values.united(v.banned_values)};
    if (!image(j.must_include).disjoint_with(j.banned_values)) return std::nullopt;
    return j;
  }

  void validate_request(const Request& u) const {
    if (!image(u.must_include).disjoint_with(u.banned_values))
      throw_error(ErrKind::input, "ssep request: required indices map into the banned values");
  }

  Successors<Item> successors(const Item& prev, const Request& u, std::size_t max_results) const {
    Successors<Item> out;
    Item base = prev.united(u.must_include);
    bool base_ok = true;
    for (Nat s : base.values()) {
      if (u.banned_values.contains(value_at(s))) { base_ok = false; break; }
    }
    if (!base_ok) {
      out.complete = true;
      return out;
    }
    std::vector<Item> pool;
    pool.push_back(base);
    std::size_t admissible_left = 0;
    for (Nat s = 0; s < enum_.size(); ++s) {
      if (base.contains(s) || u.banned_values.contains(enum_[static_cast<std::size_t>(s)]))
        continue;
      ++admissible_left;
      if (pool.size() < max_results + 4) {
        Item grown = base;
        grown.insert(s);
        pool.push_back(std::move(grown));
      }
    }
    sort_items_shortlex(*this, pool);
    // The item space is finite here; the listing is complete when at most one
    // index could still be added (deeper growth just composes singles).
    out.complete = (admissible_left == 0);
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
    put_set(part, u.must_include);
    put_block(out, part);
    part.clear();
    put_set(part, u.banned_values);
    put_block(out, part);
    return out;
  }

  Item item_from_bytes(const Bytes& bytes) const {
    std::size_t pos = 0;
    NatSet s;
    if (!get_set(bytes, pos, s) || pos != bytes.size())
      throw_error(ErrKind::parse, "ssep item: bad serialization");
    return s;
  }

  Request request_from_bytes(const Bytes& bytes) const {
    std::size_t pos = 0;
    std::string_view p0, p1;
    if (!get_block(bytes, pos, p0) || !get_block(bytes, pos, p1) || pos != bytes.size())
      throw_error(ErrKind::parse, "ssep request: bad serialization");
    Request u;
    std::size_t inner = 0;
    if (!get_set(p0, inner, u.must_include) || inner != p0.size())
      throw_error(ErrKind::parse, "ssep request: bad index part");
    inner = 0;
    if (!get_set(p1, inner, u.banned_values) || inner != p1.size())
      throw_error(ErrKind::parse, "ssep request: bad banned part");
    validate_request(u);
    return u;
  }

  // All subsets of the first min(bound, enumeration length) indices.
  template <class Fn>
  void for_each_item(Nat bound, Fn&& fn) const {
    const Nat n = std::min<Nat>(bound, enum_.size());
    if (n > 20) throw_error(ErrKind::resource, "ssep: exhaustive bound too large");
    const Nat total = Nat{1} << n;
    for (Nat mask = 0; mask < total; ++mask) {
      std::vector<Nat> xs;
      for (Nat i = 0; i < n; ++i) {
        if (mask & (Nat{1} << i)) xs.push_back(i);
      }
      fn(NatSet::from(std::move(xs)));
    }
  }

  bool operator==(const SsepFramework&) const = default;

 private:
  std::vector<Nat> enum_;
};

}  // namespace prio
