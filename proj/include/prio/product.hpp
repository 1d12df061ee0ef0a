#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prio/framework.hpp"
#include "prio/spm.hpp"

namespace prio {

// Product of two frameworks: items and requests are pairs, every relation
// holds iff it holds in both components.
template <Framework F1, Framework F2>
class ProductFramework {
 public:
  using Item = std::pair<typename F1::Item, typename F2::Item>;

  struct Request {
    typename F1::Request left;
    typename F2::Request right;

    bool operator==(const Request&) const = default;
  };

  ProductFramework() = default;
  ProductFramework(F1 left, F2 right) : left_(std::move(left)), right_(std::move(right)) {}

  std::string id() const { return left_.id() + "_x_" + right_.id(); }

  const F1& left() const { return left_; }
  const F2& right() const { return right_; }

  Item initial_item() const { return {left_.initial_item(), right_.initial_item()}; }
  Request initial_request() const { return {left_.initial_request(), right_.initial_request()}; }

  bool may_follow(const Item& next, const Item& prev) const {
    return left_.may_follow(next.first, prev.first) &&
           right_.may_follow(next.second, prev.second);
  }

  bool compatible(const Item& m, const Request& u) const {
    return left_.compatible(m.first, u.left) && right_.compatible(m.second, u.right);
  }

  bool dominates(const Request& u, const Request& v) const {
    return left_.dominates(u.left, v.left) && right_.dominates(u.right, v.right);
  }

  std::optional<Request> try_join(const Request& u, const Request& v) const {
    auto jl = left_.try_join(u.left, v.left);
    auto jr = right_.try_join(u.right, v.right);
    if (!jl || !jr) return std::nullopt;
    return Request{*jl, *jr};
  }

  void validate_request(const Request& u) const {
    left_.validate_request(u.left);
    right_.validate_request(u.right);
  }

  Successors<Item> successors(const Item& prev, const Request& u, std::size_t max_results) const {
    const auto ls = left_.successors(prev.first, u.left, max_results);
    const auto rs = right_.successors(prev.second, u.right, max_results);
    Successors<Item> out;
    out.complete = ls.complete && rs.complete;
    std::vector<Item> pool;
    pool.reserve(ls.items.size() * rs.items.size());
    for (const auto& l : ls.items) {
      for (const auto& r : rs.items) pool.emplace_back(l, r);
    }
    sort_items_shortlex(*this, pool);
    if (pool.size() > max_results) pool.resize(max_results);
    out.items = std::move(pool);
    return out;
  }

  Bytes item_bytes(const Item& m) const {
    Bytes out;
    put_block(out, left_.item_bytes(m.first));
    put_block(out, right_.item_bytes(m.second));
    return out;
  }

  Bytes request_bytes(const Request& u) const {
    Bytes out;
    put_block(out, left_.request_bytes(u.left));
    put_block(out, right_.request_bytes(u.right));
    return out;
  }

  Item item_from_bytes(const Bytes& bytes) const {
    std::size_t pos = 0;
    std::string_view p0, p1;
    if (!get_block(bytes, pos, p0) || !get_block(bytes, pos, p1) || pos != bytes.size())
      throw_error(ErrKind::parse, "product item: bad serialization");
    return {left_.item_from_bytes(Bytes(p0)), right_.item_from_bytes(Bytes(p1))};
  }

  Request request_from_bytes(const Bytes& bytes) const {
    std::size_t pos = 0;
    std::string_view p0, p1;
    if (!get_block(bytes, pos, p0) || !get_block(bytes, pos, p1) || pos != bytes.size())
      throw_error(ErrKind::parse, "product request: bad serialization");
    return {left_.request_from_bytes(Bytes(p0)), right_.request_from_bytes(Bytes(p1))};
  }

  template <class Fn>
  void for_each_item(Nat bound, Fn&& fn) const {
    if (bound > 10) throw_error(ErrKind::resource, "product: exhaustive bound too large");
    left_.for_each_item(bound, [&](typename F1::Item l) {
      right_.for_each_item(bound, [&](typename F2::Item r) {
        fn(Item{l, std::move(r)});
      });
    });
  }

  bool operator==(const ProductFramework&) const = default;

 private:
  F1 left_;
  F2 right_;
};

template <Framework F1, Framework F2>
ProductFramework<F1, F2> product(F1 left, F2 right) {
  return ProductFramework<F1, F2>(std::move(left), std::move(right));
}

// The pair framework used for the incomparability construction.
using SpmPair = ProductFramework<SpmFramework, SpmFramework>;

}  // namespace prio
