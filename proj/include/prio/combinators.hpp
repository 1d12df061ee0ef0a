#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "prio/framework.hpp"
#include "prio/product.hpp"

namespace prio {

namespace detail {

// Fold a set of guards, merging pairs whenever the framework offers a single
// request dominating both. Requests that cannot be merged stay side by side
// and are checked jointly.
template <Framework F>
std::vector<typename F::Request> join_guards(const F& f,
                                             const std::vector<typename F::Request>& a,
                                             const std::vector<typename F::Request>& b) {
  std::vector<typename F::Request> out = a;
  for (const auto& g : b) {
    bool merged = false;
    for (auto& existing : out) {
      if (auto j = f.try_join(existing, g)) {
        existing = *j;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(g);
  }
  return out;
}

}  // namespace detail

// Conjunction of two requirements over the same framework: satisfied when
// both are, violated when either is.
template <Framework F>
Requirement<F> conjoin(const Requirement<F>& a, const Requirement<F>& b) {
  if (!(a.framework == b.framework))
    throw_error(ErrKind::input, "conjoin: requirements live in different frameworks");
  Requirement<F> out;
  out.framework = a.framework;
  out.id = "(" + a.id + ")&(" + b.id + ")";
  out.tag = a.tag == b.tag ? a.tag : ReqClass::omega_wcp;
  out.monitor = [f = a.framework, ma = a.monitor, mb = b.monitor](
                    std::span<const typename F::Item> prefix) -> Verdict<F> {
    const Verdict<F> va = ma(prefix);
    const Verdict<F> vb = mb(prefix);
    if (is_violated(va)) return va;
    if (is_violated(vb)) return vb;
    if (is_satisfied(va) && is_satisfied(vb)) {
      const auto& sa = std::get<SatisfiedV<F>>(va);
      const auto& sb = std::get<SatisfiedV<F>>(vb);
      SatisfiedV<F> s;
      s.certs = sa.certs;
      s.certs.insert(s.certs.end(), sb.certs.begin(), sb.certs.end());
      s.guards = detail::join_guards(f, sa.guards, sb.guards);
      return s;
    }
    return Pending{};
  };
  return out;
}

// Lift a requirement to a product framework by applying its monitor to one
// projection of the transcript. Guards are injected with the other side left
// unconstrained.
template <Framework FA, Framework FB>
Requirement<ProductFramework<FA, FB>> lift_left(const Requirement<FA>& a, const FB& other) {
  using P = ProductFramework<FA, FB>;
  Requirement<P> out;
  out.framework = P(a.framework, other);
  out.id = a.id + "@left";
  out.tag = a.tag;
  out.monitor = [mon = a.monitor, fb = other](std::span<const typename P::Item> prefix) -> Verdict<P> {
    std::vector<typename FA::Item> projected;
    projected.reserve(prefix.size());
    for (const auto& m : prefix) projected.push_back(m.first);
    const Verdict<FA> v = mon(projected);
    if (is_violated(v)) return Violated{std::get<Violated>(v).evidence};
    if (is_pending(v)) return Pending{};
    const auto& s = std::get<SatisfiedV<FA>>(v);
    SatisfiedV<P> lifted;
    lifted.certs = s.certs;
    for (const auto& g : s.guards)
      lifted.guards.push_back(typename P::Request{g, fb.initial_request()});
    return lifted;
  };
  return out;
}

template <Framework FA, Framework FB>
Requirement<ProductFramework<FA, FB>> lift_right(const Requirement<FB>& b, const FA& other) {
  using P = ProductFramework<FA, FB>;
  Requirement<P> out;
  out.framework = P(other, b.framework);
  out.id = b.id + "@right";
  out.tag = b.tag;
  out.monitor = [mon = b.monitor, fa = other](std::span<const typename P::Item> prefix) -> Verdict<P> {
    std::vector<typename FB::Item> projected;
    projected.reserve(prefix.size());
    for (const auto& m : prefix) projected.push_back(m.second);
    const Verdict<FB> v = mon(projected);
    if (is_violated(v)) return Violated{std::get<Violated>(v).evidence};
    if (is_pending(v)) return Pending{};
    const auto& s = std::get<SatisfiedV<FB>>(v);
    SatisfiedV<P> lifted;
    lifted.certs = s.certs;
    for (const auto& g : s.guards)
      lifted.guards.push_back(typename P::Request{fa.initial_request(), g});
    return lifted;
  };
  return out;
}

struct WeakenConfig {
  std::size_t max_prefix_len = 4;   // exhaustive horizon
  std::size_t fanout = 4;           // successors considered per step
  std::size_t extension_depth = 3;  // guard-conforming follow-up depth
  std::size_t samples = 64;         // extra random walks
  std::uint64_t seed = 1;
};

template <class Item>
struct WeakenResult {
  bool ok = true;
  std::optional<std::vector<Item>> counterexample;
  std::string detail;
};

namespace detail {

template <Framework F>
bool guards_admit(const F& f, const typename F::Item& m,
                  const std::vector<typename F::Request>& guards) {
  for (const auto& g : guards) {
    if (!f.compatible(m, g)) return false;
  }
  return true;
}

// Check that a never turns Violated along guard-conforming extensions of a
// prefix b has already satisfied.
template <Framework F>
bool extensions_stay_clean(const F& f, std::vector<typename F::Item>& prefix,
                           const Monitor<F>& a,
                           const std::vector<typename F::Request>& guards,
                           std::size_t depth, const WeakenConfig& cfg,
                           std::vector<typename F::Item>* bad) {
  if (is_violated(a(std::span<const typename F::Item>(prefix)))) {
    *bad = prefix;
    return false;
  }
  if (depth == 0) return true;
  const auto next = f.successors(prefix.back(), f.initial_request(), cfg.fanout);
  for (const auto& m : next.items) {
    if (!guards_admit(f, m, guards)) continue;
    prefix.push_back(m);
    const bool ok = extensions_stay_clean(f, prefix, a, guards, depth - 1, cfg, bad);
    prefix.pop_back();
    if (!ok) return false;
  }
  return true;
}

template <Framework F>
bool weaken_check_prefix(const F& f, std::vector<typename F::Item>& prefix,
                         const Requirement<F>& a, const Requirement<F>& b,
                         const WeakenConfig& cfg, WeakenResult<typename F::Item>* out) {
  const Verdict<F> vb = b.monitor(std::span<const typename F::Item>(prefix));
  if (!is_satisfied(vb)) return true;
  const Verdict<F> va = a.monitor(std::span<const typename F::Item>(prefix));
  if (is_violated(va)) {
    out->ok = false;
    out->counterexample = prefix;
    out->detail = "stronger requirement satisfied while the weaker one is violated";
    return false;
  }
  std::vector<typename F::Item> bad;
  const auto& guards = std::get<SatisfiedV<F>>(vb).guards;
  if (!extensions_stay_clean(f, prefix, a.monitor, guards, cfg.extension_depth, cfg, &bad)) {
    out->ok = false;
    out->counterexample = bad;
    out->detail = "violation reachable along a guard-conforming extension";
    return false;
  }
  return true;
}

template <Framework F>
bool weaken_walk(const F& f, std::vector<typename F::Item>& prefix,
                 const Requirement<F>& a, const Requirement<F>& b,
                 const WeakenConfig& cfg, std::size_t depth,
                 WeakenResult<typename F::Item>* out) {
  if (!weaken_check_prefix(f, prefix, a, b, cfg, out)) return false;
  if (depth == 0) return true;
  const auto next = f.successors(prefix.back(), f.initial_request(), cfg.fanout);
  for (const auto& m : next.items) {
    prefix.push_back(m);
    const bool ok = weaken_walk(f, prefix, a, b, cfg, depth - 1, out);
    prefix.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

// Audit (not a decision procedure) that requirement a is weaker than b:
// whenever b is satisfied on a prefix, a must not be violated there nor along
// guard-conforming extensions. Exhausts all short prefixes, then samples
// random walks.
template <Framework F>
WeakenResult<typename F::Item> weaken(const Requirement<F>& a, const Requirement<F>& b,
                                      const WeakenConfig& cfg = {}) {
  if (!(a.framework == b.framework))
    throw_error(ErrKind::input, "weaken: requirements live in different frameworks");
  const F& f = a.framework;
  WeakenResult<typename F::Item> out;
  std::vector<typename F::Item> prefix{f.initial_item()};
  if (!detail::weaken_walk(f, prefix, a, b, cfg, cfg.max_prefix_len, &out)) return out;
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t trial = 0; trial < cfg.samples; ++trial) {
    std::vector<typename F::Item> walk{f.initial_item()};
    const std::size_t len = 1 + static_cast<std::size_t>(rng() % (2 * cfg.max_prefix_len));
    for (std::size_t i = 0; i < len; ++i) {
      const auto next = f.successors(walk.back(), f.initial_request(), cfg.fanout);
      if (next.items.empty()) break;
      walk.push_back(next.items[rng() % next.items.size()]);
      if (!detail::weaken_check_prefix(f, walk, a, b, cfg, &out)) return out;
    }
  }
  return out;
}

}  // namespace prio
