#pragma once

#include <optional>

#include "prio/framework.hpp"

namespace prio {

template <class Item>
struct BruteForceResult {
  bool holds = true;
  std::optional<Item> counterexample;
};

// Ground-truth domination: exhaust every item of the framework within the
// given bound and look for one compatible with u but not with v. The
// closed-form dominates() of every concrete framework is tested against this.
template <Framework F>
BruteForceResult<typename F::Item> brute_force_dominates(const F& f, Nat universe_bound,
                                                         const typename F::Request& u,
                                                         const typename F::Request& v) {
  f.validate_request(u);
  f.validate_request(v);
  BruteForceResult<typename F::Item> result;
  f.for_each_item(universe_bound, [&](typename F::Item m) {
    if (!result.holds) return;
    if (f.compatible(m, u) && !f.compatible(m, v)) {
      result.holds = false;
      result.counterexample = std::move(m);
    }
  });
  return result;
}

}  // namespace prio
