#pragma once

#include <span>

#include "prio/errors.hpp"
#include "prio/product.hpp"
#include "prio/s01.hpp"
#include "prio/sets.hpp"
#include "prio/spm.hpp"
#include "prio/spp.hpp"
#include "prio/ssep.hpp"

namespace prio {

// Limit objects accumulated along a valid sequence. These are the finite
// approximations of the infinite objects the constructions produce; each is
// monotone nondecreasing under extension.

struct SpmLimits {
  NatSet grown;  // union of all items seen so far
};

struct PairLimits {
  NatSet left;
  NatSet right;
};

struct S01Limits {
  BitStr routing;  // longest bit string so far
  NatSet side0;
  NatSet side1;
};

struct SppLimits {
  NatSet a;
  NatSet b;
};

struct SsepLimits {
  NatSet image;  // enumerated values of all collected indices
};

namespace detail {
template <Framework F>
void require_valid(const F& f, std::span<const typename F::Item> seq) {
  if (!is_valid_sequence(f, seq))
    throw_error(ErrKind::input, "limit_objects: sequence is not valid");
}
}  // namespace detail

inline SpmLimits limit_objects(const SpmFramework& f, std::span<const NatSet> seq) {
  detail::require_valid(f, seq);
  // Items only grow, so the union is the last item.
  return {seq.back()};
}

inline PairLimits limit_objects(const SpmPair& f, std::span<const SpmPair::Item> seq) {
  detail::require_valid(f, seq);
  return {seq.back().first, seq.back().second};
}

inline S01Limits limit_objects(const S01Framework& f, std::span<const BitStr> seq) {
  detail::require_valid(f, seq);
  const S01Sides sp = f.sides(seq.back());
  return {seq.back(), sp.side0, sp.side1};
}

inline SppLimits limit_objects(const SppFramework& f, std::span<const SppItem> seq) {
  detail::require_valid(f, seq);
  return {seq.back().a, seq.back().b};
}

inline SsepLimits limit_objects(const SsepFramework& f, std::span<const NatSet> seq) {
  detail::require_valid(f, seq);
  return {f.image(seq.back())};
}

}  // namespace prio
