#pragma once

#include <limits>
#include <string>

#include "prio/framework.hpp"
#include "prio/product.hpp"
#include "prio/s01.hpp"
#include "prio/spm.hpp"
#include "prio/spp.hpp"
#include "prio/universe.hpp"

namespace prio {

// Which component of a pair framework a requirement talks about.
enum class Side { left, right };

inline std::string_view side_name(Side s) { return s == Side::left ? "left" : "right"; }

// The monitors below effectivize the conditions the shipped constructions aim
// at. They evaluate opponents over the entire finite table (no stage budget),
// so each verdict is a function of the limit objects alone; in particular
// prepending a valid prefix never changes the verdict.

namespace detail {
inline constexpr Nat kFullBudget = std::numeric_limits<Nat>::max();

inline BitStr characteristic_prefix(const NatSet& s, Nat length) {
  BitStr out;
  for (Nat i = 0; i < length; ++i) out.push(s.contains(i) ? 1 : 0);
  return out;
}
}  // namespace detail

// Some element above 2e of the e-th enumerable set has entered the built set.
// Guarding on the witness staying in is enough: items only grow.
inline Requirement<SpmFramework> simple_requirement(Nat e, const OpponentUniverse& u) {
  Requirement<SpmFramework> req;
  req.framework = SpmFramework{};
  req.id = "simple(" + std::to_string(e) + ")";
  req.tag = ReqClass::omega_cp;
  req.monitor = [e, witnesses = u.we_full(e)](std::span<const NatSet> prefix) -> Verdict<SpmFramework> {
    const NatSet& grown = prefix.back();
    for (Nat x : witnesses.values()) {
      if (x > 2 * e && grown.contains(x)) {
        SatisfiedV<SpmFramework> s;
        s.certs.push_back({"simple(" + std::to_string(e) + ")", {e, x}, "witness in both sets"});
        s.guards.push_back(SpmRequest{{x}, {}});
        return s;
      }
    }
    return Pending{};
  };
  return req;
}

inline std::string incomparability_id(Nat e, Side side) {
  return "incomparable(" + std::to_string(e) + "," + std::string(side_name(side)) + ")";
}

// The e-th oracle functional, evaluated on the opposite side, disagrees with
// the named side somewhere. The guard freezes the oracle side below the use
// and pins the witness's membership on the named side.
inline Requirement<SpmPair> incomparability_requirement(Nat e, Side side,
                                                        const OpponentUniverse& u) {
  Requirement<SpmPair> req;
  req.framework = SpmPair{};
  req.id = incomparability_id(e, side);
  req.tag = ReqClass::omega_cp;
  req.monitor = [e, side, u](std::span<const SpmPair::Item> prefix) -> Verdict<SpmPair> {
    const NatSet& own = side == Side::left ? prefix.back().first : prefix.back().second;
    const NatSet& oracle = side == Side::left ? prefix.back().second : prefix.back().first;
    for (const auto* entry : u.functional_entries(e)) {
      const BitStr oracle_bits = detail::characteristic_prefix(oracle, entry->use);
      if (!entry->key.prefix_of(oracle_bits)) continue;
      const bool member = own.contains(entry->x);
      if (member == (entry->value == 1)) continue;  // functional agrees here
      SatisfiedV<SpmPair> s;
      s.certs.push_back({incomparability_id(e, side),
                         {e, entry->x, entry->use, static_cast<Nat>(entry->value)},
                         "membership disagrees with the functional"});
      SpmRequest own_guard = member ? SpmRequest{{entry->x}, {}} : SpmRequest{{}, {entry->x}};
      NatSet pin, freeze;
      for (Nat i = 0; i < entry->use; ++i) {
        if (oracle.contains(i)) pin.insert(i); else freeze.insert(i);
      }
      SpmRequest oracle_guard{pin, freeze};
      SpmPair::Request guard = side == Side::left
                                   ? SpmPair::Request{own_guard, oracle_guard}
                                   : SpmPair::Request{oracle_guard, own_guard};
      s.guards.push_back(guard);
      return s;
    }
    return Pending{};
  };
  return req;
}

// Some enumerated value was routed against the e-th candidate separator's
// claim. Routing bits never change once written, so the verdict needs no
// guard.
inline Requirement<S01Framework> splitting_requirement(Nat e, const S01Framework& f,
                                                       const OpponentUniverse& u) {
  Requirement<S01Framework> req;
  req.framework = f;
  req.id = "split(" + std::to_string(e) + ")";
  req.tag = ReqClass::omega_wcp;
  req.monitor = [e, f, u](std::span<const BitStr> prefix) -> Verdict<S01Framework> {
    const BitStr& routing = prefix.back();
    for (std::size_t s = 0; s < routing.size(); ++s) {
      const Nat value = f.value_at(s);
      const auto claim = u.phi_eval(e, value, detail::kFullBudget);
      if (!claim) continue;
      const int claimed_side = *claim == 1 ? 0 : 1;
      if (routing.at(s) == 1 - claimed_side) {
        SatisfiedV<S01Framework> sv;
        sv.certs.push_back({"split(" + std::to_string(e) + ")",
                            {e, s, value, static_cast<Nat>(*claim)},
                            "routed against the separator claim"});
        return sv;
      }
    }
    return Pending{};
  };
  return req;
}

// The e-th candidate separator errs on the built pair: it claims membership
// for an element placed on the excluded side or vice versa. Placements are
// permanent, so no guard is needed.
inline Requirement<SppFramework> inseparability_requirement(Nat e, const OpponentUniverse& u) {
  Requirement<SppFramework> req;
  req.framework = SppFramework{};
  req.id = "inseparable(" + std::to_string(e) + ")";
  req.tag = ReqClass::omega_wcp;
  req.monitor = [e, u](std::span<const SppItem> prefix) -> Verdict<SppFramework> {
    const SppItem& pair = prefix.back();
    for (Nat x : u.phi_args(e)) {
      const auto claim = u.phi_eval(e, x, detail::kFullBudget);
      if (!claim) continue;
      const bool contradiction = (*claim == 1 && pair.b.contains(x)) ||
                                 (*claim == 0 && pair.a.contains(x));
      if (contradiction) {
        SatisfiedV<SppFramework> sv;
        sv.certs.push_back({"inseparable(" + std::to_string(e) + ")",
                            {e, x, static_cast<Nat>(*claim)},
                            "placement contradicts the separator claim"});
        return sv;
      }
    }
    return Pending{};
  };
  return req;
}

}  // namespace prio
