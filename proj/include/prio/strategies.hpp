#pragma once

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prio/conditions.hpp"
#include "prio/game.hpp"
#include "prio/product.hpp"
#include "prio/s01.hpp"
#include "prio/spm.hpp"
#include "prio/spp.hpp"
#include "prio/universe.hpp"

namespace prio {

// The shipped strategy families, identified by family, opponent index and
// (for the pair construction) the diagonalized side.
struct StrategyKind {
  enum class Family { simple, fm, split, insep };

  Family family = Family::simple;
  Nat e = 0;
  Side side = Side::left;  // fm only

  static StrategyKind simple(Nat e) { return {Family::simple, e, Side::left}; }
  static StrategyKind fm(Nat e, Side side) { return {Family::fm, e, side}; }
  static StrategyKind split(Nat e) { return {Family::split, e, Side::left}; }
  static StrategyKind insep(Nat e) { return {Family::insep, e, Side::left}; }

  std::string framework_id() const {
    switch (family) {
      case Family::simple: return "spm";
      case Family::fm: return "spm_x_spm";
      case Family::split: return "s01";
      case Family::insep: return "spp";
    }
    return "?";
  }

  std::string text() const {
    switch (family) {
      case Family::simple: return "simple " + std::to_string(e);
      case Family::fm: return "fm " + std::to_string(e) + " " + std::string(side_name(side));
      case Family::split: return "split " + std::to_string(e);
      case Family::insep: return "insep " + std::to_string(e);
    }
    return "?";
  }

  std::string requirement_id() const {
    switch (family) {
      case Family::simple: return "simple(" + std::to_string(e) + ")";
      case Family::fm: return incomparability_id(e, side);
      case Family::split: return "split(" + std::to_string(e) + ")";
      case Family::insep: return "inseparable(" + std::to_string(e) + ")";
    }
    return "?";
  }

  static StrategyKind parse(const std::string& text) {
    std::istringstream in(text);
    std::string family;
    StrategyKind kind;
    if (!(in >> family >> kind.e))
      throw_error(ErrKind::parse, "strategy: expected '<family> <e> [side]', got '" + text + "'");
    if (family == "simple") kind.family = Family::simple;
    else if (family == "fm") kind.family = Family::fm;
    else if (family == "split") kind.family = Family::split;
    else if (family == "insep") kind.family = Family::insep;
    else throw_error(ErrKind::parse, "strategy: unknown family '" + family + "'");
    if (kind.family == Family::fm) {
      std::string side;
      if (!(in >> side) || (side != "left" && side != "right"))
        throw_error(ErrKind::parse, "strategy: fm needs a side (left or right)");
      kind.side = side == "left" ? Side::left : Side::right;
    }
    std::string extra;
    if (in >> extra) throw_error(ErrKind::parse, "strategy: trailing tokens in '" + text + "'");
    return kind;
  }

  bool operator==(const StrategyKind&) const = default;
};

// Canonical witness choice shared by the witness-based strategies: the least
// natural at or above the slot's offset that neither the base request nor the
// current item already touches. The offset keeps concurrently active
// strategies out of each other's way; avoiding the current item matters after
// an injury, when the previous witness may already sit in the built sets.
inline Nat pick_witness(Nat offset, const NatSet& occupied) {
  Nat x = offset;
  while (occupied.contains(x)) ++x;
  return x;
}

inline Nat slot_offset(std::size_t slot) { return 10 * (static_cast<Nat>(slot) + 1); }

namespace detail {
inline BitStr set_prefix(const NatSet& s, Nat length) {
  BitStr out;
  for (Nat i = 0; i < length; ++i) out.push(s.contains(i) ? 1 : 0);
  return out;
}
}  // namespace detail

// --- simple-set strategy -----------------------------------------------------------

// Waits for a permitted element above 2e to show up in the e-th enumerable
// set, then demands it into the built set.
class SimpleStrategy final : public BobStrategy<SpmFramework> {
 public:
  SimpleStrategy(Nat e, std::size_t slot, const OpponentUniverse& u)
      : e_(e), slot_(slot), u_(&u) {}

  SpmRequest restart(const SpmRequest& base, const NatSet& current, Nat stage) override {
    base_ = base;
    current_ = base;
    witness_.reset();
    declared_.reset();
    scan(stage);
    check_declare(current);
    return current_;
  }

  SpmRequest on_item(const NatSet& item, Nat stage) override {
    if (!declared_) {
      if (!witness_) scan(stage);
      check_declare(item);
    }
    return current_;
  }

  std::optional<Declared<SpmFramework>> status() const override { return declared_; }

 private:
  void scan(Nat stage) {
    if (witness_) return;
    for (Nat x : u_->we_at_stage(e_, stage).values()) {
      if (x > 2 * e_ && !base_.neg.contains(x)) {
        witness_ = x;
        SpmRequest r = base_;
        r.pos.insert(x);
        current_ = r;
        return;
      }
    }
  }

  void check_declare(const NatSet& item) {
    if (declared_ || !witness_ || !item.contains(*witness_)) return;
    declared_ = Declared<SpmFramework>{"simple(" + std::to_string(e_) + ")", {e_, *witness_},
                                       current_};
  }

  Nat e_ = 0;
  std::size_t slot_ = 0;
  const OpponentUniverse* u_ = nullptr;
  SpmRequest base_, current_;
  std::optional<Nat> witness_;
  std::optional<Declared<SpmFramework>> declared_;
};

// --- incomparability strategy --------------------------------------------------------

// Diagonalizes one side of a pair against the e-th oracle functional computed
// from the other side. Keeps a reserved witness out of its side, waits for the
// functional to converge on it, then freezes the oracle side below the use and
// settles the witness against the computed value.
class FmStrategy final : public BobStrategy<SpmPair> {
 public:
  FmStrategy(Nat e, Side side, std::size_t slot, const OpponentUniverse& u)
      : e_(e), side_(side), slot_(slot), u_(&u) {}

  SpmPair::Request restart(const SpmPair::Request& base, const SpmPair::Item& current,
                           Nat stage) override {
    base_ = base;
    declared_.reset();
    frozen_ = false;
    NatSet occupied = base.left.pos.united(base.left.neg)
                          .united(base.right.pos)
                          .united(base.right.neg)
                          .united(current.first)
                          .united(current.second);
    witness_ = pick_witness(slot_offset(slot_), occupied);
    current_ = base_;
    own_request(current_).neg.insert(witness_);
    try_converge(current, stage);
    check_declare(current);
    return current_;
  }

  SpmPair::Request on_item(const SpmPair::Item& item, Nat stage) override {
    if (!declared_) {
      if (!frozen_) try_converge(item, stage);
      check_declare(item);
    }
    return current_;
  }

  std::optional<Declared<SpmPair>> status() const override { return declared_; }

 private:
  SpmRequest& own_request(SpmPair::Request& r) {
    return side_ == Side::left ? r.left : r.right;
  }
  SpmRequest& oracle_request(SpmPair::Request& r) {
    return side_ == Side::left ? r.right : r.left;
  }
  const NatSet& own_set(const SpmPair::Item& m) const {
    return side_ == Side::left ? m.first : m.second;
  }
  const NatSet& oracle_set(const SpmPair::Item& m) const {
    return side_ == Side::left ? m.second : m.first;
  }

  void try_converge(const SpmPair::Item& item, Nat stage) {
    const NatSet& oracle = oracle_set(item);
    const auto result = u_->functional_eval(e_, detail::set_prefix(oracle, stage), witness_, stage);
    if (!result) return;
    const auto [value, use] = *result;
    // The oracle prefix below the use must already include everything the
    // base forces there, otherwise the computed value is about to be stale.
    SpmPair::Request probe = base_;
    for (Nat y : oracle_request(probe).pos.values()) {
      if (y < use && !oracle.contains(y)) return;
    }
    claim_ = value;
    use_ = use;
    frozen_ = true;
    current_ = base_;
    if (claim_ == 0) own_request(current_).pos.insert(witness_);
    else own_request(current_).neg.insert(witness_);
    for (Nat i = 0; i < use; ++i) {
      if (!oracle.contains(i)) oracle_request(current_).neg.insert(i);
    }
  }

  void check_declare(const SpmPair::Item& item) {
    if (declared_ || !frozen_) return;
    // value 0: the witness must actually land on our side; value 1: keeping it
    // out is already the disagreement.
    if (claim_ == 0 && !own_set(item).contains(witness_)) return;
    declared_ = Declared<SpmPair>{
        incomparability_id(e_, side_),
        {e_, witness_, use_, static_cast<Nat>(claim_)},
        current_};
  }

  Nat e_ = 0;
  Side side_ = Side::left;
  std::size_t slot_ = 0;
  const OpponentUniverse* u_ = nullptr;
  SpmPair::Request base_, current_;
  Nat witness_ = 0;
  bool frozen_ = false;
  int claim_ = 0;
  Nat use_ = 0;
  std::optional<Declared<SpmPair>> declared_;
};

// --- splitting strategy ---------------------------------------------------------------

// Watches the enumeration for an index whose value the e-th candidate
// separator has already classified, then demands it routed to the opposite
// side. Index s becomes visible at stage s.
class SplitStrategy final : public BobStrategy<S01Framework> {
 public:
  SplitStrategy(S01Framework f, Nat e, std::size_t slot, const OpponentUniverse& u)
      : f_(std::move(f)), e_(e), slot_(slot), u_(&u) {}

  S01Request restart(const S01Request& base, const BitStr& current, Nat stage) override {
    base_ = base;
    current_ = base;
    target_.reset();
    declared_.reset();
    scan(current, stage);
    check_declare(current);
    return current_;
  }

  S01Request on_item(const BitStr& item, Nat stage) override {
    if (!declared_) {
      if (!target_) scan(item, stage);
      check_declare(item);
    }
    return current_;
  }

  std::optional<Declared<S01Framework>> status() const override { return declared_; }

 private:
  struct Target {
    Nat index;
    Nat value;
    int claim;
  };

  void scan(const BitStr& item, Nat stage) {
    const Nat len = f_.enumeration().size();
    for (Nat s = item.size(); s <= stage && s < len; ++s) {
      const Nat value = f_.value_at(static_cast<std::size_t>(s));
      if (base_.block0.contains(value) || base_.block1.contains(value)) continue;
      const auto claim = u_->phi_eval(e_, value, stage);
      if (!claim) continue;
      target_ = Target{s, value, *claim};
      current_ = base_;
      // claim 1 puts the value on side 0, so bar side 0 and vice versa.
      if (*claim == 1) current_.block0.insert(value);
      else current_.block1.insert(value);
      return;
    }
  }

  void check_declare(const BitStr& item) {
    if (declared_ || !target_ || target_->index >= item.size()) return;
    declared_ = Declared<S01Framework>{
        "split(" + std::to_string(e_) + ")",
        {e_, target_->index, target_->value, static_cast<Nat>(target_->claim)},
        current_};
  }

  S01Framework f_{std::vector<Nat>{}};
  Nat e_ = 0;
  std::size_t slot_ = 0;
  const OpponentUniverse* u_ = nullptr;
  S01Request base_, current_;
  std::optional<Target> target_;
  std::optional<Declared<S01Framework>> declared_;
};

// --- inseparability strategy -------------------------------------------------------------

// Reserves a witness outside both sides, waits for the e-th candidate
// separator to classify it, then places it on the side that refutes the
// classification.
class InsepStrategy final : public BobStrategy<SppFramework> {
 public:
  InsepStrategy(Nat e, std::size_t slot, const OpponentUniverse& u)
      : e_(e), slot_(slot), u_(&u) {}

  SppRequest restart(const SppRequest& base, const SppItem& current, Nat stage) override {
    base_ = base;
    declared_.reset();
    placed_ = false;
    NatSet occupied = base.a_pos.united(base.b_pos)
                          .united(base.barred)
                          .united(current.a)
                          .united(current.b);
    witness_ = pick_witness(slot_offset(slot_), occupied);
    current_ = base_;
    current_.barred.insert(witness_);
    try_converge(stage);
    check_declare(current);
    return current_;
  }

  SppRequest on_item(const SppItem& item, Nat stage) override {
    if (!declared_) {
      if (!placed_) try_converge(stage);
      check_declare(item);
    }
    return current_;
  }

  std::optional<Declared<SppFramework>> status() const override { return declared_; }

 private:
  void try_converge(Nat stage) {
    const auto claim = u_->phi_eval(e_, witness_, stage);
    if (!claim) return;
    claim_ = *claim;
    placed_ = true;
    current_ = base_;  // protection ends, the placement begins
    if (claim_ == 1) current_.b_pos.insert(witness_);
    else current_.a_pos.insert(witness_);
  }

  void check_declare(const SppItem& item) {
    if (declared_ || !placed_) return;
    const bool landed = claim_ == 1 ? item.b.contains(witness_) : item.a.contains(witness_);
    if (!landed) return;
    declared_ = Declared<SppFramework>{
        "inseparable(" + std::to_string(e_) + ")",
        {e_, witness_, static_cast<Nat>(claim_)},
        current_};
  }

  Nat e_ = 0;
  std::size_t slot_ = 0;
  const OpponentUniverse* u_ = nullptr;
  SppRequest base_, current_;
  Nat witness_ = 0;
  bool placed_ = false;
  int claim_ = 0;
  std::optional<Declared<SppFramework>> declared_;
};

// Instantiate a strategy for a framework; the kind must target it.
template <Framework F>
std::unique_ptr<BobStrategy<F>> make_strategy(const F& f, const StrategyKind& kind,
                                              std::size_t slot, const OpponentUniverse& u) {
  if (kind.framework_id() != f.id())
    throw_error(ErrKind::input, "strategy '" + kind.text() + "' targets framework " +
                                    kind.framework_id() + ", not " + f.id());
  if constexpr (std::same_as<F, SpmFramework>) {
    if (kind.family == StrategyKind::Family::simple)
      return std::make_unique<SimpleStrategy>(kind.e, slot, u);
  } else if constexpr (std::same_as<F, SpmPair>) {
    if (kind.family == StrategyKind::Family::fm)
      return std::make_unique<FmStrategy>(kind.e, kind.side, slot, u);
  } else if constexpr (std::same_as<F, S01Framework>) {
    if (kind.family == StrategyKind::Family::split)
      return std::make_unique<SplitStrategy>(f, kind.e, slot, u);
  } else if constexpr (std::same_as<F, SppFramework>) {
    if (kind.family == StrategyKind::Family::insep)
      return std::make_unique<InsepStrategy>(kind.e, slot, u);
  }
  throw_error(ErrKind::input, "strategy '" + kind.text() + "' has no implementation for " + f.id());
}

}  // namespace prio
