#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "prio/framework.hpp"

namespace prio {

// --- strategy interfaces --------------------------------------------------------

// What a requirement strategy has achieved so far. `guard` is the request
// whose continued enforcement keeps the witness valid.
template <Framework F>
struct Declared {
  std::string requirement_id;
  std::vector<Nat> witness;
  typename F::Request guard;
};

// The requirement player. Every emitted request must dominate the base of the
// most recent restart; nothing else is promised about consecutive requests.
template <Framework F>
class BobStrategy {
 public:
  virtual ~BobStrategy() = default;

  // Begin a fresh game segment: forget all internal state, adopt `base` as
  // the new obligation, and emit the first request. `current` is the item on
  // the board.
  virtual typename F::Request restart(const typename F::Request& base,
                                      const typename F::Item& current, Nat stage) = 0;

  // Observe the opponent's latest item and emit the next request.
  virtual typename F::Request on_item(const typename F::Item& item, Nat stage) = 0;

  virtual std::optional<Declared<F>> status() const = 0;
};

// One constructor move: either an item or an explanation of why none exists.
// `provable` distinguishes a position with no legal successor at all from an
// exhausted search budget.
template <Framework F>
struct AliceMove {
  std::optional<typename F::Item> item;
  bool provable = false;
};

template <Framework F>
class AliceStrategy {
 public:
  virtual ~AliceStrategy() = default;

  virtual std::pair<typename F::Request, typename F::Item> open() = 0;
  virtual AliceMove<F> on_request(const typename F::Request& request) = 0;
};

// --- transcripts ---------------------------------------------------------------

enum class RuleViolation {
  opening_incompatible,  // Alice's opening item is incompatible with her request
  domination_failure,    // Bob's request does not dominate the opening request
  item_not_successor,    // Alice's item may not follow the previous one
  item_incompatible,     // Alice's item is incompatible with the round's request
};

inline std::string_view rule_violation_name(RuleViolation v) {
  switch (v) {
    case RuleViolation::opening_incompatible: return "opening-incompatible";
    case RuleViolation::domination_failure: return "domination-failure";
    case RuleViolation::item_not_successor: return "item-not-successor";
    case RuleViolation::item_incompatible: return "item-incompatible";
  }
  return "?";
}

inline std::optional<RuleViolation> rule_violation_from_name(std::string_view name) {
  if (name == "opening-incompatible") return RuleViolation::opening_incompatible;
  if (name == "domination-failure") return RuleViolation::domination_failure;
  if (name == "item-not-successor") return RuleViolation::item_not_successor;
  if (name == "item-incompatible") return RuleViolation::item_incompatible;
  return std::nullopt;
}

struct ViolationAt {
  std::size_t round = 0;
  RuleViolation kind = RuleViolation::opening_incompatible;

  bool operator==(const ViolationAt&) const = default;
};

enum class StuckKind { provable, resource };

// Immutable record of one play. Round k >= 1 holds Bob's k-th request and, if
// the game got that far, Alice's answering item.
template <Framework F>
struct Transcript {
  struct Round {
    typename F::Request request;
    std::optional<typename F::Item> item;
  };

  std::string framework_id;
  typename F::Request opening_request;
  typename F::Item opening_item;
  std::vector<Round> rounds;
  std::optional<ViolationAt> violation;                    // first one seen during play
  std::optional<std::pair<std::size_t, StuckKind>> stuck;  // Alice had no move

  std::vector<typename F::Item> items() const {
    std::vector<typename F::Item> out{opening_item};
    for (const auto& r : rounds) {
      if (r.item) out.push_back(*r.item);
    }
    return out;
  }
};

// --- play ------------------------------------------------------------------------

// Run the alternating protocol for at most `horizon` constructor moves,
// stopping at the first rule violation or stuck position and annotating it.
template <Framework F>
Transcript<F> play(const F& f, AliceStrategy<F>& alice, BobStrategy<F>& bob,
                   std::size_t horizon) {
  if (horizon < 1) throw_error(ErrKind::input, "play: horizon must be at least 1");
  Transcript<F> t;
  t.framework_id = f.id();
  auto [u0, m0] = alice.open();
  t.opening_request = u0;
  t.opening_item = m0;
  if (!f.compatible(m0, u0)) {
    t.violation = ViolationAt{0, RuleViolation::opening_incompatible};
    return t;
  }
  typename F::Item current = m0;
  for (std::size_t round = 1; round <= horizon; ++round) {
    const typename F::Request request =
        round == 1 ? bob.restart(u0, current, round) : bob.on_item(current, round);
    t.rounds.push_back({request, std::nullopt});
    if (!f.dominates(request, u0)) {
      t.violation = ViolationAt{round, RuleViolation::domination_failure};
      return t;
    }
    const AliceMove<F> move = alice.on_request(request);
    if (!move.item) {
      t.stuck = {round, move.provable ? StuckKind::provable : StuckKind::resource};
      return t;
    }
    t.rounds.back().item = *move.item;
    if (!f.may_follow(*move.item, current)) {
      t.violation = ViolationAt{round, RuleViolation::item_not_successor};
      return t;
    }
    if (!f.compatible(*move.item, request)) {
      t.violation = ViolationAt{round, RuleViolation::item_incompatible};
      return t;
    }
    current = *move.item;
  }
  return t;
}

// Recompute every rule check of a transcript from scratch, independent of any
// annotations made during play.
template <Framework F>
std::vector<ViolationAt> referee(const F& f, const Transcript<F>& t) {
  std::vector<ViolationAt> out;
  if (!f.compatible(t.opening_item, t.opening_request))
    out.push_back({0, RuleViolation::opening_incompatible});
  typename F::Item prev = t.opening_item;
  for (std::size_t k = 0; k < t.rounds.size(); ++k) {
    const auto& round = t.rounds[k];
    if (!f.dominates(round.request, t.opening_request))
      out.push_back({k + 1, RuleViolation::domination_failure});
    if (round.item) {
      if (!f.may_follow(*round.item, prev))
        out.push_back({k + 1, RuleViolation::item_not_successor});
      if (!f.compatible(*round.item, round.request))
        out.push_back({k + 1, RuleViolation::item_incompatible});
      prev = *round.item;
    }
  }
  return out;
}

// --- win status -----------------------------------------------------------------

enum class WinReason {
  rule_violation_by_bob,
  alice_stuck,
  monitor_violated,
  requests_not_quiescent,
  monitor_pending,
  resource_exhausted,
};

struct WinStatus {
  enum class Kind { bob_winning_so_far, bob_lost, undetermined } kind;
  WinReason reason;

  bool operator==(const WinStatus&) const = default;
};

// Finite-horizon reading of the three win conditions: the requirement player
// is winning-so-far when the play is clean, the requests have settled over the
// final `quiescence` rounds, and the monitor reports satisfied. A provably
// stuck constructor counts against the requirement player; a search-budget
// stall stays undetermined.
template <Framework F>
WinStatus win_status(const F& f, const Transcript<F>& t, const Monitor<F>& monitor,
                     std::size_t quiescence) {
  if (quiescence < 1) throw_error(ErrKind::input, "win_status: quiescence must be at least 1");
  for (const auto& v : referee(f, t)) {
    if (v.kind == RuleViolation::domination_failure)
      return {WinStatus::Kind::bob_lost, WinReason::rule_violation_by_bob};
  }
  if (t.stuck) {
    if (t.stuck->second == StuckKind::provable)
      return {WinStatus::Kind::bob_lost, WinReason::alice_stuck};
    return {WinStatus::Kind::undetermined, WinReason::resource_exhausted};
  }
  const auto items = t.items();
  const Verdict<F> verdict = monitor(std::span<const typename F::Item>(items));
  if (is_violated(verdict))
    return {WinStatus::Kind::bob_lost, WinReason::monitor_violated};
  if (t.rounds.size() < quiescence)
    return {WinStatus::Kind::undetermined, WinReason::requests_not_quiescent};
  const auto& last = t.rounds.back().request;
  for (std::size_t i = t.rounds.size() - quiescence; i < t.rounds.size(); ++i) {
    if (!(t.rounds[i].request == last))
      return {WinStatus::Kind::undetermined, WinReason::requests_not_quiescent};
  }
  if (is_satisfied(verdict))
    return {WinStatus::Kind::bob_winning_so_far, WinReason::monitor_pending};
  return {WinStatus::Kind::undetermined, WinReason::monitor_pending};
}

// --- transcript files -------------------------------------------------------------
//
// transcript-format 1
// framework <id>
// 0 alice open <request hex> <item hex>
// <k> bob request <hex>
// <k> alice item <hex>
// violation <round> <kind> | stuck <round> provable|resource   (optional)
// end

template <Framework F>
std::string transcript_to_text(const F& f, const Transcript<F>& t) {
  std::ostringstream out;
  out << "transcript-format 1\n";
  out << "framework " << t.framework_id << "\n";
  out << "0 alice open " << to_hex(f.request_bytes(t.opening_request)) << " "
      << to_hex(f.item_bytes(t.opening_item)) << "\n";
  for (std::size_t k = 0; k < t.rounds.size(); ++k) {
    out << (k + 1) << " bob request " << to_hex(f.request_bytes(t.rounds[k].request)) << "\n";
    if (t.rounds[k].item)
      out << (k + 1) << " alice item " << to_hex(f.item_bytes(*t.rounds[k].item)) << "\n";
  }
  if (t.violation)
    out << "violation " << t.violation->round << " " << rule_violation_name(t.violation->kind)
        << "\n";
  if (t.stuck)
    out << "stuck " << t.stuck->first << " "
        << (t.stuck->second == StuckKind::provable ? "provable" : "resource") << "\n";
  out << "end\n";
  return out.str();
}

template <Framework F>
Transcript<F> transcript_from_text(const F& f, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next_line = [&]() -> std::string {
    if (!std::getline(in, line)) throw_error(ErrKind::parse, "transcript: truncated file");
    return line;
  };
  auto hex_bytes = [](const std::string& hex) -> Bytes {
    Bytes out;
    if (!from_hex(hex, out)) throw_error(ErrKind::parse, "transcript: bad hex field");
    return out;
  };
  if (next_line() != "transcript-format 1")
    throw_error(ErrKind::parse, "transcript: unsupported format header");
  Transcript<F> t;
  {
    std::istringstream row(next_line());
    std::string tag;
    if (!(row >> tag >> t.framework_id) || tag != "framework")
      throw_error(ErrKind::parse, "transcript: missing framework line");
    if (t.framework_id != f.id())
      throw_error(ErrKind::parse, "transcript: framework mismatch, file has " + t.framework_id);
  }
  {
    std::istringstream row(next_line());
    std::string round, who, what, req_hex, item_hex;
    if (!(row >> round >> who >> what >> req_hex >> item_hex) || round != "0" || who != "alice" ||
        what != "open")
      throw_error(ErrKind::parse, "transcript: missing opening line");
    t.opening_request = f.request_from_bytes(hex_bytes(req_hex));
    t.opening_item = f.item_from_bytes(hex_bytes(item_hex));
  }
  while (true) {
    const std::string raw = next_line();
    if (raw == "end") break;
    std::istringstream row(raw);
    std::string first;
    row >> first;
    if (first == "violation") {
      std::size_t round = 0;
      std::string kind;
      if (!(row >> round >> kind)) throw_error(ErrKind::parse, "transcript: bad violation line");
      const auto v = rule_violation_from_name(kind);
      if (!v) throw_error(ErrKind::parse, "transcript: unknown violation kind " + kind);
      t.violation = ViolationAt{round, *v};
      continue;
    }
    if (first == "stuck") {
      std::size_t round = 0;
      std::string kind;
      if (!(row >> round >> kind)) throw_error(ErrKind::parse, "transcript: bad stuck line");
      if (kind != "provable" && kind != "resource")
        throw_error(ErrKind::parse, "transcript: unknown stuck kind " + kind);
      t.stuck = {round, kind == "provable" ? StuckKind::provable : StuckKind::resource};
      continue;
    }
    std::size_t round = 0;
    try {
      round = std::stoull(first);
    } catch (...) {
      throw_error(ErrKind::parse, "transcript: unexpected line '" + raw + "'");
    }
    std::string who, what, hex;
    if (!(row >> who >> what >> hex)) throw_error(ErrKind::parse, "transcript: short move line");
    if (who == "bob" && what == "request") {
      if (round != t.rounds.size() + 1)
        throw_error(ErrKind::parse, "transcript: round numbers out of order");
      t.rounds.push_back({f.request_from_bytes(hex_bytes(hex)), std::nullopt});
    } else if (who == "alice" && what == "item") {
      if (round != t.rounds.size() || t.rounds.empty() || t.rounds.back().item)
        throw_error(ErrKind::parse, "transcript: item without matching request");
      t.rounds.back().item = f.item_from_bytes(hex_bytes(hex));
    } else {
      throw_error(ErrKind::parse, "transcript: unexpected move line '" + raw + "'");
    }
  }
  return t;
}

// --- stock players ----------------------------------------------------------------

// Constructor that always plays the canonical least successor; this is the
// same choice rule the scheduler uses.
template <Framework F>
class GreedyAlice : public AliceStrategy<F> {
 public:
  GreedyAlice(F f, typename F::Request opening_request, typename F::Item opening_item,
              std::size_t search_bound = 64)
      : f_(std::move(f)),
        opening_request_(std::move(opening_request)),
        current_(std::move(opening_item)),
        search_bound_(search_bound) {}

  std::pair<typename F::Request, typename F::Item> open() override {
    return {opening_request_, current_};
  }

  AliceMove<F> on_request(const typename F::Request& request) override {
    const auto next = f_.successors(current_, request, std::max<std::size_t>(1, search_bound_));
    if (next.items.empty()) return {std::nullopt, next.complete};
    current_ = next.items.front();
    return {current_, false};
  }

 private:
  F f_;
  typename F::Request opening_request_;
  typename F::Item current_;
  std::size_t search_bound_;
};

// Requirement player that just reasserts its base forever.
template <Framework F>
class ConstantBob : public BobStrategy<F> {
 public:
  typename F::Request restart(const typename F::Request& base, const typename F::Item&,
                              Nat) override {
    base_ = base;
    return base_;
  }
  typename F::Request on_item(const typename F::Item&, Nat) override { return base_; }
  std::optional<Declared<F>> status() const override { return std::nullopt; }

 private:
  typename F::Request base_;
};

}  // namespace prio
