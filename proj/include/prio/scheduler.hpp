#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prio/framework.hpp"
#include "prio/game.hpp"
#include "prio/strategies.hpp"
#include "prio/universe.hpp"

namespace prio {

struct SchedulerConfig {
  Nat horizon = 1;
  Nat quiescence = 1;
  Nat search_bound = 64;
};

struct InjuryEvent {
  Nat stage = 0;
  std::size_t injured = 0;
  std::size_t cause = 0;

  bool operator==(const InjuryEvent&) const = default;
};

template <Framework F>
struct RunCertificate {
  std::size_t slot = 0;
  std::string requirement_id;
  Nat stage = 0;  // stage at which the strategy declared
  std::vector<Nat> witness;
  typename F::Request guard;
  bool withdrawn = false;  // a later injury cancelled it
};

// Immutable record of one combined construction: the chosen item per stage,
// the nested request chain per stage, every injury, every certificate (kept
// even when withdrawn), and the stage of each strategy's last request change.
template <Framework F>
struct Run {
  std::string framework_id;
  std::vector<Nat> enumeration;  // context parameters, empty unless the framework has them
  Nat universe_hash = 0;
  SchedulerConfig config;
  std::vector<StrategyKind> strategies;

  std::vector<typename F::Item> items;                      // items[stage]
  std::vector<std::vector<typename F::Request>> chains;     // chains[stage]; stage 0 is empty
  std::vector<InjuryEvent> injuries;
  std::vector<RunCertificate<F>> certificates;
  std::vector<Nat> last_change;  // per slot; 0 means the slot never emitted

  bool slot_satisfied(std::size_t slot) const {
    for (const auto& c : certificates) {
      if (c.slot == slot && !c.withdrawn) return true;
    }
    return false;
  }

  bool all_satisfied() const {
    for (std::size_t i = 0; i < strategies.size(); ++i) {
      if (!slot_satisfied(i)) return false;
    }
    return true;
  }

  // Every strategy's request is unchanged over the final quiescence window.
  bool stabilized() const {
    for (std::size_t i = 0; i < strategies.size(); ++i) {
      if (last_change[i] + config.quiescence >= config.horizon) return false;
    }
    return true;
  }

  std::size_t restarts(std::size_t slot) const {
    std::size_t n = 0;
    for (const auto& inj : injuries) {
      if (inj.injured == slot) ++n;
    }
    return n;
  }
};

// Pick the canonical next item: the first successor of `prev` admissible
// under the deepest request. Throws when none exists, naming the blocking
// request; with rule-abiding strategies this cannot happen.
template <Framework F>
typename F::Item select_item(const F& f, const typename F::Item& prev,
                             const typename F::Request& deepest, Nat search_bound) {
  const std::size_t want = static_cast<std::size_t>(std::min<Nat>(std::max<Nat>(search_bound, 1), 8));
  const auto next = f.successors(prev, deepest, want);
  if (next.items.empty()) {
    throw_error(ErrKind::no_compatible_item,
                std::string("no compatible successor item (") +
                    (next.complete ? "provably stuck" : "search budget exhausted") +
                    "), blocking request " + to_hex(f.request_bytes(deepest)));
  }
  return next.items.front();
}

// The finite-injury combination: strategies are polled in priority order,
// each against the previous one's request as its base; a request change at
// level i restarts every lower-priority strategy, withdrawing its
// certificates. Strategy i is active from stage i on. The stage item is the
// canonical least successor compatible with the deepest request.
template <Framework F>
Run<F> run_construction(const F& f, const std::vector<StrategyKind>& specs,
                        const OpponentUniverse& u, const SchedulerConfig& config) {
  if (config.horizon < 1) throw_error(ErrKind::input, "run_construction: horizon must be >= 1");
  if (config.quiescence < 1 || config.quiescence > config.horizon)
    throw_error(ErrKind::input, "run_construction: need horizon >= quiescence >= 1");
  for (const auto& kind : specs) {
    if (kind.framework_id() != f.id())
      throw_error(ErrKind::input, "run_construction: strategy '" + kind.text() +
                                      "' does not target framework " + f.id());
  }

  Run<F> run;
  run.framework_id = f.id();
  run.universe_hash = u.hash();
  run.config = config;
  run.strategies = specs;
  run.last_change.assign(specs.size(), 0);
  run.items.push_back(f.initial_item());
  run.chains.emplace_back();

  struct SlotState {
    std::unique_ptr<BobStrategy<F>> strategy;
    std::optional<typename F::Request> last_request;
    bool cert_recorded = false;
  };
  std::vector<SlotState> slots(specs.size());

  for (Nat stage = 1; stage < config.horizon; ++stage) {
    const std::size_t active =
        std::min<std::size_t>(specs.size(), static_cast<std::size_t>(stage) + 1);
    std::vector<typename F::Request> chain;
    chain.reserve(active);
    typename F::Request base = f.initial_request();
    std::size_t min_changed = active;  // lowest slot whose request changed this stage

    for (std::size_t i = 0; i < active; ++i) {
      SlotState& slot = slots[i];
      bool fresh = slot.strategy == nullptr;
      if (!fresh && min_changed < i) {
        // Injured: a higher-priority request moved, all state is lost.
        run.injuries.push_back({stage, i, min_changed});
        for (auto& cert : run.certificates) {
          if (cert.slot == i) cert.withdrawn = true;
        }
        slot.strategy.reset();
        slot.cert_recorded = false;
        fresh = true;
      }
      if (fresh) slot.strategy = make_strategy(f, specs[i], i, u);
      const typename F::Request request =
          fresh ? slot.strategy->restart(base, run.items.back(), stage)
                : slot.strategy->on_item(run.items.back(), stage);
      if (!f.dominates(request, base))
        throw_error(ErrKind::strategy_fault,
                    "strategy '" + specs[i].text() + "' (slot " + std::to_string(i) +
                        ") emitted a request not dominating its base at stage " +
                        std::to_string(stage));
      if (!slot.last_request || !(*slot.last_request == request)) {
        min_changed = std::min(min_changed, i);
        run.last_change[i] = stage;
      }
      slot.last_request = request;
      chain.push_back(request);
      base = request;
    }

    run.items.push_back(select_item(f, run.items.back(), base, config.search_bound));
    run.chains.push_back(std::move(chain));

    for (std::size_t i = 0; i < active; ++i) {
      if (slots[i].cert_recorded) continue;
      if (const auto declared = slots[i].strategy->status()) {
        run.certificates.push_back(
            {i, declared->requirement_id, stage, declared->witness, declared->guard, false});
        slots[i].cert_recorded = true;
      }
    }
  }
  return run;
}

// Constructive witness that the conjoined condition is nonempty: the item
// sequence of a run in which every strategy reached a certificate.
template <Framework F>
std::vector<typename F::Item> nonemptiness_witness(const F& f,
                                                   const std::vector<StrategyKind>& specs,
                                                   const OpponentUniverse& u,
                                                   const SchedulerConfig& config) {
  Run<F> run = run_construction(f, specs, u, config);
  if (!run.all_satisfied())
    throw_error(ErrKind::input,
                "nonemptiness_witness: not every strategy reached a certificate");
  return run.items;
}

// View one slot's part of a run as the games it actually played: one
// transcript per restart segment, with the slot's base as the opening request,
// the segment's first item as the opening item, and the slot's later requests
// as the requirement player's moves. Feeding these to the referee must yield
// no violations.
template <Framework F>
std::vector<Transcript<F>> extract_subgames(const F& f, const Run<F>& run, std::size_t slot) {
  std::vector<Transcript<F>> out;
  if (slot >= run.strategies.size()) return out;
  std::vector<Nat> starts;
  const Nat activation = std::max<Nat>(1, static_cast<Nat>(slot));
  if (activation < run.config.horizon) starts.push_back(activation);
  for (const auto& inj : run.injuries) {
    if (inj.injured == slot) starts.push_back(inj.stage);
  }
  for (std::size_t seg = 0; seg < starts.size(); ++seg) {
    const Nat s0 = starts[seg];
    const Nat end = seg + 1 < starts.size() ? starts[seg + 1] - 1 : run.config.horizon - 1;
    Transcript<F> t;
    t.framework_id = run.framework_id;
    t.opening_request =
        slot == 0 ? f.initial_request() : run.chains[static_cast<std::size_t>(s0)][slot - 1];
    t.opening_item = run.items[static_cast<std::size_t>(s0)];
    for (Nat s = s0 + 1; s <= end; ++s) {
      t.rounds.push_back({run.chains[static_cast<std::size_t>(s)][slot],
                          run.items[static_cast<std::size_t>(s)]});
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace prio
