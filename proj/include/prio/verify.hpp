#pragma once

#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prio/oracle.hpp"
#include "prio/product.hpp"
#include "prio/s01.hpp"
#include "prio/scheduler.hpp"
#include "prio/spm.hpp"
#include "prio/spp.hpp"

namespace prio {

struct VerifyCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  std::string text() const {
    std::ostringstream out;
    for (const auto& c : checks) {
      out << (c.pass ? "pass" : "FAIL") << " " << c.name;
      if (!c.detail.empty()) out << ": " << c.detail;
      out << "\n";
    }
    return out.str();
  }
};

struct VerifyOptions {
  // When set, re-check chain domination against the exhaustive oracle on the
  // first few stages. Only feasible when every request element is small.
  std::optional<Nat> brute_bound;
  Nat brute_stage_limit = 6;
};

namespace detail {

inline constexpr Nat kNoBudget = std::numeric_limits<Nat>::max();

template <Framework F>
std::optional<std::string> validate_certificate(const F& f, const OpponentUniverse& u,
                                                const Run<F>& run,
                                                const RunCertificate<F>& cert) {
  const StrategyKind kind = run.strategies[cert.slot];
  const auto& item_at = run.items[static_cast<std::size_t>(cert.stage)];
  const auto& final_item = run.items.back();

  if constexpr (std::same_as<F, SpmFramework>) {
    if (kind.family == StrategyKind::Family::simple) {
      if (cert.witness.size() != 2) return "simple certificate needs witness {e, x}";
      const Nat e = cert.witness[0], x = cert.witness[1];
      if (e != kind.e) return "certificate names the wrong opponent index";
      if (x <= 2 * e) return "witness is not above 2e";
      if (!u.we_full(e).contains(x)) return "witness never enters W_e";
      if (!item_at.contains(x)) return "witness not in the built set at the certificate stage";
      return std::nullopt;
    }
  } else if constexpr (std::same_as<F, SpmPair>) {
    if (kind.family == StrategyKind::Family::fm) {
      if (cert.witness.size() != 4) return "fm certificate needs witness {e, x, use, claim}";
      const Nat e = cert.witness[0], x = cert.witness[1], use = cert.witness[2];
      const int claim = static_cast<int>(cert.witness[3]);
      if (e != kind.e) return "certificate names the wrong opponent index";
      auto own_of = [&](const typename F::Item& m) -> const NatSet& {
        return kind.side == Side::left ? m.first : m.second;
      };
      auto oracle_of = [&](const typename F::Item& m) -> const NatSet& {
        return kind.side == Side::left ? m.second : m.first;
      };
      BitStr prefix;
      for (Nat i = 0; i < use; ++i) prefix.push(oracle_of(item_at).contains(i) ? 1 : 0);
      const auto eval = u.functional_eval(e, prefix, x, kNoBudget);
      if (!eval || eval->first != claim || eval->second != use)
        return "functional table does not reproduce the recorded value and use";
      if (claim == 0 && !own_of(item_at).contains(x))
        return "claim 0 but the witness is missing from the diagonalized side";
      if (claim == 1 && own_of(final_item).contains(x))
        return "claim 1 but the witness entered the diagonalized side";
      for (std::size_t s = static_cast<std::size_t>(cert.stage); s < run.items.size(); ++s) {
        for (Nat i = 0; i < use; ++i) {
          if (oracle_of(run.items[s]).contains(i) != oracle_of(item_at).contains(i))
            return "oracle side changed below the use after stage " + std::to_string(cert.stage) +
                   " (at stage " + std::to_string(s) + ")";
        }
      }
      return std::nullopt;
    }
  } else if constexpr (std::same_as<F, S01Framework>) {
    if (kind.family == StrategyKind::Family::split) {
      if (cert.witness.size() != 4) return "split certificate needs witness {e, index, value, claim}";
      const Nat e = cert.witness[0], index = cert.witness[1], value = cert.witness[2];
      const int claim = static_cast<int>(cert.witness[3]);
      if (e != kind.e) return "certificate names the wrong opponent index";
      if (f.value_at(static_cast<std::size_t>(index)) != value)
        return "enumeration does not place that value at that index";
      const auto phi = u.phi_eval(e, value, kNoBudget);
      if (!phi || *phi != claim) return "partial-function table does not reproduce the claim";
      if (index >= final_item.size()) return "routed position was never written";
      // claim 1 asserts side 0, so the refuting route is side 1 (and dually).
      const int against = claim == 1 ? 1 : 0;
      if (final_item.at(static_cast<std::size_t>(index)) != against)
        return "witness was routed with the claim, not against it";
      return std::nullopt;
    }
  } else if constexpr (std::same_as<F, SppFramework>) {
    if (kind.family == StrategyKind::Family::insep) {
      if (cert.witness.size() != 3) return "insep certificate needs witness {e, x, claim}";
      const Nat e = cert.witness[0], x = cert.witness[1];
      const int claim = static_cast<int>(cert.witness[2]);
      if (e != kind.e) return "certificate names the wrong opponent index";
      const auto phi = u.phi_eval(e, x, kNoBudget);
      if (!phi || *phi != claim) return "partial-function table does not reproduce the claim";
      const bool landed = claim == 1 ? item_at.b.contains(x) : item_at.a.contains(x);
      if (!landed) return "witness placement does not contradict the claim";
      return std::nullopt;
    }
  }
  return "certificate family does not match the run's framework";
}

}  // namespace detail

// Recompute every invariant of a run from scratch: sequence validity, nested
// domination of each chain snapshot, per-stage compatibility, the
// finite-injury accounting bound, and every certificate against the universe
// and its guard. Failures become report entries naming positions.
template <Framework F>
VerifyReport verify_run(const F& f, const OpponentUniverse& u, const Run<F>& run,
                        const VerifyOptions& options = {}) {
  VerifyReport report;
  auto add = [&](std::string name, bool pass, std::string detail = "") {
    report.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  // Structure.
  {
    bool ok = true;
    std::string detail;
    if (run.items.empty() || run.chains.size() != run.items.size()) {
      ok = false;
      detail = "stage tables have mismatched sizes";
    } else if (run.items.size() != run.config.horizon) {
      ok = false;
      detail = "stage count disagrees with the configured horizon";
    } else if (!(run.items.front() == f.initial_item())) {
      ok = false;
      detail = "stage 0 item is not the framework's initial item";
    } else if (!run.chains.front().empty()) {
      ok = false;
      detail = "stage 0 must precede all requests";
    } else if (run.universe_hash != u.hash()) {
      ok = false;
      detail = "universe hash mismatch";
    } else if (run.last_change.size() != run.strategies.size()) {
      ok = false;
      detail = "stabilization table has the wrong width";
    } else {
      for (std::size_t s = 1; s < run.chains.size(); ++s) {
        const std::size_t expected = std::min(run.strategies.size(), s + 1);
        if (run.chains[s].size() != expected) {
          ok = false;
          detail = "stage " + std::to_string(s) + " chain has the wrong width";
          break;
        }
      }
    }
    add("structure", ok, detail);
    if (!ok) return report;  // later checks index into the tables
  }

  // (a) validity of the item sequence.
  add("validity", is_valid_sequence(f, std::span<const typename F::Item>(run.items)),
      "every item must follow its predecessor");

  // (b) nested domination of every chain snapshot.
  {
    bool ok = true;
    std::string detail;
    for (std::size_t s = 1; s < run.chains.size() && ok; ++s) {
      const auto& chain = run.chains[s];
      typename F::Request base = f.initial_request();
      for (std::size_t i = 0; i < chain.size(); ++i) {
        if (!f.dominates(chain[i], base)) {
          ok = false;
          detail = "stage " + std::to_string(s) + " slot " + std::to_string(i) +
                   " does not dominate its base";
          break;
        }
        if (options.brute_bound && s <= options.brute_stage_limit) {
          const auto oracle = brute_force_dominates(f, *options.brute_bound, chain[i], base);
          if (!oracle.holds) {
            ok = false;
            detail = "stage " + std::to_string(s) + " slot " + std::to_string(i) +
                     " fails the exhaustive domination oracle";
            break;
          }
        }
        base = chain[i];
      }
    }
    add("domination", ok, detail);
  }

  // (c) the stage item is compatible with the deepest request, and with every
  // link above it.
  {
    bool ok = true;
    std::string detail;
    for (std::size_t s = 0; s < run.items.size() && ok; ++s) {
      const auto& chain = run.chains[s];
      if (chain.empty()) {
        if (!f.compatible(run.items[s], f.initial_request())) {
          ok = false;
          detail = "stage " + std::to_string(s) + " item incompatible with the initial request";
        }
        continue;
      }
      for (std::size_t i = 0; i < chain.size(); ++i) {
        if (!f.compatible(run.items[s], chain[i])) {
          ok = false;
          detail = "stage " + std::to_string(s) + " item incompatible with slot " +
                   std::to_string(i) + "'s request";
          break;
        }
      }
    }
    add("compatibility", ok, detail);
  }

  // (d) finite-injury accounting.
  {
    bool ok = true;
    std::string detail;
    std::vector<std::size_t> changes(run.strategies.size(), 0);
    std::vector<Nat> last_change(run.strategies.size(), 0);
    for (std::size_t s = 1; s < run.chains.size(); ++s) {
      const auto& chain = run.chains[s];
      const auto& prev = run.chains[s - 1];
      for (std::size_t j = 0; j < chain.size(); ++j) {
        if (j >= prev.size() || !(prev[j] == chain[j])) {
          ++changes[j];
          last_change[j] = s;
        }
      }
    }
    for (std::size_t i = 0; i < run.strategies.size() && ok; ++i) {
      std::size_t bound = 0;
      for (std::size_t j = 0; j < i; ++j) bound += changes[j];
      if (run.restarts(i) > bound) {
        ok = false;
        detail = "slot " + std::to_string(i) + " restarted " + std::to_string(run.restarts(i)) +
                 " times against only " + std::to_string(bound) + " higher-priority changes";
      }
    }
    if (ok && last_change != run.last_change) {
      ok = false;
      detail = "recorded stabilization stages disagree with the chain history";
    }
    add("injury-accounting", ok, detail);
  }

  // (e) certificates: witness data against the universe, guard against every
  // later item.
  {
    bool ok = true;
    std::string detail;
    for (const auto& cert : run.certificates) {
      if (cert.withdrawn) continue;  // historical record only
      if (cert.slot >= run.strategies.size() || cert.stage >= run.items.size()) {
        ok = false;
        detail = "certificate names a slot or stage outside the run";
        break;
      }
      for (std::size_t s = static_cast<std::size_t>(cert.stage); s < run.items.size(); ++s) {
        if (!f.compatible(run.items[s], cert.guard)) {
          ok = false;
          detail = "slot " + std::to_string(cert.slot) + " guard broken at stage " +
                   std::to_string(s);
          break;
        }
      }
      if (!ok) break;
      if (const auto error = detail::validate_certificate(f, u, run, cert)) {
        ok = false;
        detail = "slot " + std::to_string(cert.slot) + " at stage " + std::to_string(cert.stage) +
                 ": " + *error;
        break;
      }
    }
    add("certificates", ok, detail);
  }

  return report;
}

}  // namespace prio
