#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "prio/bytes.hpp"
#include "prio/errors.hpp"

namespace prio {

// Result of a bounded successor enumeration. `items` is in canonical order
// (shortlex of the item serialization) and duplicate-free. `complete` is true
// only when the list is the entire successor set, which is how a provably
// stuck position is distinguished from an exhausted search budget.
template <class Item>
struct Successors {
  std::vector<Item> items;
  bool complete = false;
};

// A framework bundles the item space, the request space, the successor
// relation, item-request admissibility and a sound domination test, together
// with a canonical enumerator and bit-exact serializations for both spaces.
template <class F>
concept Framework = requires(const F& f, const typename F::Item& m,
                             const typename F::Request& u, std::size_t k,
                             const Bytes& bytes) {
  requires std::equality_comparable<typename F::Item>;
  requires std::equality_comparable<typename F::Request>;
  { f.id() } -> std::convertible_to<std::string>;
  { f.may_follow(m, m) } -> std::same_as<bool>;
  { f.compatible(m, u) } -> std::same_as<bool>;
  { f.dominates(u, u) } -> std::same_as<bool>;
  { f.initial_item() } -> std::same_as<typename F::Item>;
  { f.initial_request() } -> std::same_as<typename F::Request>;
  { f.successors(m, u, k) } -> std::same_as<Successors<typename F::Item>>;
  { f.try_join(u, u) } -> std::same_as<std::optional<typename F::Request>>;
  { f.validate_request(u) } -> std::same_as<void>;
  { f.item_bytes(m) } -> std::same_as<Bytes>;
  { f.request_bytes(u) } -> std::same_as<Bytes>;
  { f.item_from_bytes(bytes) } -> std::same_as<typename F::Item>;
  { f.request_from_bytes(bytes) } -> std::same_as<typename F::Request>;
  { f == f } -> std::same_as<bool>;
};

// A sequence is valid when every element may follow its predecessor.
template <Framework F>
bool is_valid_sequence(const F& f, std::span<const typename F::Item> seq) {
  if (seq.empty()) throw_error(ErrKind::input, "is_valid_sequence: empty sequence");
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!f.may_follow(seq[i + 1], seq[i])) return false;
  }
  return true;
}

// Domination with request validation at the boundary; the framework method
// itself trusts its inputs.
template <Framework F>
bool dominates(const F& f, const typename F::Request& u, const typename F::Request& v) {
  f.validate_request(u);
  f.validate_request(v);
  return f.dominates(u, v);
}

// --- verdicts -----------------------------------------------------------------

// Witness data produced by a condition monitor; the scheduler wraps the same
// shape into full run certificates.
struct MonitorCert {
  std::string requirement_id;
  std::vector<Nat> witness;
  std::string note;

  bool operator==(const MonitorCert&) const = default;
};

struct Pending {
  bool operator==(const Pending&) const = default;
};

struct Violated {
  std::string evidence;
  bool operator==(const Violated&) const = default;
};

// Satisfied carries the guards whose continued compatibility keeps the verdict
// absorbing: extending the transcript by items compatible with every guard can
// never take the verdict back to Pending or Violated. An empty guard list means
// the verdict is unconditional.
template <Framework F>
struct SatisfiedV {
  std::vector<MonitorCert> certs;
  std::vector<typename F::Request> guards;

  bool operator==(const SatisfiedV&) const = default;
};

template <Framework F>
using Verdict = std::variant<Pending, SatisfiedV<F>, Violated>;

template <Framework F>
bool is_pending(const Verdict<F>& v) { return std::holds_alternative<Pending>(v); }
template <Framework F>
bool is_satisfied(const Verdict<F>& v) { return std::holds_alternative<SatisfiedV<F>>(v); }
template <Framework F>
bool is_violated(const Verdict<F>& v) { return std::holds_alternative<Violated>(v); }

// A monitor effectivizes a condition: it maps finite transcript prefixes (the
// item sequence so far) to verdicts obeying the absorption laws above.
template <Framework F>
using Monitor = std::function<Verdict<F>(std::span<const typename F::Item>)>;

// Which game class the housed strategy claims to win in. Metadata only; the
// engine never branches on it.
enum class ReqClass { p, cp, wcp, omega_cp, omega_wcp };

inline std::string_view req_class_name(ReqClass c) {
  switch (c) {
    case ReqClass::p: return "p";
    case ReqClass::cp: return "cp";
    case ReqClass::wcp: return "wcp";
    case ReqClass::omega_cp: return "omega-cp";
    case ReqClass::omega_wcp: return "omega-wcp";
  }
  return "?";
}

template <Framework F>
struct Requirement {
  F framework;
  std::string id;
  ReqClass tag = ReqClass::omega_wcp;
  Monitor<F> monitor;
};

// Shared enumerator helper: order a candidate pool by the canonical item order
// (shortlex of the serialization) and drop duplicates.
template <class F>
void sort_items_shortlex(const F& f, std::vector<typename F::Item>& items) {
  std::vector<std::pair<Bytes, typename F::Item>> keyed;
  keyed.reserve(items.size());
  for (auto& m : items) keyed.emplace_back(f.item_bytes(m), std::move(m));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return shortlex_less(a.first, b.first); });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  items.clear();
  for (auto& [key, m] : keyed) items.push_back(std::move(m));
}

}  // namespace prio
