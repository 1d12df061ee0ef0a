#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prio/errors.hpp"

namespace prio {

// A D-framework is a bare successor structure: items and a may-follow
// relation, with no request space. Desk-scale instances also carry a canonical
// finite successor enumerator so searches are effective.
template <class I>
struct DFramework {
  std::string id;
  std::function<bool(const I& next, const I& prev)> may_follow;
  std::function<std::vector<I>(const I&)> successors;  // canonical order
  I initial;
};

// Verdict of a D-condition monitor on a finite prefix. `locked` means the
// condition holds on every infinite valid extension of the prefix, which is
// the guard-free analogue of a satisfied verdict.
enum class DVerdict { pending, locked, violated };

template <class I>
using DMonitor = std::function<DVerdict(std::span<const I>)>;

// Breadth-first search for a diagonal witness: the first finite valid
// sequence (in canonical order, shortest first) starting at m0 whose monitor
// locks, i.e. all infinite extensions satisfy the condition. Searches up to
// `depth` extension steps; absent if none is found within the horizon.
template <class I>
std::optional<std::vector<I>> diagonal_witness(const DFramework<I>& d, const I& m0,
                                               const DMonitor<I>& monitor, std::size_t depth) {
  std::deque<std::vector<I>> frontier;
  frontier.push_back({m0});
  while (!frontier.empty()) {
    std::vector<I> seq = std::move(frontier.front());
    frontier.pop_front();
    const DVerdict v = monitor(std::span<const I>(seq));
    if (v == DVerdict::locked) return seq;
    if (v == DVerdict::violated) continue;  // absorbing, no extension can lock
    if (seq.size() - 1 >= depth) continue;
    for (const I& next : d.successors(seq.back())) {
      if (!d.may_follow(next, seq.back()))
        throw_error(ErrKind::internal, "d-framework successor violates may_follow");
      std::vector<I> grown = seq;
      grown.push_back(next);
      frontier.push_back(std::move(grown));
    }
  }
  return std::nullopt;
}

}  // namespace prio
