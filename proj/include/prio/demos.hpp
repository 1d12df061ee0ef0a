#pragma once

#include <string>
#include <vector>

#include "prio/scheduler.hpp"
#include "prio/strategies.hpp"
#include "prio/universe.hpp"

namespace prio {

// The built-in constructions the CLI ships. Each bundles its own opponent
// universe; the CLI writes that universe next to the run so the pair can be
// re-verified offline.
struct DemoSpec {
  std::string name;
  std::string framework_id;
  std::vector<Nat> enumeration;  // s01/ssep context, empty otherwise
  std::vector<StrategyKind> strategies;
  OpponentUniverse universe;
  SchedulerConfig config;
};

namespace detail {

inline DemoSpec make_simple_demo() {
  DemoSpec d;
  d.name = "simple";
  d.framework_id = "spm";
  d.strategies = {StrategyKind::simple(0), StrategyKind::simple(1), StrategyKind::simple(2)};
  UniverseTable t;
  t.ce_sets.push_back({0, {{3, 1}}});
  t.ce_sets.push_back({1, {{1, 1}, {7, 2}}});  // 1 is too small for index 1, 7 qualifies
  t.ce_sets.push_back({2, {{9, 5}}});
  d.universe = OpponentUniverse::from_table(std::move(t));
  d.config = {20, 5, 64};
  return d;
}

inline DemoSpec make_fm_demo() {
  DemoSpec d;
  d.name = "fm";
  d.framework_id = "spm_x_spm";
  d.strategies = {StrategyKind::fm(0, Side::left), StrategyKind::fm(0, Side::right),
                  StrategyKind::fm(1, Side::left), StrategyKind::fm(1, Side::right)};
  UniverseTable t;
  // Two functionals, queried from both sides; each converges to 0 on the
  // strategy's canonical witness once the oracle prefix is long enough.
  t.functionals.push_back({0, 10, BitStr::parse("00"), 0, 2, 2});
  t.functionals.push_back({0, 20, BitStr::parse("000"), 0, 3, 3});
  t.functionals.push_back({1, 30, BitStr::parse("0000"), 0, 4, 4});
  t.functionals.push_back({1, 40, BitStr::parse("00000"), 0, 5, 5});
  d.universe = OpponentUniverse::from_table(std::move(t));
  d.config = {200, 50, 64};
  return d;
}

inline DemoSpec make_split_demo() {
  DemoSpec d;
  d.name = "split";
  d.framework_id = "s01";
  d.enumeration = {5, 3, 8, 14, 7, 21, 9, 2, 17, 11, 26, 4};
  d.strategies = {StrategyKind::split(0), StrategyKind::split(1), StrategyKind::split(2)};
  UniverseTable t;
  // Three total candidate separators over the enumerated set.
  for (Nat v : d.enumeration) {
    t.partials.push_back({0, v, static_cast<int>(v % 2), 1});  // odd values on side 0
    t.partials.push_back({1, v, 0, 1});                        // everything off the separator
    t.partials.push_back({2, v, static_cast<int>(1 - v % 2), 1});
  }
  d.universe = OpponentUniverse::from_table(std::move(t));
  // The enumeration has 12 indices, so the routing string tops out at 12 bits:
  // exactly horizon 13 stages.
  d.config = {13, 3, 64};
  return d;
}

inline DemoSpec make_insep_demo() {
  DemoSpec d;
  d.name = "insep";
  d.framework_id = "spp";
  d.strategies = {StrategyKind::insep(0), StrategyKind::insep(1), StrategyKind::insep(2)};
  UniverseTable t;
  // Two candidate separators answer on the witnesses; the third diverges
  // everywhere, so its strategy must settle into a constant protecting
  // request and stay pending.
  t.partials.push_back({0, 10, 1, 2});
  t.partials.push_back({1, 20, 0, 3});
  d.universe = OpponentUniverse::from_table(std::move(t));
  d.config = {60, 50, 64};
  return d;
}

}  // namespace detail

inline const std::vector<DemoSpec>& demos() {
  static const std::vector<DemoSpec> all = {
      detail::make_simple_demo(),
      detail::make_fm_demo(),
      detail::make_split_demo(),
      detail::make_insep_demo(),
  };
  return all;
}

inline const DemoSpec& demo_by_name(const std::string& name) {
  for (const auto& d : demos()) {
    if (d.name == name) return d;
  }
  throw_error(ErrKind::input, "unknown demo '" + name + "' (have: simple, fm, split, insep)");
}

}  // namespace prio
