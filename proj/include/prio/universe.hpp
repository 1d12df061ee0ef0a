#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prio/bytes.hpp"
#include "prio/errors.hpp"
#include "prio/sets.hpp"

namespace prio {

// Desk-scale stand-ins for the effective objects the strategies diagonalize
// against: stage-wise enumerable sets, partial 0/1-valued functions with
// convergence costs, and oracle functionals with explicit use bounds. All
// tables are fixed at construction; unknown indices behave as everywhere
// empty or divergent opponents.
struct UniverseTable {
  struct CeEntry {
    Nat element;
    Nat stage;  // first stage at which the element is visible

    auto operator<=>(const CeEntry&) const = default;
  };
  struct CeSet {
    Nat e;
    std::vector<CeEntry> entries;
  };
  struct Partial {
    Nat e;
    Nat x;
    int value = 0;  // 0 or 1
    Nat cost = 0;   // steps until convergence
  };
  struct Functional {
    Nat e;
    Nat x;
    BitStr key;  // oracle bits the computation reads; normalized length == use
    int value = 0;
    Nat use = 0;
    Nat cost = 0;
  };

  std::vector<CeSet> ce_sets;
  std::vector<Partial> partials;
  std::vector<Functional> functionals;
};

class OpponentUniverse {
 public:
  static OpponentUniverse from_table(UniverseTable table) {
    OpponentUniverse u;
    u.table_ = std::move(table);
    u.normalize_and_validate();
    return u;
  }

  // --- queries ---------------------------------------------------------------

  NatSet we_at_stage(Nat e, Nat stage) const {
    NatSet out;
    if (const auto* set = find_ce(e)) {
      for (const auto& entry : set->entries) {
        if (entry.stage <= stage) out.insert(entry.element);
      }
    }
    return out;
  }

  NatSet we_full(Nat e) const {
    NatSet out;
    if (const auto* set = find_ce(e)) {
      for (const auto& entry : set->entries) out.insert(entry.element);
    }
    return out;
  }

  std::optional<int> phi_eval(Nat e, Nat x, Nat budget) const {
    for (const auto& p : table_.partials) {
      if (p.e == e && p.x == x) return p.cost <= budget ? std::optional<int>(p.value) : std::nullopt;
    }
    return std::nullopt;
  }

  // Converges when some entry's key is a prefix of the supplied oracle bits
  // and the budget covers its cost. Keys are prefix-free per (e, x), so at
  // most one entry can match.
  std::optional<std::pair<int, Nat>> functional_eval(Nat e, const BitStr& oracle_prefix, Nat x,
                                                     Nat budget) const {
    for (const auto& fe : table_.functionals) {
      if (fe.e != e || fe.x != x) continue;
      if (fe.key.size() > oracle_prefix.size()) continue;
      if (!fe.key.prefix_of(oracle_prefix)) continue;
      if (fe.cost > budget) return std::nullopt;
      return std::make_pair(fe.value, fe.use);
    }
    return std::nullopt;
  }

  const UniverseTable& table() const { return table_; }

  // Partial-function arguments known for index e, for condition monitors that
  // sweep the whole finite table.
  std::vector<Nat> phi_args(Nat e) const {
    std::vector<Nat> out;
    for (const auto& p : table_.partials) {
      if (p.e == e) out.push_back(p.x);
    }
    return out;
  }

  std::vector<const UniverseTable::Functional*> functional_entries(Nat e) const {
    std::vector<const UniverseTable::Functional*> out;
    for (const auto& fe : table_.functionals) {
      if (fe.e == e) out.push_back(&fe);
    }
    return out;
  }

  Nat max_functional_use() const {
    Nat m = 0;
    for (const auto& fe : table_.functionals) m = std::max(m, fe.use);
    return m;
  }

  // --- text format -------------------------------------------------------------
  //
  // universe-format 1
  // ce-sets <count>
  // <e> <element>@<stage> ...
  // partials <count>
  // <e> <x> <value> <cost>
  // functionals <count>
  // <e> <x> <key bits or -> <value> <use> <cost>
  // end

  std::string store() const {
    std::ostringstream out;
    out << "universe-format 1\n";
    out << "ce-sets " << table_.ce_sets.size() << "\n";
    for (const auto& set : table_.ce_sets) {
      out << set.e;
      for (const auto& entry : set.entries) out << " " << entry.element << "@" << entry.stage;
      out << "\n";
    }
    out << "partials " << table_.partials.size() << "\n";
    for (const auto& p : table_.partials)
      out << p.e << " " << p.x << " " << p.value << " " << p.cost << "\n";
    out << "functionals " << table_.functionals.size() << "\n";
    for (const auto& fe : table_.functionals) {
      out << fe.e << " " << fe.x << " " << (fe.key.empty() ? "-" : fe.key.str()) << " "
          << fe.value << " " << fe.use << " " << fe.cost << "\n";
    }
    out << "end\n";
    return out.str();
  }

  static OpponentUniverse load(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    auto next_line = [&](std::string_view what) -> std::string {
      while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') return line;
      }
      throw_error(ErrKind::parse, "universe: unexpected end of file, wanted " + std::string(what));
    };
    if (next_line("header") != "universe-format 1")
      throw_error(ErrKind::parse, "universe: unsupported format header");

    UniverseTable table;
    Nat count = 0;
    {
      std::istringstream header(next_line("ce-sets"));
      std::string tag;
      if (!(header >> tag >> count) || tag != "ce-sets")
        throw_error(ErrKind::parse, "universe: expected ce-sets section");
    }
    for (Nat i = 0; i < count; ++i) {
      std::istringstream row(next_line("ce-set row"));
      UniverseTable::CeSet set;
      if (!(row >> set.e)) throw_error(ErrKind::parse, "universe: bad ce-set index");
      std::string cell;
      while (row >> cell) {
        const auto at = cell.find('@');
        if (at == std::string::npos)
          throw_error(ErrKind::parse, "universe: ce entry must be element@stage");
        UniverseTable::CeEntry entry;
        try {
          entry.element = std::stoull(cell.substr(0, at));
          entry.stage = std::stoull(cell.substr(at + 1));
        } catch (...) {
          throw_error(ErrKind::parse, "universe: bad ce entry '" + cell + "'");
        }
        set.entries.push_back(entry);
      }
      table.ce_sets.push_back(std::move(set));
    }
    {
      std::istringstream header(next_line("partials"));
      std::string tag;
      if (!(header >> tag >> count) || tag != "partials")
        throw_error(ErrKind::parse, "universe: expected partials section");
    }
    for (Nat i = 0; i < count; ++i) {
      std::istringstream row(next_line("partial row"));
      UniverseTable::Partial p;
      if (!(row >> p.e >> p.x >> p.value >> p.cost) || (p.value != 0 && p.value != 1))
        throw_error(ErrKind::parse, "universe: bad partial row");
      table.partials.push_back(p);
    }
    {
      std::istringstream header(next_line("functionals"));
      std::string tag;
      if (!(header >> tag >> count) || tag != "functionals")
        throw_error(ErrKind::parse, "universe: expected functionals section");
    }
    for (Nat i = 0; i < count; ++i) {
      std::istringstream row(next_line("functional row"));
      UniverseTable::Functional fe;
      std::string key;
      if (!(row >> fe.e >> fe.x >> key >> fe.value >> fe.use >> fe.cost) ||
          (fe.value != 0 && fe.value != 1))
        throw_error(ErrKind::parse, "universe: bad functional row");
      fe.key = key == "-" ? BitStr{} : BitStr::parse(key);
      table.functionals.push_back(std::move(fe));
    }
    if (next_line("end") != "end") throw_error(ErrKind::parse, "universe: missing end marker");
    return from_table(std::move(table));
  }

  Nat hash() const { return fnv1a64(store()); }

  bool operator==(const OpponentUniverse& other) const { return store() == other.store(); }

 private:
  const UniverseTable::CeSet* find_ce(Nat e) const {
    for (const auto& set : table_.ce_sets) {
      if (set.e == e) return &set;
    }
    return nullptr;
  }

  void normalize_and_validate() {
    // c.e. sets: one row per index, no duplicate elements.
    std::sort(table_.ce_sets.begin(), table_.ce_sets.end(),
              [](const auto& a, const auto& b) { return a.e < b.e; });
    for (std::size_t i = 0; i + 1 < table_.ce_sets.size(); ++i) {
      if (table_.ce_sets[i].e == table_.ce_sets[i + 1].e)
        throw_error(ErrKind::validation,
                    "universe: duplicate ce-set index " + std::to_string(table_.ce_sets[i].e));
    }
    for (auto& set : table_.ce_sets) {
      std::sort(set.entries.begin(), set.entries.end());
      for (std::size_t i = 0; i + 1 < set.entries.size(); ++i) {
        if (set.entries[i].element == set.entries[i + 1].element)
          throw_error(ErrKind::validation,
                      "universe: element " + std::to_string(set.entries[i].element) +
                          " listed twice in W_" + std::to_string(set.e));
      }
      std::sort(set.entries.begin(), set.entries.end(),
                [](const auto& a, const auto& b) {
                  return a.stage != b.stage ? a.stage < b.stage : a.element < b.element;
                });
    }

    // Partial functions: one value per argument.
    std::sort(table_.partials.begin(), table_.partials.end(), [](const auto& a, const auto& b) {
      return a.e != b.e ? a.e < b.e : a.x < b.x;
    });
    for (std::size_t i = 0; i + 1 < table_.partials.size(); ++i) {
      const auto& a = table_.partials[i];
      const auto& b = table_.partials[i + 1];
      if (a.e == b.e && a.x == b.x)
        throw_error(ErrKind::validation, "universe: duplicate partial entry for (e=" +
                                             std::to_string(a.e) + ", x=" + std::to_string(a.x) + ")");
    }

    // Functionals: the key must pin down every oracle position below the use;
    // extra key bits beyond the use are irrelevant by definition and are
    // normalized away.
    for (auto& fe : table_.functionals) {
      if (fe.key.size() < fe.use)
        throw_error(ErrKind::validation,
                    "universe: functional key shorter than its use at (e=" + std::to_string(fe.e) +
                        ", x=" + std::to_string(fe.x) + ")");
      fe.key = fe.key.prefix(static_cast<std::size_t>(fe.use));
    }
    std::sort(table_.functionals.begin(), table_.functionals.end(),
              [](const auto& a, const auto& b) {
                if (a.e != b.e) return a.e < b.e;
                if (a.x != b.x) return a.x < b.x;
                return a.key.str() < b.key.str();
              });
    // Use-consistency: two entries for the same (e, x) whose read regions can
    // agree on a common oracle must be identical. With keys normalized to
    // exactly the use, that means keys are prefix-free.
    for (std::size_t i = 0; i < table_.functionals.size(); ++i) {
      for (std::size_t j = i + 1; j < table_.functionals.size(); ++j) {
        const auto& a = table_.functionals[i];
        const auto& b = table_.functionals[j];
        if (a.e != b.e || a.x != b.x) continue;
        if (a.key.prefix_of(b.key) || b.key.prefix_of(a.key)) {
          if (a.key == b.key && a.value == b.value && a.use == b.use && a.cost == b.cost) continue;
          throw_error(ErrKind::validation,
                      "universe: use-inconsistent functional entries at (e=" + std::to_string(a.e) +
                          ", x=" + std::to_string(a.x) + "), keys '" + a.key.str() + "' and '" +
                          b.key.str() + "'");
        }
      }
    }
    // Drop exact duplicates kept by the loop above.
    table_.functionals.erase(
        std::unique(table_.functionals.begin(), table_.functionals.end(),
                    [](const auto& a, const auto& b) {
                      return a.e == b.e && a.x == b.x && a.key == b.key && a.value == b.value &&
                             a.use == b.use && a.cost == b.cost;
                    }),
        table_.functionals.end());
  }

  UniverseTable table_;
};

}  // namespace prio
