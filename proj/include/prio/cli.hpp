#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prio/demos.hpp"
#include "prio/limits.hpp"
#include "prio/oracle.hpp"
#include "prio/run_io.hpp"
#include "prio/scheduler.hpp"
#include "prio/universe.hpp"
#include "prio/verify.hpp"

namespace prio::cli {

// Exit codes: 0 success, 1 failed check or internal fault, 2 unreadable or
// invalid input, 3 run ended without success (horizon exhausted, no
// compatible item, enumeration exhausted).

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrKind::parse, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_error(ErrKind::input, "cannot write " + path);
  out << content;
}

inline Nat default_search_bound() {
  if (const char* env = std::getenv("PRIORITY_ENGINE_SEARCH_BOUND")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw_error(ErrKind::input, "PRIORITY_ENGINE_SEARCH_BOUND is not a number");
    }
  }
  return 64;
}

// --- scenario config files ------------------------------------------------------
//
//   framework <spm|spm_x_spm|s01|spp|ssep>
//   enumeration <v> ...          (s01/ssep)
//   strategy <family> <e> [side] (repeatable)
//   universe <path>              (relative to the config file)
//   horizon <n>
//   quiescence <n>
//   search-bound <n>             (optional; default from the environment)
//   out <path>                   (optional)

struct ScenarioConfig {
  std::string framework_id;
  std::vector<Nat> enumeration;
  std::vector<StrategyKind> strategies;
  std::string universe_path;
  std::string out_path = "run.out";
  SchedulerConfig config{0, 0, 0};
  bool search_bound_set = false;
};

inline bool known_framework(const std::string& id) {
  return id == "spm" || id == "spm_x_spm" || id == "s01" || id == "spp" || id == "ssep";
}

inline ScenarioConfig parse_scenario_config(std::string_view text, const std::string& base_dir) {
  ScenarioConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  bool horizon_seen = false, quiescence_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string key;
    row >> key;
    if (key == "framework") {
      if (!(row >> cfg.framework_id)) throw_error(ErrKind::parse, "config: framework needs a value");
    } else if (key == "enumeration") {
      Nat v = 0;
      while (row >> v) cfg.enumeration.push_back(v);
    } else if (key == "strategy") {
      std::string rest;
      std::getline(row, rest);
      cfg.strategies.push_back(StrategyKind::parse(rest));
    } else if (key == "universe") {
      if (!(row >> cfg.universe_path)) throw_error(ErrKind::parse, "config: universe needs a path");
    } else if (key == "out") {
      if (!(row >> cfg.out_path)) throw_error(ErrKind::parse, "config: out needs a path");
    } else if (key == "horizon") {
      if (!(row >> cfg.config.horizon)) throw_error(ErrKind::parse, "config: horizon needs a number");
      horizon_seen = true;
    } else if (key == "quiescence") {
      if (!(row >> cfg.config.quiescence))
        throw_error(ErrKind::parse, "config: quiescence needs a number");
      quiescence_seen = true;
    } else if (key == "search-bound") {
      if (!(row >> cfg.config.search_bound))
        throw_error(ErrKind::parse, "config: search-bound needs a number");
      cfg.search_bound_set = true;
    } else {
      throw_error(ErrKind::parse, "config: unknown key '" + key + "'");
    }
  }
  if (!known_framework(cfg.framework_id))
    throw_error(ErrKind::validation, "config: unknown framework '" + cfg.framework_id + "'");
  if (!horizon_seen || !quiescence_seen)
    throw_error(ErrKind::validation, "config: horizon and quiescence are required");
  if (cfg.config.quiescence < 1 || cfg.config.horizon < cfg.config.quiescence)
    throw_error(ErrKind::validation, "config: need horizon >= quiescence >= 1");
  if ((cfg.framework_id == "s01" || cfg.framework_id == "ssep") && cfg.enumeration.empty())
    throw_error(ErrKind::validation, "config: framework " + cfg.framework_id + " needs an enumeration");
  for (const auto& kind : cfg.strategies) {
    if (kind.framework_id() != cfg.framework_id)
      throw_error(ErrKind::validation, "config: strategy '" + kind.text() +
                                           "' does not fit framework " + cfg.framework_id);
  }
  if (!cfg.universe_path.empty() && !base_dir.empty()) {
    std::filesystem::path p(cfg.universe_path);
    if (p.is_relative()) cfg.universe_path = (std::filesystem::path(base_dir) / p).string();
  }
  return cfg;
}

// --- framework dispatch -----------------------------------------------------------

template <class Fn>
auto with_framework(const std::string& id, const std::vector<Nat>& enumeration, Fn&& fn) {
  if (id == "spm") return fn(SpmFramework{});
  if (id == "spm_x_spm") return fn(SpmPair{});
  if (id == "s01") return fn(S01Framework{enumeration});
  if (id == "spp") return fn(SppFramework{});
  if (id == "ssep") return fn(SsepFramework{enumeration});
  throw_error(ErrKind::input, "unknown framework '" + id + "'");
}

// --- request literals ---------------------------------------------------------------
//
// Human-typable forms for the oracle subcommand: sets as {1,2,3}, composite
// requests joined with '/', product requests as (<left>)x(<right>). A literal
// starting with "hex:" is the canonical serialization instead.

inline NatSet parse_set_literal(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw_error(ErrKind::parse, "set literal must look like {1,2,3}");
  NatSet out;
  std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) return out;
  std::istringstream in(body);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      out.insert(std::stoull(cell));
    } catch (...) {
      throw_error(ErrKind::parse, "bad set element '" + cell + "'");
    }
  }
  return out;
}

inline std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

template <Framework F>
typename F::Request parse_request_literal(const F& f, const std::string& text) {
  if (text.rfind("hex:", 0) == 0) {
    Bytes raw;
    if (!from_hex(text.substr(4), raw)) throw_error(ErrKind::parse, "bad hex request literal");
    return f.request_from_bytes(raw);
  }
  if constexpr (std::same_as<F, SpmFramework>) {
    const auto parts = split_top_level(text, '/');
    if (parts.size() != 2) throw_error(ErrKind::parse, "spm request literal wants {pos}/{neg}");
    SpmRequest u{parse_set_literal(parts[0]), parse_set_literal(parts[1])};
    f.validate_request(u);
    return u;
  } else if constexpr (std::same_as<F, S01Framework>) {
    const auto parts = split_top_level(text, '/');
    if (parts.size() != 2) throw_error(ErrKind::parse, "s01 request literal wants {block0}/{block1}");
    S01Request u{parse_set_literal(parts[0]), parse_set_literal(parts[1])};
    f.validate_request(u);
    return u;
  } else if constexpr (std::same_as<F, SppFramework>) {
    const auto parts = split_top_level(text, '/');
    if (parts.size() != 3)
      throw_error(ErrKind::parse, "spp request literal wants {a_pos}/{b_pos}/{barred}");
    SppRequest u{parse_set_literal(parts[0]), parse_set_literal(parts[1]),
                 parse_set_literal(parts[2])};
    f.validate_request(u);
    return u;
  } else if constexpr (std::same_as<F, SsepFramework>) {
    const auto parts = split_top_level(text, '/');
    if (parts.size() != 2)
      throw_error(ErrKind::parse, "ssep request literal wants {indices}/{banned}");
    SsepRequest u{parse_set_literal(parts[0]), parse_set_literal(parts[1])};
    f.validate_request(u);
    return u;
  } else if constexpr (std::same_as<F, SpmPair>) {
    const auto parts = split_top_level(text, 'x');
    if (parts.size() != 2)
      throw_error(ErrKind::parse, "product request literal wants (<left>)x(<right>)");
    auto strip = [](const std::string& s) -> std::string {
      if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw_error(ErrKind::parse, "product component must be parenthesized");
      return s.substr(1, s.size() - 2);
    };
    return SpmPair::Request{parse_request_literal(f.left(), strip(parts[0])),
                            parse_request_literal(f.right(), strip(parts[1]))};
  } else {
    throw_error(ErrKind::parse, "no request literal form for framework " + f.id());
  }
}

// --- summaries -----------------------------------------------------------------------

// The classic counting bound for the simple-set construction: the built set
// takes at most n elements from [0, 2n).
inline bool census_holds(const NatSet& built, Nat horizon) {
  const Nat top = built.empty() ? 1 : built.values().back() / 2 + 2 + horizon / 8;
  for (Nat n = 1; n <= top; ++n) {
    Nat inside = 0;
    for (Nat x : built.values()) {
      if (x < 2 * n) ++inside;
    }
    if (2 * n - inside < n) return false;
  }
  return true;
}

template <Framework F>
void print_summary(std::ostream& out, const F& f, const Run<F>& run) {
  out << "run framework=" << run.framework_id << " strategies=" << run.strategies.size()
      << " horizon=" << run.config.horizon << " quiescence=" << run.config.quiescence << "\n";
  out << "universe-hash " << hash_hex(run.universe_hash) << "\n";
  for (std::size_t i = 0; i < run.strategies.size(); ++i) {
    out << "slot " << i << " [" << run.strategies[i].text() << "] ";
    const RunCertificate<F>* live = nullptr;
    for (const auto& cert : run.certificates) {
      if (cert.slot == i && !cert.withdrawn) live = &cert;
    }
    if (live) {
      out << "satisfied stage=" << live->stage << " witness=[";
      for (std::size_t w = 0; w < live->witness.size(); ++w)
        out << (w ? " " : "") << live->witness[w];
      out << "]";
    } else {
      out << "pending";
    }
    out << " last-change=" << run.last_change[i] << " restarts=" << run.restarts(i) << "\n";
  }
  out << "injuries " << run.injuries.size() << "\n";
  out << "stabilized " << (run.stabilized() ? "yes" : "no") << "\n";
  out << "all-satisfied " << (run.all_satisfied() ? "yes" : "no") << "\n";
  if constexpr (std::same_as<F, SpmFramework>) {
    out << "census |complement within [0,2n)| >= n: "
        << (census_holds(run.items.back(), run.config.horizon) ? "holds" : "violated") << "\n";
  }
}

// --- commands ---------------------------------------------------------------------

inline int map_run_error(const EngineError& e, std::ostream& out) {
  out << "error: " << e.what() << "\n";
  switch (e.kind()) {
    case ErrKind::parse:
    case ErrKind::input:
    case ErrKind::validation:
      return 2;
    case ErrKind::no_compatible_item:
    case ErrKind::universe_exhausted:
    case ErrKind::resource:
      return 3;
    case ErrKind::strategy_fault:
    case ErrKind::internal:
      return 1;
  }
  return 1;
}

struct RunArgs {
  std::string config_path;
  std::string universe_override;
  std::string out_override;
  std::optional<Nat> horizon_override;
};

template <Framework F>
int execute_scenario(const F& f, const ScenarioConfig& cfg, const OpponentUniverse& universe,
                     std::ostream& out) {
  Run<F> run = run_construction(f, cfg.strategies, universe, cfg.config);
  run.enumeration = cfg.enumeration;
  write_file(cfg.out_path, run_to_text(f, run));
  print_summary(out, f, run);
  out << "run-file " << cfg.out_path << "\n";
  return run.all_satisfied() && run.stabilized() ? 0 : 3;
}

inline int cmd_run(const RunArgs& args, std::ostream& out) {
  try {
    const std::string dir = std::filesystem::path(args.config_path).parent_path().string();
    ScenarioConfig cfg = parse_scenario_config(read_file(args.config_path), dir);
    if (!args.universe_override.empty()) cfg.universe_path = args.universe_override;
    if (!args.out_override.empty()) cfg.out_path = args.out_override;
    if (args.horizon_override) cfg.config.horizon = *args.horizon_override;
    if (!cfg.search_bound_set) cfg.config.search_bound = default_search_bound();
    if (cfg.universe_path.empty())
      throw_error(ErrKind::validation, "config: no universe file given");
    if (cfg.config.horizon < cfg.config.quiescence)
      throw_error(ErrKind::validation, "config: need horizon >= quiescence");
    const OpponentUniverse universe = OpponentUniverse::load(read_file(cfg.universe_path));
    return with_framework(cfg.framework_id, cfg.enumeration, [&](auto f) {
      return execute_scenario(f, cfg, universe, out);
    });
  } catch (const EngineError& e) {
    return map_run_error(e, out);
  }
}

inline int cmd_verify(const std::string& run_path, const std::string& universe_path,
                      std::ostream& out) {
  try {
    const std::string run_text = read_file(run_path);
    const OpponentUniverse universe = OpponentUniverse::load(read_file(universe_path));
    const RunHeader header = peek_run_header(run_text);
    return with_framework(header.framework_id, header.enumeration, [&](auto f) {
      auto run = run_from_text(f, run_text);
      run.enumeration = header.enumeration;
      const VerifyReport report = verify_run(f, universe, run);
      out << report.text();
      out << (report.all_pass() ? "verified" : "verification FAILED") << "\n";
      return report.all_pass() ? 0 : 1;
    });
  } catch (const EngineError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
}

struct OracleArgs {
  std::string framework_id = "spm";
  std::vector<Nat> enumeration;
  Nat bound = 6;
  std::string u_text;
  std::string v_text;
};

inline int cmd_oracle(const OracleArgs& args, std::ostream& out) {
  try {
    return with_framework(args.framework_id, args.enumeration, [&](auto f) {
      const auto u = parse_request_literal(f, args.u_text);
      const auto v = parse_request_literal(f, args.v_text);
      const bool formula = f.dominates(u, v);
      const auto oracle = brute_force_dominates(f, args.bound, u, v);
      out << "formula=" << (formula ? "true" : "false")
          << " oracle=" << (oracle.holds ? "true" : "false")
          << (formula == oracle.holds ? " agree" : " DISAGREE");
      if (oracle.counterexample)
        out << " counterexample=" << to_hex(f.item_bytes(*oracle.counterexample));
      out << "\n";
      return formula == oracle.holds ? 0 : 1;
    });
  } catch (const EngineError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
}

struct DemoArgs {
  std::string name;
  std::string out_override;
  std::string universe_override;
  std::optional<Nat> horizon_override;
};

inline int cmd_demo(const DemoArgs& args, std::ostream& out) {
  try {
    const DemoSpec& demo = demo_by_name(args.name);
    ScenarioConfig cfg;
    cfg.framework_id = demo.framework_id;
    cfg.enumeration = demo.enumeration;
    cfg.strategies = demo.strategies;
    cfg.config = demo.config;
    cfg.out_path = args.out_override.empty() ? demo.name + ".run" : args.out_override;
    if (args.horizon_override) cfg.config.horizon = *args.horizon_override;
    const std::string universe_path =
        args.universe_override.empty() ? demo.name + ".universe" : args.universe_override;
    write_file(universe_path, demo.universe.store());
    out << "universe-file " << universe_path << "\n";
    return with_framework(cfg.framework_id, cfg.enumeration, [&](auto f) {
      return execute_scenario(f, cfg, demo.universe, out);
    });
  } catch (const EngineError& e) {
    return map_run_error(e, out);
  }
}

// --- argument parsing ----------------------------------------------------------------

inline int dispatch(std::vector<std::string> args, std::ostream& out = std::cout) {
  CLI::App app{"deterministic engine for finite-injury priority constructions"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "run a scenario from a config file");
  run_cmd->add_option("--config", run_args.config_path, "scenario config file")->required();
  run_cmd->add_option("--universe", run_args.universe_override, "override the universe file");
  run_cmd->add_option("--out", run_args.out_override, "override the run output path");
  Nat run_horizon = 0;
  auto* run_horizon_opt =
      run_cmd->add_option("--horizon-override", run_horizon, "override the configured horizon");

  std::string verify_run_path, verify_universe_path;
  auto* verify_cmd = app.add_subcommand("verify", "re-check a run file from scratch");
  verify_cmd->add_option("run", verify_run_path, "run file")->required();
  verify_cmd->add_option("universe", verify_universe_path, "universe file")->required();

  OracleArgs oracle_args;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "compare closed-form domination with the exhaustive oracle");
  oracle_cmd->add_option("--framework", oracle_args.framework_id, "framework id")
      ->default_val("spm");
  oracle_cmd->add_option("--enumeration", oracle_args.enumeration,
                         "enumeration values for s01/ssep");
  oracle_cmd->add_option("--bound", oracle_args.bound, "exhaustive universe bound")
      ->default_val(6);
  oracle_cmd->add_option("u", oracle_args.u_text, "candidate dominating request")->required();
  oracle_cmd->add_option("v", oracle_args.v_text, "candidate dominated request")->required();

  DemoArgs demo_args;
  auto* demo_cmd = app.add_subcommand("demo", "run a bundled construction");
  demo_cmd->add_option("name", demo_args.name, "simple | fm | split | insep")->required();
  demo_cmd->add_option("--out", demo_args.out_override, "run output path");
  demo_cmd->add_option("--universe", demo_args.universe_override, "universe output path");
  Nat demo_horizon = 0;
  auto* demo_horizon_opt =
      demo_cmd->add_option("--horizon-override", demo_horizon, "override the demo horizon");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }

  if (run_horizon_opt->count() > 0) run_args.horizon_override = run_horizon;
  if (demo_horizon_opt->count() > 0) demo_args.horizon_override = demo_horizon;

  if (run_cmd->parsed()) return cmd_run(run_args, out);
  if (verify_cmd->parsed()) return cmd_verify(verify_run_path, verify_universe_path, out);
  if (oracle_cmd->parsed()) return cmd_oracle(oracle_args, out);
  if (demo_cmd->parsed()) return cmd_demo(demo_args, out);
  out << app.help();
  return 2;
}

}  // namespace prio::cli
