#pragma once

#include <sstream>
#include <string>
#include <string_view>

#include "prio/scheduler.hpp"

namespace prio {

// Line-delimited run file:
//
//   run-format 1
//   framework <id>
//   enumeration <k> <v>*k
//   universe-hash <hex16>
//   horizon <n>
//   quiescence <n>
//   search-bound <n>
//   strategies <k>
//   strategy <slot> <family> <e> [side]
//   stages <n>
//   stage <s> chain <k> <hex>*k item <hex> injuries <m> <injured>:<cause>*m
//   certificates <k>
//   cert <slot> stage <s> witness <k> <nat>*k guard <hex> live|withdrawn
//   stabilization <k> <slot>:<stage>*k
//   end
//
// The emitter is canonical, so identical runs produce identical bytes.

template <Framework F>
std::string run_to_text(const F& f, const Run<F>& run) {
  std::ostringstream out;
  out << "run-format 1\n";
  out << "framework " << run.framework_id << "\n";
  out << "enumeration " << run.enumeration.size();
  for (Nat v : run.enumeration) out << " " << v;
  out << "\n";
  out << "universe-hash " << hash_hex(run.universe_hash) << "\n";
  out << "horizon " << run.config.horizon << "\n";
  out << "quiescence " << run.config.quiescence << "\n";
  out << "search-bound " << run.config.search_bound << "\n";
  out << "strategies " << run.strategies.size() << "\n";
  for (std::size_t i = 0; i < run.strategies.size(); ++i)
    out << "strategy " << i << " " << run.strategies[i].text() << "\n";
  out << "stages " << run.items.size() << "\n";
  for (std::size_t s = 0; s < run.items.size(); ++s) {
    out << "stage " << s << " chain " << run.chains[s].size();
    for (const auto& r : run.chains[s]) out << " " << to_hex(f.request_bytes(r));
    out << " item " << to_hex(f.item_bytes(run.items[s]));
    std::size_t count = 0;
    for (const auto& inj : run.injuries) {
      if (inj.stage == s) ++count;
    }
    out << " injuries " << count;
    for (const auto& inj : run.injuries) {
      if (inj.stage == s) out << " " << inj.injured << ":" << inj.cause;
    }
    out << "\n";
  }
  out << "certificates " << run.certificates.size() << "\n";
  for (const auto& cert : run.certificates) {
    out << "cert " << cert.slot << " stage " << cert.stage << " witness " << cert.witness.size();
    for (Nat w : cert.witness) out << " " << w;
    out << " guard " << to_hex(f.request_bytes(cert.guard)) << " "
        << (cert.withdrawn ? "withdrawn" : "live") << "\n";
  }
  out << "stabilization " << run.last_change.size();
  for (std::size_t i = 0; i < run.last_change.size(); ++i)
    out << " " << i << ":" << run.last_change[i];
  out << "\n";
  out << "end\n";
  return out.str();
}

// Header fields needed to rebuild the framework before the typed parse.
struct RunHeader {
  std::string framework_id;
  std::vector<Nat> enumeration;
};

inline RunHeader peek_run_header(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "run-format 1")
    throw_error(ErrKind::parse, "run file: unsupported format header");
  RunHeader header;
  {
    if (!std::getline(in, line)) throw_error(ErrKind::parse, "run file: truncated header");
    std::istringstream row(line);
    std::string tag;
    if (!(row >> tag >> header.framework_id) || tag != "framework")
      throw_error(ErrKind::parse, "run file: missing framework line");
  }
  {
    if (!std::getline(in, line)) throw_error(ErrKind::parse, "run file: truncated header");
    std::istringstream row(line);
    std::string tag;
    std::size_t count = 0;
    if (!(row >> tag >> count) || tag != "enumeration")
      throw_error(ErrKind::parse, "run file: missing enumeration line");
    for (std::size_t i = 0; i < count; ++i) {
      Nat v = 0;
      if (!(row >> v)) throw_error(ErrKind::parse, "run file: short enumeration line");
      header.enumeration.push_back(v);
    }
  }
  return header;
}

template <Framework F>
Run<F> run_from_text(const F& f, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next_line = [&](std::string_view what) -> std::string {
    if (!std::getline(in, line))
      throw_error(ErrKind::parse, "run file: truncated, wanted " + std::string(what));
    return line;
  };
  auto parse_hex = [&](const std::string& hex, std::string_view what) -> Bytes {
    Bytes out;
    if (!from_hex(hex, out))
      throw_error(ErrKind::parse, "run file: bad hex in " + std::string(what));
    return out;
  };

  if (next_line("header") != "run-format 1")
    throw_error(ErrKind::parse, "run file: unsupported format header");
  Run<F> run;
  {
    std::istringstream row(next_line("framework"));
    std::string tag;
    if (!(row >> tag >> run.framework_id) || tag != "framework")
      throw_error(ErrKind::parse, "run file: missing framework line");
    if (run.framework_id != f.id())
      throw_error(ErrKind::parse,
                  "run file: framework mismatch, file has " + run.framework_id);
  }
  {
    std::istringstream row(next_line("enumeration"));
    std::string tag;
    std::size_t count = 0;
    if (!(row >> tag >> count) || tag != "enumeration")
      throw_error(ErrKind::parse, "run file: missing enumeration line");
    for (std::size_t i = 0; i < count; ++i) {
      Nat v = 0;
      if (!(row >> v)) throw_error(ErrKind::parse, "run file: short enumeration line");
      run.enumeration.push_back(v);
    }
  }
  {
    std::istringstream row(next_line("universe-hash"));
    std::string tag, hex;
    if (!(row >> tag >> hex) || tag != "universe-hash" || hex.size() != 16)
      throw_error(ErrKind::parse, "run file: missing universe hash");
    Bytes raw = parse_hex(hex, "universe hash");
    run.universe_hash = 0;
    for (unsigned char c : raw) run.universe_hash = (run.universe_hash << 8) | c;
  }
  auto read_nat_field = [&](std::string_view tag_want) -> Nat {
    std::istringstream row(next_line(tag_want));
    std::string tag;
    Nat value = 0;
    if (!(row >> tag >> value) || tag != tag_want)
      throw_error(ErrKind::parse, "run file: missing " + std::string(tag_want) + " line");
    return value;
  };
  run.config.horizon = read_nat_field("horizon");
  run.config.quiescence = read_nat_field("quiescence");
  run.config.search_bound = read_nat_field("search-bound");
  const Nat strategy_count = read_nat_field("strategies");
  for (Nat i = 0; i < strategy_count; ++i) {
    std::istringstream row(next_line("strategy"));
    std::string tag;
    std::size_t slot = 0;
    if (!(row >> tag >> slot) || tag != "strategy" || slot != i)
      throw_error(ErrKind::parse, "run file: bad strategy line");
    std::string rest;
    std::getline(row, rest);
    run.strategies.push_back(StrategyKind::parse(rest));
  }
  const Nat stage_count = read_nat_field("stages");
  for (Nat s = 0; s < stage_count; ++s) {
    std::istringstream row(next_line("stage"));
    std::string tag, word;
    Nat stage = 0;
    if (!(row >> tag >> stage) || tag != "stage" || stage != s)
      throw_error(ErrKind::parse, "run file: bad stage line");
    std::size_t chain_len = 0;
    if (!(row >> word >> chain_len) || word != "chain")
      throw_error(ErrKind::parse, "run file: stage line missing chain");
    std::vector<typename F::Request> chain;
    for (std::size_t i = 0; i < chain_len; ++i) {
      std::string hex;
      if (!(row >> hex)) throw_error(ErrKind::parse, "run file: short chain");
      chain.push_back(f.request_from_bytes(parse_hex(hex, "chain request")));
    }
    std::string item_hex;
    if (!(row >> word >> item_hex) || word != "item")
      throw_error(ErrKind::parse, "run file: stage line missing item");
    run.items.push_back(f.item_from_bytes(parse_hex(item_hex, "stage item")));
    run.chains.push_back(std::move(chain));
    std::size_t injury_count = 0;
    if (!(row >> word >> injury_count) || word != "injuries")
      throw_error(ErrKind::parse, "run file: stage line missing injuries");
    for (std::size_t i = 0; i < injury_count; ++i) {
      std::string cell;
      if (!(row >> cell)) throw_error(ErrKind::parse, "run file: short injury list");
      const auto colon = cell.find(':');
      if (colon == std::string::npos)
        throw_error(ErrKind::parse, "run file: injury must be injured:cause");
      try {
        run.injuries.push_back(
            {s, std::stoull(cell.substr(0, colon)), std::stoull(cell.substr(colon + 1))});
      } catch (...) {
        throw_error(ErrKind::parse, "run file: bad injury cell '" + cell + "'");
      }
    }
  }
  const Nat cert_count = read_nat_field("certificates");
  for (Nat i = 0; i < cert_count; ++i) {
    std::istringstream row(next_line("cert"));
    std::string tag, word;
    RunCertificate<F> cert;
    if (!(row >> tag >> cert.slot) || tag != "cert")
      throw_error(ErrKind::parse, "run file: bad cert line");
    if (!(row >> word >> cert.stage) || word != "stage")
      throw_error(ErrKind::parse, "run file: cert line missing stage");
    std::size_t witness_count = 0;
    if (!(row >> word >> witness_count) || word != "witness")
      throw_error(ErrKind::parse, "run file: cert line missing witness");
    for (std::size_t w = 0; w < witness_count; ++w) {
      Nat value = 0;
      if (!(row >> value)) throw_error(ErrKind::parse, "run file: short witness list");
      cert.witness.push_back(value);
    }
    std::string guard_hex, liveness;
    if (!(row >> word >> guard_hex >> liveness) || word != "guard" ||
        (liveness != "live" && liveness != "withdrawn"))
      throw_error(ErrKind::parse, "run file: cert line missing guard or liveness");
    cert.guard = f.request_from_bytes(parse_hex(guard_hex, "cert guard"));
    cert.withdrawn = liveness == "withdrawn";
    if (cert.slot >= run.strategies.size())
      throw_error(ErrKind::parse, "run file: cert slot out of range");
    cert.requirement_id = run.strategies[cert.slot].requirement_id();
    run.certificates.push_back(std::move(cert));
  }
  {
    std::istringstream row(next_line("stabilization"));
    std::string tag;
    std::size_t count = 0;
    if (!(row >> tag >> count) || tag != "stabilization" || count != run.strategies.size())
      throw_error(ErrKind::parse, "run file: bad stabilization line");
    run.last_change.assign(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
      std::string cell;
      if (!(row >> cell)) throw_error(ErrKind::parse, "run file: short stabilization list");
      const auto colon = cell.find(':');
      if (colon == std::string::npos)
        throw_error(ErrKind::parse, "run file: stabilization must be slot:stage");
      try {
        const std::size_t slot = std::stoull(cell.substr(0, colon));
        if (slot != i) throw_error(ErrKind::parse, "run file: stabilization slots out of order");
        run.last_change[i] = std::stoull(cell.substr(colon + 1));
      } catch (const EngineError&) {
        throw;
      } catch (...) {
        throw_error(ErrKind::parse, "run file: bad stabilization cell '" + cell + "'");
      }
    }
  }
  if (next_line("end") != "end") throw_error(ErrKind::parse, "run file: missing end marker");
  return run;
}

}  // namespace prio
