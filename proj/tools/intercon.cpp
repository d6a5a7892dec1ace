// Command-line driver: load and check networks, list firings, run rounds.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "intercon/classical.hpp"
#include "intercon/embeddings.hpp"
#include "intercon/engine.hpp"
#include "intercon/locality.hpp"
#include "intercon/netdsl.hpp"
#include "intercon/oracle.hpp"
#include "intercon/partial.hpp"
#include "intercon/protocol.hpp"
#include "intercon/simple.hpp"

using namespace intercon;

namespace {

constexpr int kLoadFailure = 1;
constexpr int kProtocolFailure = 2;
constexpr int kNoFiring = 3;
constexpr int kCheckFailure = 4;

bool has_external(const Network& net) {
  for (const auto& p : net.primitives)
    if (p.kind == PrimitiveKind::external) return true;
  return false;
}

std::shared_ptr<ExternalHub> connect(const Network& net) {
  if (!has_external(net)) return nullptr;
  auto hub = std::make_shared<ExternalHub>(net);
  hub->connect_all();
  return hub;
}

std::set<std::size_t> select_blocks(const Network& net, const std::string& ids) {
  std::set<std::size_t> cells;
  if (ids.empty()) {
    for (std::size_t i = 0; i < net.primitives.size(); ++i) cells.insert(i);
    return cells;
  }
  std::stringstream ss(ids);
  std::string id;
  while (std::getline(ss, id, ',')) {
    bool found = false;
    for (std::size_t i = 0; i < net.primitives.size(); ++i)
      if (net.primitives[i].id == id) {
        cells.insert(i);
        found = true;
      }
    if (!found) throw LoadError("no primitive named '" + id + "'");
  }
  return cells;
}

// ρ ∧ ε of the selected primitives and their declared variables.
std::pair<Formula, std::set<Var>> plain(const Network& net, const std::set<std::size_t>& cells) {
  std::vector<Formula> parts;
  std::set<Var> vars;
  for (auto i : cells) {
    parts.push_back(plain_formula(net.primitives[i]));
    vars.insert(net.primitives[i].vars.begin(), net.primitives[i].vars.end());
  }
  return {fm::conj(parts), vars};
}

MergePolicy parse_policy(const std::string& s) {
  return s == "first" ? MergePolicy::first : MergePolicy::max;
}

int cmd_check(const std::string& path, bool classical) {
  Network net = load_network(path);
  if (classical) require_total_tables(net);
  std::cout << "ok: " << net.primitives.size() << " primitives, " << net.ownership.size()
            << " owned symbols\n";
  return 0;
}

int cmd_firings(const std::string& path, const std::string& mode, const std::string& blocks) {
  Network net = load_network(path);
  auto hub = connect(net);
  if (hub) net.interp.attach(hub);
  auto cells = select_blocks(net, blocks);
  std::vector<Assignment> out;
  if (mode == "classical") {
    require_total_tables(net);
    auto [psi, vars] = plain(net, cells);
    out = enumerate_classical_firings(psi, net.interp, net.universe.classical(), vars);
  } else if (mode == "partial") {
    auto [psi, vars] = plain(net, cells);
    out = enumerate_partial_firings(psi, net.interp, net.universe.partial(), vars);
  } else if (mode == "simple") {
    auto cfg = configuration(net);
    out = simple_firings(merged_formula(cfg, cells), net.interp, net.universe).items();
  } else {
    auto cfg = configuration(net);
    if (blocks.empty()) {
      out = enumerate_local_firings(cfg, net.interp, net.universe);
    } else {
      out = local_firings_block(cfg, cells, net.interp, net.universe);
    }
  }
  std::set<Assignment> sorted(out.begin(), out.end());
  for (const auto& a : sorted) std::cout << to_string(a) << '\n';
  return 0;
}

int cmd_solve(const std::string& path, const std::string& policy) {
  Engine engine(load_network(path), EngineOptions{{parse_policy(policy), 0}, {}});
  if (auto hub = connect(engine.network())) engine.attach(hub);
  LocalFiring lf = engine.solve();
  auto cfg = engine.configuration();
  std::cout << "firing=" << to_string(lf.assignment) << '\n';
  for (const auto& r : lf.regions) {
    std::cout << "region=[";
    for (std::size_t i = 0; i < r.blocks.size(); ++i)
      std::cout << (i ? "," : "") << cfg[r.blocks[i]].id;
    std::cout << "] " << to_string(r.assignment) << '\n';
  }
  return lf.touched.empty() ? kNoFiring : 0;
}

int cmd_run(const std::string& path, std::size_t rounds, const std::string& policy,
            const std::string& trace) {
  Engine engine(load_network(path), EngineOptions{{parse_policy(policy), 0}, {}});
  if (auto hub = connect(engine.network())) engine.attach(hub);
  std::ofstream file;
  if (!trace.empty()) {
    file.open(trace);
    if (!file) throw LoadError("cannot write " + trace);
  }
  engine.run(rounds, [&](const RoundRecord& r) {
    std::string line = to_string(r);
    std::cout << line << '\n' << std::flush;
    if (file) file << line << '\n' << std::flush;
  });
  return 0;
}

// Embedding properties on every primitive formula without external symbols.
int cmd_embed(const std::string& path) {
  Network net = load_network(path);
  std::size_t violations = 0;
  auto report = [&](const std::string& id, const std::string& what, const Assignment& s) {
    ++violations;
    std::cout << id << ": " << what << ' ' << to_string(s) << '\n';
  };
  Universe cu = net.universe.classical();
  Universe pu = net.universe.partial();
  for (const auto& p : net.primitives) {
    Formula psi = plain_formula(p);
    if (has_externals(psi) || !external_symbols(psi).empty()) {
      std::cout << p.id << ": skipped (external symbols)\n";
      continue;
    }
    std::set<Var> vars = flow_closure(p.vars);
    bool flow_only = std::all_of(vars.begin(), vars.end(), [](const Var& v) { return v.is_flow(); });
    bool total = flow_only && interpretation_total(psi, net.interp, cu);
    auto partial = enumerate_partial_firings(psi, net.interp, pu, vars);
    std::size_t checked = 0;
    if (total && !mentions_noflow(psi)) {
      auto recoded = enumerate_partial_firings(psi, net.interp.recoded(), pu, vars);
      std::set<Assignment> recoded_set(recoded.begin(), recoded.end());
      for (const auto& s : enumerate_classical_firings(psi, net.interp, cu, vars)) {
        ++checked;
        if (!recoded_set.count(classical_to_partial(s))) report(p.id, "classical to partial", s);
      }
      auto classical = enumerate_classical_firings(psi, net.interp, cu, vars);
      std::set<Assignment> classical_set(classical.begin(), classical.end());
      for (const auto& s : partial) {
        ++checked;
        if (!classical_set.count(partial_to_classical(s, vars, cu)))
          report(p.id, "partial to classical", s);
      }
    }
    Formula psi_p = to_partial(psi);
    for (const auto& s : partial) {
      ++checked;
      if (!minimize_to_simple(s, psi, net.interp, pu)) report(p.id, "no simple subset", s);
    }
    for (const auto& s : simple_firings(psi, net.interp, pu, vars)) {
      ++checked;
      if (partial_eval(extend_p(s), net.interp, psi_p) != Truth3::sat || !mfa_check(extend_p(s)))
        report(p.id, "simple to partial", s);
    }
    std::cout << p.id << ": " << checked << " checks\n";
  }
  std::cout << (violations ? "FAIL" : "ok") << ": " << violations << " violations\n";
  return violations ? kCheckFailure : 0;
}

int cmd_oracle_diff(const std::string& path) {
  Network net = load_network(path);
  std::size_t divergent = 0;
  auto compare = [&](const std::string& what, auto main_path, auto reference) {
    try {
      std::vector<Assignment> a = main_path();
      std::set<Assignment> sa(a.begin(), a.end());
      std::vector<Assignment> b = reference();
      std::set<Assignment> sb(b.begin(), b.end());
      if (sa == sb) {
        std::cout << what << ": " << sa.size() << " firings, same\n";
        return;
      }
      ++divergent;
      std::cout << what << ": DIFFERENT\n";
      for (const auto& s : sa)
        if (!sb.count(s)) std::cout << "  main only   " << to_string(s) << '\n';
      for (const auto& s : sb)
        if (!sa.count(s)) std::cout << "  oracle only " << to_string(s) << '\n';
    } catch (const oracle::Refusal& e) {
      std::cout << what << ": skipped (" << e.what() << ")\n";
    }
  };
  Universe cu = net.universe.classical();
  Universe pu = net.universe.partial();
  auto cfg = configuration(net);
  bool any_external = false;
  for (std::size_t i = 0; i < net.primitives.size(); ++i) {
    const auto& p = net.primitives[i];
    Formula psi = plain_formula(p);
    if (!external_symbols(block_formula(p)).empty()) {
      any_external = true;
      std::cout << p.id << ": skipped (external symbols)\n";
      continue;
    }
    std::set<Var> vars = flow_closure(p.vars);
    if (interpretation_total(psi, net.interp, cu)) {
      compare("classical " + p.id,
              [&] { return enumerate_classical_firings(psi, net.interp, cu, vars); },
              [&] { return oracle::classical_firings(psi, net.interp, cu, vars); });
    }
    compare("partial " + p.id,
            [&] { return enumerate_partial_firings(psi, net.interp, pu, vars); },
            [&] { return oracle::partial_firings(psi, net.interp, pu, vars); });
    compare("simple " + p.id,
            [&] { return simple_firings(cfg[i].formula, net.interp, pu).items(); },
            [&] { return oracle::simple_firings(cfg[i].formula, net.interp, pu); });
  }
  if (any_external) {
    std::cout << "local: skipped (external symbols)\n";
  } else {
    compare("local", [&] { return enumerate_local_firings(cfg, net.interp, net.universe); },
            [&] { return oracle::local_firings(cfg, net.interp, net.universe); });
  }
  std::cout << (divergent ? "FAIL" : "ok") << ": " << divergent << " divergent\n";
  return divergent ? kCheckFailure : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint-based coordination engine"};
  app.require_subcommand(1);

  std::string net_path, mode = "simple", blocks, policy = "max", trace;
  std::size_t rounds = 1;
  bool classical = false, embed_check = false;

  auto* check = app.add_subcommand("check", "Load a network and verify its invariants");
  check->add_option("net", net_path)->required();
  check->add_flag("--classical", classical, "Also require total predicate tables");

  auto* firings = app.add_subcommand("firings", "List the firings of a network");
  firings->add_option("net", net_path)->required();
  firings->add_option("--mode", mode)
      ->check(CLI::IsMember({"classical", "partial", "simple", "local"}));
  firings->add_option("--block", blocks, "Comma-separated primitive ids");

  auto* solve = app.add_subcommand("solve", "Run one solve phase");
  solve->add_option("net", net_path)->required();
  solve->add_option("--policy", policy)->check(CLI::IsMember({"first", "max"}));

  auto* run = app.add_subcommand("run", "Run the engine for a number of rounds");
  run->add_option("net", net_path)->required();
  run->add_option("--rounds", rounds);
  run->add_option("--policy", policy)->check(CLI::IsMember({"first", "max"}));
  run->add_option("--trace", trace, "Also write the trace to this file");

  auto* embed = app.add_subcommand("embed", "Check the embedding properties on a network");
  embed->add_option("net", net_path)->required();
  embed->add_flag("--check", embed_check);

  auto* diff = app.add_subcommand("oracle-diff", "Compare firing sets with the oracle");
  diff->add_option("net", net_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(net_path, classical);
    if (firings->parsed()) return cmd_firings(net_path, mode, blocks);
    if (solve->parsed()) return cmd_solve(net_path, policy);
    if (run->parsed()) return cmd_run(net_path, rounds, policy, trace);
    if (embed->parsed()) return cmd_embed(net_path);
    if (diff->parsed()) return cmd_oracle_diff(net_path);
  } catch (const ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << '\n';
    return kProtocolFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kLoadFailure;
  }
  return 0;
}
