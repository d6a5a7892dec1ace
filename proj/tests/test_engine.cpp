#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "intercon/engine.hpp"
#include "intercon/netdsl.hpp"
#include "intercon/oracle.hpp"
#include "support/gen.hpp"

using namespace intercon;

namespace {

Network fixture(const char* name) { return load_network(gen::source_path(std::string("nets/") + name)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Formula& eps_of(const Engine& e, const char* id) { return e.network().find(id)->eps; }

// Answers every predicate with yes and every update with `eps`.
std::shared_ptr<Endpoint> agreeable(std::string eps, std::vector<Json>* seen = nullptr) {
  return std::make_shared<FunctionEndpoint>([eps, seen](const Json& req) -> std::optional<Json> {
    if (seen) seen->push_back(req);
    if (req.at("op") == "pred") return Json{{"ok", true}, {"value", true}};
    if (req.at("op") == "update") return Json{{"ok", true}, {"value", eps}};
    return Json{{"ok", false}, {"reason", "unscripted"}};
  });
}

// Every solve phase: the firing extended with idle blocks is an
// oracle-verified simple firing of the whole configuration.
struct SoundnessCheck {
  Universe universe;
  int rounds = 0;
  std::vector<std::string> failures;

  EngineOptions options() {
    EngineOptions opts;
    opts.on_solved = [this](const Configuration& cfg, const LocalFiring& lf, const Interpretation& interp) {
      ++rounds;
      std::set<std::size_t> cells;
      std::set<Var> vars;
      for (std::size_t i = 0; i < cfg.size(); ++i) {
        cells.insert(i);
        vars.insert(cfg[i].free.begin(), cfg[i].free.end());
      }
      auto star = extend_to_global(lf.assignment, lf.touched, cfg, interp, universe);
      if (!star) {
        failures.push_back("no extension of " + to_string(lf.assignment));
        return;
      }
      for (const auto& b : *star)
        if (!lf.assignment.contains(b.var) && !is_idle({b}))
          failures.push_back("non-idle addition in " + to_string(*star));
      if (!oracle::is_simple_firing(*star, merged_formula(cfg, cells), interp, vars))
        failures.push_back("oracle rejects " + to_string(*star));
    };
    return opts;
  }
};

}  // namespace

TEST(Engine, FifoChainMatchesTheGoldenTrace) {
  Engine e(fixture("fifo_chain.net"));
  std::string out;
  for (const auto& r : e.run(2)) out += to_string(r) + "\n";
  EXPECT_EQ(out, read_file(gen::source_path("tests/data/fifo_chain.trace")));
}

TEST(Engine, FifoFillsThenDrains) {
  Engine e(fixture("fifo_chain.net"));
  EXPECT_TRUE(equal(eps_of(e, "fifo"), parse_formula("state.fifo = empty")));
  RoundRecord r1 = e.step();
  ASSERT_TRUE(r1.firing.term(Var::dataflow("a")));
  EXPECT_EQ(*r1.firing.term(Var::dataflow("a")), GroundTerm("d1"));
  EXPECT_TRUE(equal(eps_of(e, "fifo"), parse_formula("state.fifo = full(d1)")));
  RoundRecord r2 = e.step();
  ASSERT_TRUE(r2.firing.term(Var::dataflow("b")));
  EXPECT_EQ(*r2.firing.term(Var::dataflow("b")), GroundTerm("d1"));
  EXPECT_EQ(r2.firing.sync("a"), std::optional<bool>(false));
  EXPECT_TRUE(equal(eps_of(e, "fifo"), parse_formula("state.fifo = empty")));
  EXPECT_EQ(e.round(), 3u);
}

TEST(Engine, ZeroRoundsDoNothing) {
  Engine e(fixture("fifo_chain.net"));
  EXPECT_TRUE(e.run(0).empty());
  EXPECT_EQ(e.round(), 1u);
}

TEST(Engine, FifoBeforeASinkStaysFull) {
  Engine e(fixture("approval_fifo.net"));
  auto hub = std::make_shared<ExternalHub>(e.network());
  std::vector<Json> seen;
  hub->connect("user", agreeable("true", &seen));
  e.attach(hub);
  auto records = e.run(3);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].firing.sync("c"), std::optional<bool>(true));
  Formula full = eps_of(e, "fifo");
  EXPECT_EQ(free_vars(full), (std::set<Var>{Var::state("fifo")}));
  EXPECT_NE(to_string(full).find("full("), std::string::npos);
  EXPECT_TRUE(records[1].touched.empty());
  EXPECT_TRUE(records[2].touched.empty());
  EXPECT_TRUE(equal(eps_of(e, "fifo"), full));
  EXPECT_EQ(std::count_if(seen.begin(), seen.end(), [](const Json& j) { return j.at("op") == "update"; }), 1);
}

TEST(Engine, ExternalEntriesAreForgottenAfterEachRound) {
  Engine e(fixture("approval_fifo.net"));
  auto hub = std::make_shared<ExternalHub>(e.network());
  hub->connect("user", agreeable("true"));
  e.attach(hub);
  RoundRecord r = e.step();
  EXPECT_FALSE(r.ext.empty());
  EXPECT_TRUE(e.interpretation().external_empty());
}

TEST(Engine, InvalidEpsReplyKeepsTheOldOne) {
  Engine e(fixture("approval_fifo.net"));
  auto hub = std::make_shared<ExternalHub>(e.network());
  hub->connect("user", agreeable("c & zzz"));
  e.attach(hub);
  Formula before = eps_of(e, "user");
  RoundRecord r = e.step();
  EXPECT_TRUE(equal(eps_of(e, "user"), before));
  for (const auto& [p, eps] : r.eps_updates) EXPECT_NE(p, "user");
}

TEST(Engine, EpsReplyBreakingTheNoFlowAxiomIsRejected) {
  Engine e(fixture("approval_fifo.net"));
  auto hub = std::make_shared<ExternalHub>(e.network());
  hub->connect("user", agreeable("c"));
  e.attach(hub);
  Formula before = eps_of(e, "user");
  e.step();
  EXPECT_TRUE(equal(eps_of(e, "user"), before));
}

TEST(Engine, LossyMergeFirstPolicyEmitsALocalFiring) {
  EngineOptions opts;
  opts.search.policy = MergePolicy::first;
  Engine e(fixture("lossy_merge.net"), opts);
  auto all = enumerate_local_firings(e.configuration(), e.interpretation(), e.network().universe);
  RoundRecord r = e.step();
  EXPECT_NE(std::find(all.begin(), all.end(), r.firing), all.end()) << to_string(r.firing);
}

TEST(Engine, TraceLineFormat) {
  RoundRecord r;
  r.round = 4;
  r.firing = {{Var::sync("a"), true}};
  r.touched = {"x", "y"};
  r.eps_updates = {{"fifo", "state.fifo = empty"}};
  r.ext = {"ok(d1):true"};
  EXPECT_EQ(to_string(r), "round=4 firing={a=true} touched=[x,y] eps_updates=[fifo:state.fifo = empty] ext=[ok(d1):true]");
}

TEST(EngineProperties, EveryRoundIsSound) {
  for (const char* name : {"fifo_chain.net", "lossy_merge.net", "approval_fifo.net", "filter.net"}) {
    Network net = fixture(name);
    SoundnessCheck check{net.universe};
    Engine e(std::move(net), check.options());
    if (e.network().find("user")) {
      auto hub = std::make_shared<ExternalHub>(e.network());
      hub->connect("user", agreeable("true"));
      e.attach(hub);
    }
    e.run(3);
    EXPECT_EQ(check.rounds, 3) << name;
    EXPECT_TRUE(check.failures.empty()) << name << ": " << check.failures.front();
  }
}
