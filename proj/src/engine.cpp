#include "intercon/engine.hpp"

#include <future>

#include <spdlog/spdlog.h>

namespace intercon {

namespace {

template <typename T, typename F>
std::string join(const std::vector<T>& items, F fmt) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ',';
    s += fmt(items[i]);
  }
  return s;
}

bool carried_flow(const Primitive& p, const Assignment& s) {
  for (const auto& v : p.vars) {
    if (v.is_sync() && s.sync(v.name) == std::optional<bool>(true)) return true;
    if (v.kind == VarKind::dataflow && s.contains(v)) return true;
  }
  return false;
}

}  // namespace

std::string to_string(const RoundRecord& r) {
  return "round=" + std::to_string(r.round) + " firing=" + to_string(r.firing) + " touched=[" +
         join(r.touched, [](const std::string& s) { return s; }) + "] eps_updates=[" +
         join(r.eps_updates, [](const auto& u) { return u.first + ":" + u.second; }) + "] ext=[" +
         join(r.ext, [](const std::string& s) { return s; }) + "]";
}

Engine::Engine(Network net, EngineOptions opts) : net_(std::move(net)), opts_(std::move(opts)) {}

void Engine::attach(std::shared_ptr<ExternalHub> hub) {
  hub_ = std::move(hub);
  net_.interp.attach(hub_);
}

LocalFiring Engine::solve() {
  Configuration cfg = configuration();
  LocalFiring lf = find_local_firing(cfg, net_.interp, net_.universe, opts_.search);
  if (opts_.on_solved) opts_.on_solved(cfg, lf, net_.interp);
  return lf;
}

RoundRecord Engine::update(const LocalFiring& firing) {
  Configuration cfg = configuration();
  RoundRecord rec;
  rec.round = round_;
  rec.firing = firing.assignment;
  rec.regions = firing.regions;
  for (auto i : firing.touched) rec.touched.push_back(cfg.at(i).id);
  const Assignment& s = firing.assignment;

  std::vector<std::string> changed;
  for (auto& p : net_.primitives) {
    if (p.kind != PrimitiveKind::stateful) continue;
    const GroundTerm* next = s.term(Var::state_next(p.id));
    if (!next) continue;
    Formula eps = fm::eq(term::var(Var::state(p.id)), term::ground(*next));
    if (equal(eps, p.eps)) continue;
    p.eps = eps;
    changed.push_back(p.id);
    rec.eps_updates.emplace_back(p.id, to_string(eps));
  }

  struct Pending {
    Primitive* prim;
    std::future<std::optional<Formula>> reply;
  };
  std::vector<Pending> pending;
  for (auto& p : net_.primitives) {
    if (p.kind != PrimitiveKind::external) continue;
    std::map<std::string, GroundTerm> comm;
    for (const auto& key : p.owned) {
      if (key[0] != '$') continue;
      if (const GroundTerm* v = s.term(Var::comm(key.substr(1)))) comm[key.substr(1)] = *v;
    }
    if (comm.empty() && !carried_flow(p, s)) continue;
    if (!hub_) {
      spdlog::warn("round {}: no endpoint for '{}'; its eps is kept", round_, p.id);
      continue;
    }
    auto hub = hub_;
    std::string id = p.id;
    pending.push_back({&p, std::async(std::launch::async, [hub, id, comm] {
                         return hub->update(id, comm);
                       })});
  }
  for (auto& [p, fut] : pending) {
    std::optional<Formula> eps;
    try {
      eps = fut.get();
    } catch (const ProtocolError& e) {
      spdlog::warn("round {}: update of '{}' failed: {}; its eps is kept", round_, p->id, e.what());
      continue;
    }
    if (!eps) {
      spdlog::warn("round {}: '{}' sent no new eps; it is kept", round_, p->id);
      continue;
    }
    if (auto m = check_ephemeral(*p, *eps); !m.empty()) {
      spdlog::warn("round {}: rejected eps from '{}': {}", round_, p->id, m);
      continue;
    }
    bool no_flow = false;
    try {
      no_flow = check_no_flow_axiom(make_block(p->id, block_formula(*p, *eps)), net_.interp,
                                    net_.universe);
    } catch (const Error& e) {
      spdlog::warn("round {}: cannot check eps from '{}': {}", round_, p->id, e.what());
      continue;
    }
    if (!no_flow) {
      spdlog::warn("round {}: rejected eps from '{}': it breaks the no-flow axiom", round_, p->id);
      continue;
    }
    if (equal(*eps, p->eps)) continue;
    p->eps = *eps;
    rec.eps_updates.emplace_back(p->id, to_string(*eps));
  }

  for (const auto& id : changed) {
    const Primitive* p = net_.find(id);
    if (!check_no_flow_axiom(make_block(p->id, block_formula(*p)), net_.interp,
                             net_.universe))
      throw Error("after round " + std::to_string(round_) + ", primitive '" + id +
                  "' violates the no-flow axiom");
  }

  rec.ext = net_.interp.resolution_log();
  net_.interp.reset_external();
  ++round_;
  return rec;
}

RoundRecord Engine::step() { return update(solve()); }

std::vector<RoundRecord> Engine::run(std::size_t rounds,
                                     const std::function<void(const RoundRecord&)>& each) {
  std::vector<RoundRecord> out;
  for (std::size_t i = 0; i < rounds; ++i) {
    out.push_back(step());
    if (each) each(out.back());
  }
  return out;
}

}  // namespace intercon
