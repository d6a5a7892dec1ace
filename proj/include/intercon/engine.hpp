#pragma once

// Round loop: a solve phase finds a local firing, an update phase rewrites
// ephemeral constraints and talks to external primitives.

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "intercon/locality.hpp"
#include "intercon/network.hpp"
#include "intercon/protocol.hpp"

namespace intercon {

struct RoundRecord {
  std::size_t round = 0;
  Assignment firing;
  std::vector<std::string> touched;
  std::vector<std::pair<std::string, std::string>> eps_updates;  // primitive, new eps
  std::vector<std::string> ext;                                  // resolutions
  std::vector<Region> regions;
};

/// `round=<m> firing={...} touched=[...] eps_updates=[p:eps,...] ext=[sym:value,...]`
std::string to_string(const RoundRecord& r);

struct EngineOptions {
  SearchOptions search;
  /// Called after every solve phase with the configuration it solved.
  std::function<void(const Configuration&, const LocalFiring&, const Interpretation&)> on_solved;
};

class Engine {
 public:
  explicit Engine(Network net, EngineOptions opts = {});

  /// Routes external symbols and update exchanges through `hub`.
  void attach(std::shared_ptr<ExternalHub> hub);
  const std::shared_ptr<ExternalHub>& hub() const { return hub_; }

  const Network& network() const { return net_; }
  const Interpretation& interpretation() const { return net_.interp; }
  Configuration configuration() const { return intercon::configuration(net_); }
  std::size_t round() const { return round_; }

  LocalFiring solve();
  RoundRecord update(const LocalFiring& firing);
  RoundRecord step();
  std::vector<RoundRecord> run(std::size_t rounds,
                               const std::function<void(const RoundRecord&)>& each = {});

 private:
  Network net_;
  EngineOptions opts_;
  std::shared_ptr<ExternalHub> hub_;
  std::size_t round_ = 1;
};

}  // namespace intercon
