#pragma once

// Line-delimited JSON exchanges with external primitives, and the resolver
// that routes external symbols to their owners.

#include <chrono>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "intercon/interpretation.hpp"
#include "intercon/network.hpp"

namespace intercon {

using Json = nlohmann::ordered_json;

/// Resolution timeout: INTERCON_TIMEOUT_MS if set, 30 s otherwise.
std::chrono::milliseconds default_timeout();

class Endpoint {
 public:
  virtual ~Endpoint() = default;
  /// Sends one request and waits for its reply. nullopt on timeout; throws
  /// ProtocolError when the transport fails.
  virtual std::optional<Json> request(const Json& req, std::chrono::milliseconds timeout) = 0;
};

/// `proc:<command>`, `tcp:<host>:<port>` or `console:`.
std::shared_ptr<Endpoint> make_endpoint(const std::string& spec);

/// Child process run through `sh -c`, talking over its stdin/stdout.
class ProcEndpoint : public Endpoint {
 public:
  explicit ProcEndpoint(std::string command);
  ~ProcEndpoint() override;
  std::optional<Json> request(const Json& req, std::chrono::milliseconds timeout) override;

 private:
  void start();
  std::string command_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  int stale_ = 0;
};

class TcpEndpoint : public Endpoint {
 public:
  TcpEndpoint(std::string host, int port);
  ~TcpEndpoint() override;
  std::optional<Json> request(const Json& req, std::chrono::milliseconds timeout) override;

 private:
  std::string host_;
  int port_;
  int fd_ = -1;
  std::string buffer_;
  int stale_ = 0;
};

/// A person answering on a terminal: y/n for predicates, a term for
/// functions, a formula or λ for constraints and updates. An empty line or
/// end of input refuses.
class ConsoleEndpoint : public Endpoint {
 public:
  ConsoleEndpoint(std::istream& in, std::ostream& out);
  std::optional<Json> request(const Json& req, std::chrono::milliseconds timeout) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

/// Prompt shown by the console endpoint for a request, e.g. `UserAppr(d1)? [y/n]`.
std::string console_prompt(const Json& req);

/// In-process endpoint backed by a function; used by tests and embedders.
class FunctionEndpoint : public Endpoint {
 public:
  using Handler = std::function<std::optional<Json>(const Json&)>;
  explicit FunctionEndpoint(Handler h) : handler_(std::move(h)) {}
  std::optional<Json> request(const Json& req, std::chrono::milliseconds) override {
    return handler_(req);
  }

 private:
  Handler handler_;
};

/// Routes requests for external symbols to their owners and performs the
/// update exchanges. Requests to one primitive are serialized; requests to
/// distinct primitives may overlap.
class ExternalHub : public ExternalResolver {
 public:
  ExternalHub(const Network& net, std::chrono::milliseconds timeout = default_timeout());

  void connect(const std::string& prim, std::shared_ptr<Endpoint> endpoint);
  /// Connects every external primitive through its `endpoint=` spec. Throws
  /// LoadError when one is missing.
  void connect_all();
  bool connected(const std::string& prim) const;

  std::optional<bool> predicate(const std::string& sym,
                                const std::vector<GroundTerm>& args) override;
  std::optional<GroundTerm> function(const std::string& sym,
                                     const std::vector<GroundTerm>& args) override;
  std::optional<Lambda> constraint(const std::string& sym) override;

  /// Sends the bound communication variables owned by `prim` and returns the
  /// new ephemeral constraint, or nullopt when the primitive refuses or times
  /// out.
  std::optional<Formula> update(const std::string& prim,
                                const std::map<std::string, GroundTerm>& comm);

  /// Every request and reply so far, as `prim> {...}` / `prim< {...}` lines.
  std::vector<std::string> wire_log() const;

 private:
  struct Link {
    std::shared_ptr<Endpoint> endpoint;
    std::mutex mu;
  };

  std::optional<Json> exchange(const std::string& owner_key, const Json& req);
  std::optional<Json> send(const std::string& prim, const Json& req);
  const std::string& owner(const std::string& key) const;

  const Network& net_;
  std::chrono::milliseconds timeout_;
  std::map<std::string, std::unique_ptr<Link>> links_;
  mutable std::mutex log_mu_;
  std::vector<std::string> log_;
};

}  // namespace intercon
