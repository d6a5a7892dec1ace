#include "intercon/protocol.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <iostream>

#include <spdlog/spdlog.h>

#include "intercon/netdsl.hpp"

namespace intercon {

std::chrono::milliseconds default_timeout() {
  if (const char* env = std::getenv("INTERCON_TIMEOUT_MS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::chrono::milliseconds(v);
    spdlog::warn("ignoring INTERCON_TIMEOUT_MS={}", env);
  }
  return std::chrono::milliseconds(30000);
}

namespace {

void ignore_sigpipe() {
  static const bool once = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

void write_all(int fd, const std::string& s) {
  std::size_t off = 0;
  while (off < s.size()) {
    ssize_t n = ::write(fd, s.data() + off, s.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("write to endpoint failed: ") + std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
}

// Next line from fd, or nullopt once the deadline passes.
std::optional<std::string> read_line(int fd, std::string& buffer,
                                     std::chrono::steady_clock::time_point deadline) {
  while (true) {
    if (auto nl = buffer.find('\n'); nl != std::string::npos) {
      std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) return std::nullopt;
    pollfd p{fd, POLLIN, 0};
    int r = ::poll(&p, 1, static_cast<int>(left.count()));
    if (r < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("poll failed: ") + std::strerror(errno));
    }
    if (r == 0) return std::nullopt;
    char chunk[4096];
    ssize_t n = ::read(fd, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("read from endpoint failed: ") + std::strerror(errno));
    }
    if (n == 0) throw ProtocolError("endpoint closed the connection");
    buffer.append(chunk, static_cast<std::size_t>(n));
  }
}

// One request/reply round trip on a line channel. Replies that arrive after a
// timeout are skipped by the following request.
std::optional<Json> round_trip(int in_fd, int out_fd, std::string& buffer, int& stale,
                               const Json& req, std::chrono::milliseconds timeout) {
  ignore_sigpipe();
  auto deadline = std::chrono::steady_clock::now() + timeout;
  write_all(out_fd, req.dump() + "\n");
  while (true) {
    auto line = read_line(in_fd, buffer, deadline);
    if (!line) {
      ++stale;
      return std::nullopt;
    }
    if (line->empty()) continue;
    if (stale > 0) {
      --stale;
      continue;
    }
    try {
      return Json::parse(*line);
    } catch (const Json::parse_error& e) {
      throw ProtocolError("malformed reply: " + *line);
    }
  }
}

}  // namespace

ProcEndpoint::ProcEndpoint(std::string command) : command_(std::move(command)) {}

ProcEndpoint::~ProcEndpoint() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) != 0) return;
      ::usleep(10000);
    }
    ::kill(pid_, SIGTERM);
    ::waitpid(pid_, &status, 0);
  }
}

void ProcEndpoint::start() {
  int in[2], out[2];
  if (::pipe(in) != 0 || ::pipe(out) != 0)
    throw ProtocolError(std::string("pipe failed: ") + std::strerror(errno));
  pid_t pid = ::fork();
  if (pid < 0) throw ProtocolError(std::string("fork failed: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in[0], STDIN_FILENO);
    ::dup2(out[1], STDOUT_FILENO);
    ::close(in[0]);
    ::close(in[1]);
    ::close(out[0]);
    ::close(out[1]);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in[0]);
  ::close(out[1]);
  ::fcntl(in[1], F_SETFD, FD_CLOEXEC);
  ::fcntl(out[0], F_SETFD, FD_CLOEXEC);
  pid_ = pid;
  to_child_ = in[1];
  from_child_ = out[0];
}

std::optional<Json> ProcEndpoint::request(const Json& req, std::chrono::milliseconds timeout) {
  if (pid_ < 0) start();
  return round_trip(from_child_, to_child_, buffer_, stale_, req, timeout);
}

TcpEndpoint::TcpEndpoint(std::string host, int port) : host_(std::move(host)), port_(port) {}

TcpEndpoint::~TcpEndpoint() {
  if (fd_ >= 0) ::close(fd_);
}

std::optional<Json> TcpEndpoint::request(const Json& req, std::chrono::milliseconds timeout) {
  if (fd_ < 0) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    std::string port = std::to_string(port_);
    if (int rc = ::getaddrinfo(host_.c_str(), port.c_str(), &hints, &res); rc != 0)
      throw ProtocolError("cannot resolve " + host_ + ": " + ::gai_strerror(rc));
    for (addrinfo* a = res; a; a = a->ai_next) {
      int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) {
        fd_ = fd;
        break;
      }
      ::close(fd);
    }
    ::freeaddrinfo(res);
    if (fd_ < 0) throw ProtocolError("cannot connect to " + host_ + ":" + port);
  }
  return round_trip(fd_, fd_, buffer_, stale_, req, timeout);
}

namespace {

std::string args_text(const Json& args) {
  std::string s = "(";
  bool first = true;
  for (const auto& a : args) {
    if (!first) s += ',';
    first = false;
    s += a.get<std::string>();
  }
  return s + ")";
}

}  // namespace

std::string console_prompt(const Json& req) {
  const std::string op = req.at("op").get<std::string>();
  if (op == "pred") return req.at("sym").get<std::string>() + args_text(req.at("args")) + "? [y/n]";
  if (op == "fun") return req.at("sym").get<std::string>() + args_text(req.at("args")) + " = ?";
  if (op == "constr") return req.at("sym").get<std::string>() + " = ? (lambda(...).formula)";
  std::string s = "update " + req.at("prim").get<std::string>() + " {";
  bool first = true;
  for (const auto& [k, v] : req.at("comm").items()) {
    if (!first) s += ',';
    first = false;
    s += k + "=" + v.get<std::string>();
  }
  return s + "}; new eps?";
}

ConsoleEndpoint::ConsoleEndpoint(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

std::optional<Json> ConsoleEndpoint::request(const Json& req, std::chrono::milliseconds) {
  out_ << console_prompt(req) << ' ' << std::flush;
  std::string line;
  if (!std::getline(in_, line)) {
    out_ << '\n';
    return Json{{"ok", false}, {"reason", "end of input"}};
  }
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
  std::size_t b = line.find_first_not_of(" \t");
  line = b == std::string::npos ? "" : line.substr(b);
  if (line.empty()) return Json{{"ok", false}, {"reason", "no answer"}};
  if (req.at("op") == "pred") {
    if (line == "y" || line == "yes") return Json{{"ok", true}, {"value", true}};
    if (line == "n" || line == "no") return Json{{"ok", true}, {"value", false}};
    return Json{{"ok", false}, {"reason", "unrecognized answer"}};
  }
  return Json{{"ok", true}, {"value", line}};
}

std::shared_ptr<Endpoint> make_endpoint(const std::string& spec) {
  if (spec.rfind("proc:", 0) == 0) return std::make_shared<ProcEndpoint>(spec.substr(5));
  if (spec.rfind("tcp:", 0) == 0) {
    std::string rest = spec.substr(4);
    auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw LoadError("tcp endpoint needs host:port: " + spec);
    int port = 0;
    try {
      port = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw LoadError("bad port in endpoint " + spec);
    }
    return std::make_shared<TcpEndpoint>(rest.substr(0, colon), port);
  }
  if (spec == "console:") return std::make_shared<ConsoleEndpoint>(std::cin, std::cout);
  throw LoadError("unknown endpoint scheme: " + spec);
}

ExternalHub::ExternalHub(const Network& net, std::chrono::milliseconds timeout)
    : net_(net), timeout_(timeout) {}

void ExternalHub::connect(const std::string& prim, std::shared_ptr<Endpoint> endpoint) {
  const Primitive* p = net_.find(prim);
  if (!p || p->kind != PrimitiveKind::external)
    throw PreconditionError("'" + prim + "' is not an external primitive");
  auto link = std::make_unique<Link>();
  link->endpoint = std::move(endpoint);
  links_[prim] = std::move(link);
}

void ExternalHub::connect_all() {
  for (const auto& p : net_.primitives) {
    if (p.kind != PrimitiveKind::external || connected(p.id)) continue;
    if (p.endpoint.empty()) throw LoadError("external primitive '" + p.id + "' has no endpoint");
    connect(p.id, make_endpoint(p.endpoint));
  }
}

bool ExternalHub::connected(const std::string& prim) const { return links_.count(prim) > 0; }

const std::string& ExternalHub::owner(const std::string& key) const {
  auto it = net_.ownership.find(key);
  if (it == net_.ownership.end()) throw ProtocolError(key + " has no owner");
  return it->second;
}

std::optional<Json> ExternalHub::send(const std::string& prim, const Json& req) {
  auto it = links_.find(prim);
  if (it == links_.end()) throw ProtocolError("no endpoint connected for '" + prim + "'");
  Link& link = *it->second;
  std::optional<Json> reply;
  {
    std::lock_guard lock(link.mu);
    {
      std::lock_guard l(log_mu_);
      log_.push_back(prim + "> " + req.dump());
    }
    reply = link.endpoint->request(req, timeout_);
  }
  std::lock_guard l(log_mu_);
  log_.push_back(prim + "< " + (reply ? reply->dump() : std::string("timeout")));
  if (!reply) {
    spdlog::warn("{} did not answer within {} ms", prim, timeout_.count());
    return std::nullopt;
  }
  if (!reply->is_object() || !reply->contains("ok") || !(*reply)["ok"].is_boolean())
    throw ProtocolError(prim + " sent a reply without \"ok\": " + reply->dump());
  if (!(*reply)["ok"].get<bool>()) return std::nullopt;
  if (!reply->contains("value")) throw ProtocolError(prim + " sent ok without a value");
  return (*reply)["value"];
}

std::optional<Json> ExternalHub::exchange(const std::string& owner_key, const Json& req) {
  return send(owner(owner_key), req);
}

namespace {

Json args_json(const std::vector<GroundTerm>& args) {
  Json a = Json::array();
  for (const auto& g : args) a.push_back(g.str());
  return a;
}

}  // namespace

std::optional<bool> ExternalHub::predicate(const std::string& sym,
                                           const std::vector<GroundTerm>& args) {
  Json req{{"op", "pred"}, {"sym", sym}, {"args", args_json(args)}};
  auto v = exchange("@" + sym, req);
  if (!v) return std::nullopt;
  if (!v->is_boolean()) throw ProtocolError("predicate @" + sym + " answered " + v->dump());
  return v->get<bool>();
}

std::optional<GroundTerm> ExternalHub::function(const std::string& sym,
                                                const std::vector<GroundTerm>& args) {
  Json req{{"op", "fun"}, {"sym", sym}, {"args", args_json(args)}};
  auto v = exchange("@" + sym, req);
  if (!v) return std::nullopt;
  if (!v->is_string()) throw ProtocolError("function @" + sym + " answered " + v->dump());
  GroundTerm g;
  try {
    g = parse_ground(v->get<std::string>());
  } catch (const LoadError& e) {
    throw ProtocolError("function @" + sym + " answered a non-ground term: " + e.what());
  }
  if (!net_.universe.contains(g))
    throw ProtocolError("function @" + sym + " answered " + g.str() + ", outside the universe");
  return g;
}

std::optional<Lambda> ExternalHub::constraint(const std::string& sym) {
  Json req{{"op", "constr"}, {"sym", sym}};
  auto v = exchange("@" + sym, req);
  if (!v) return std::nullopt;
  if (!v->is_string()) throw ProtocolError("constraint @" + sym + " answered " + v->dump());
  Signature sig;
  if (auto it = net_.externals.find(sym); it != net_.externals.end()) sig = it->second;
  if (sig.kind != Signature::Kind::constr)
    throw ProtocolError("@" + sym + " is not declared as a constraint");
  ParseContext ctx;
  ctx.externals = &net_.externals;
  ctx.check_polarity = false;
  Lambda l;
  try {
    l = parse_lambda(v->get<std::string>(), sig.formulas, ctx);
  } catch (const LoadError& e) {
    throw ProtocolError("constraint @" + sym + ": " + e.what());
  }
  if (l.params.size() != sig.formulas + sig.terms)
    throw ProtocolError("constraint @" + sym + " expects " +
                        std::to_string(sig.formulas + sig.terms) + " parameters");
  if (auto fv = free_vars(l.body); !fv.empty())
    throw ProtocolError("constraint @" + sym + " mentions variable " + to_string(*fv.begin()) +
                        "; bodies may only use their parameters");
  for (const auto& s : external_symbols(l.body))
    if (!net_.ownership.count(s)) throw ProtocolError("constraint @" + sym + " uses unowned " + s);
  return l;
}

std::optional<Formula> ExternalHub::update(const std::string& prim,
                                           const std::map<std::string, GroundTerm>& comm) {
  Json c = Json::object();
  for (const auto& [k, v] : comm) c[k] = v.str();
  Json req{{"op", "update"}, {"prim", prim}, {"comm", c}};
  auto v = send(prim, req);
  if (!v) return std::nullopt;
  if (!v->is_string()) throw ProtocolError(prim + " answered update with " + v->dump());
  ParseContext ctx;
  ctx.externals = &net_.externals;
  try {
    return parse_formula(v->get<std::string>(), ctx);
  } catch (const LoadError& e) {
    throw ProtocolError(prim + " sent an unparsable eps: " + e.what());
  }
}

std::vector<std::string> ExternalHub::wire_log() const {
  std::lock_guard l(log_mu_);
  return log_;
}

}  // namespace intercon
