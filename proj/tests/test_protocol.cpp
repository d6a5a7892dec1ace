#include <gtest/gtest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "intercon/netdsl.hpp"
#include "intercon/protocol.hpp"
#include "intercon/simple.hpp"
#include "support/gen.hpp"

using namespace intercon;
using namespace std::chrono_literals;

namespace {

const char* kNet = R"([universe]
data = d1, d2

[primitive user]
kind = external
rho = c -> @UserAppr(^c)
owns = @UserAppr:pred, @f:fun, @more:constr(0,1), @evenmore:constr(0,1), $k

[primitive other]
kind = external
rho = b -> @ok(^b)
owns = @ok:pred
)";

// Records every request and answers from a table keyed by "op:sym" or "op".
struct Recorder {
  std::vector<Json> seen;
  std::map<std::string, Json> answers;

  std::shared_ptr<Endpoint> endpoint() {
    return std::make_shared<FunctionEndpoint>([this](const Json& req) -> std::optional<Json> {
      seen.push_back(req);
      std::string op = req.at("op");
      std::string key = req.contains("sym") ? op + ":" + req.at("sym").get<std::string>() : op;
      auto it = answers.find(key);
      if (it == answers.end()) it = answers.find(op);
      if (it == answers.end()) return Json{{"ok", false}, {"reason", "unscripted"}};
      return Json{{"ok", true}, {"value", it->second}};
    });
  }
};

struct Hub : ::testing::Test {
  Network net = parse_network(kNet);
  Recorder user, other;
  std::shared_ptr<ExternalHub> hub = std::make_shared<ExternalHub>(net, 500ms);

  void SetUp() override {
    hub->connect("user", user.endpoint());
    hub->connect("other", other.endpoint());
    net.interp.attach(hub);
  }
};

std::string write_script(const std::string& name, const Json& script) {
  auto dir = std::filesystem::temp_directory_path() / "intercon-tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << script.dump();
  return path.string();
}

std::string mock_command(const std::string& script) {
  return "python3 " + gen::source_path("tools/mock_endpoint.py") + " " + script;
}

// One-connection line server on 127.0.0.1 that answers every line with
// `reply`.
class LineServer {
 public:
  explicit LineServer(std::string reply) : reply_(std::move(reply)) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    ::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
    ::listen(fd_, 1);
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    thread_ = std::thread([this] { serve(); });
  }
  ~LineServer() {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    thread_.join();
  }
  int port() const { return port_; }
  std::vector<std::string> lines() const {
    std::lock_guard l(mu_);
    return lines_;
  }

 private:
  void serve() {
    int c = ::accept(fd_, nullptr, nullptr);
    if (c < 0) return;
    std::string buf;
    char chunk[256];
    ssize_t n;
    while ((n = ::read(c, chunk, sizeof chunk)) > 0) {
      buf.append(chunk, static_cast<std::size_t>(n));
      std::size_t nl;
      while ((nl = buf.find('\n')) != std::string::npos) {
        {
          std::lock_guard l(mu_);
          lines_.push_back(buf.substr(0, nl));
        }
        buf.erase(0, nl + 1);
        std::string out = reply_ + "\n";
        if (::write(c, out.data(), out.size()) < 0) break;
      }
    }
    ::close(c);
  }

  std::string reply_;
  int fd_ = -1;
  int port_ = 0;
  std::thread thread_;
  mutable std::mutex mu_;
  std::vector<std::string> lines_;
};

}  // namespace

TEST_F(Hub, PredicateIsRoutedToItsOwner) {
  user.answers["pred:UserAppr"] = true;
  other.answers["pred:ok"] = false;
  EXPECT_EQ(net.interp.external_predicate("UserAppr", {GroundTerm("d1")}), std::optional<bool>(true));
  EXPECT_EQ(net.interp.external_predicate("ok", {GroundTerm("d1")}), std::optional<bool>(false));
  ASSERT_EQ(user.seen.size(), 1u);
  ASSERT_EQ(other.seen.size(), 1u);
  EXPECT_EQ(user.seen[0].dump(), R"({"op":"pred","sym":"UserAppr","args":["d1"]})");
  EXPECT_EQ(other.seen[0].at("sym"), "ok");
}

TEST_F(Hub, CachedEntryCausesNoTraffic) {
  user.answers["pred:UserAppr"] = true;
  for (int i = 0; i < 3; ++i) net.interp.external_predicate("UserAppr", {GroundTerm("d1")});
  EXPECT_EQ(user.seen.size(), 1u);
  net.interp.external_predicate("UserAppr", {GroundTerm("d2")});
  EXPECT_EQ(user.seen.size(), 2u);
  net.interp.reset_external();
  net.interp.external_predicate("UserAppr", {GroundTerm("d1")});
  EXPECT_EQ(user.seen.size(), 3u);
}

TEST_F(Hub, RefusalIsUnknown) {
  EXPECT_EQ(net.interp.external_predicate("UserAppr", {GroundTerm("d1")}), std::nullopt);
  EXPECT_EQ(net.interp.resolution_log(), (std::vector<std::string>{"UserAppr(d1):unknown"}));
}

TEST_F(Hub, FunctionReply) {
  user.answers["fun:f"] = "d2";
  EXPECT_EQ(net.interp.external_function("f", {GroundTerm("d1")}), GroundTerm("d2"));
  EXPECT_EQ(user.seen[0].dump(), R"({"op":"fun","sym":"f","args":["d1"]})");
}

TEST_F(Hub, FunctionReplyOutsideTheUniverse) {
  user.answers["fun:f"] = "d9";
  EXPECT_THROW(net.interp.external_function("f", {GroundTerm("d1")}), ProtocolError);
}

TEST_F(Hub, ConstraintBody) {
  user.answers["constr:more"] = "lambda(v).(v = d1 || @evenmore(v))";
  auto l = net.interp.external_constraint("more");
  ASSERT_TRUE(l);
  EXPECT_EQ(l->params, (std::vector<std::string>{"v"}));
  EXPECT_EQ(external_symbols(l->body), (std::set<std::string>{"@evenmore"}));
  EXPECT_EQ(user.seen[0].dump(), R"({"op":"constr","sym":"more"})");
}

TEST_F(Hub, ConstraintBodyTrue) {
  user.answers["constr:more"] = "lambda(v).true";
  auto l = net.interp.external_constraint("more");
  ASSERT_TRUE(l);
  EXPECT_TRUE(equal(l->body, fm::truth()));
}

TEST_F(Hub, ConstraintBodyWithFreeVariableIsRejected) {
  user.answers["constr:more"] = "lambda(v).(v = ^a)";
  EXPECT_THROW(net.interp.external_constraint("more"), ProtocolError);
}

TEST_F(Hub, ConstraintBodyWithWrongArityIsRejected) {
  user.answers["constr:more"] = "lambda(v, w).(v = w)";
  EXPECT_THROW(net.interp.external_constraint("more"), ProtocolError);
}

TEST_F(Hub, UpdateExchange) {
  user.answers["update"] = "c -> @UserAppr(^c)";
  auto eps = hub->update("user", {{"k", GroundTerm("d1")}});
  ASSERT_TRUE(eps);
  EXPECT_TRUE(equal(*eps, net.primitives[0].rho));
  EXPECT_EQ(user.seen[0].dump(), R"({"op":"update","prim":"user","comm":{"k":"d1"}})");
}

TEST_F(Hub, UpdateWithEmptyCommIsStillSent) {
  user.answers["update"] = "true";
  EXPECT_TRUE(hub->update("user", {}));
  EXPECT_EQ(user.seen[0].dump(), R"({"op":"update","prim":"user","comm":{}})");
}

TEST_F(Hub, UnparsableUpdateIsRejected) {
  user.answers["update"] = "c ->";
  EXPECT_THROW(hub->update("user", {}), ProtocolError);
}

TEST_F(Hub, MalformedReplyIsRejected) {
  auto bad = std::make_shared<FunctionEndpoint>([](const Json&) -> std::optional<Json> { return Json{{"value", 1}}; });
  hub->connect("other", bad);
  EXPECT_THROW(net.interp.external_predicate("ok", {GroundTerm("d1")}), ProtocolError);
}

TEST_F(Hub, WireLogRecordsBothDirections) {
  user.answers["pred:UserAppr"] = true;
  net.interp.external_predicate("UserAppr", {GroundTerm("d1")});
  EXPECT_EQ(hub->wire_log(), (std::vector<std::string>{R"(user> {"op":"pred","sym":"UserAppr","args":["d1"]})",
                                                      R"(user< {"ok":true,"value":true})"}));
}

TEST_F(Hub, ConcurrentRequestsToOnePrimitiveAreSerialized) {
  std::atomic<int> inside{0};
  std::atomic<bool> overlap{false};
  hub->connect("user", std::make_shared<FunctionEndpoint>([&](const Json&) -> std::optional<Json> {
    if (inside.fetch_add(1) > 0) overlap = true;
    std::this_thread::sleep_for(5ms);
    inside.fetch_sub(1);
    return Json{{"ok", true}, {"value", true}};
  }));
  std::vector<std::thread> ts;
  for (int i = 0; i < 4; ++i)
    ts.emplace_back([&, i] { hub->predicate("UserAppr", {GroundTerm(i % 2 ? "d1" : "d2")}); });
  for (auto& t : ts) t.join();
  EXPECT_FALSE(overlap);
}

TEST(Console, PromptText) {
  EXPECT_EQ(console_prompt(Json{{"op", "pred"}, {"sym", "UserAppr"}, {"args", {"d1"}}}), "UserAppr(d1)? [y/n]");
  EXPECT_EQ(console_prompt(Json{{"op", "update"}, {"prim", "user"}, {"comm", {{"k", "d1"}}}}),
            "update user {k=d1}; new eps?");
}

TEST(Console, Answers) {
  std::istringstream in("y\nno\n\nmaybe\nd2\n");
  std::ostringstream out;
  ConsoleEndpoint c(in, out);
  Json pred{{"op", "pred"}, {"sym", "UserAppr"}, {"args", {"d1"}}};
  EXPECT_EQ(c.request(pred, 1s)->dump(), R"({"ok":true,"value":true})");
  EXPECT_EQ(c.request(pred, 1s)->dump(), R"({"ok":true,"value":false})");
  EXPECT_FALSE(c.request(pred, 1s)->at("ok").get<bool>());
  EXPECT_FALSE(c.request(pred, 1s)->at("ok").get<bool>());
  Json fun{{"op", "fun"}, {"sym", "f"}, {"args", {"d1"}}};
  EXPECT_EQ(c.request(fun, 1s)->dump(), R"({"ok":true,"value":"d2"})");
  EXPECT_EQ(c.request(fun, 1s)->at("reason"), "end of input");
  EXPECT_NE(out.str().find("UserAppr(d1)? [y/n]"), std::string::npos);
}

TEST(Proc, MockEndpointAnswersFromItsScript) {
  std::string script = write_script("proc.json", Json{{"pred:UserAppr", {true, false}}, {"update", "true"}});
  ProcEndpoint p(mock_command(script));
  Json pred{{"op", "pred"}, {"sym", "UserAppr"}, {"args", {"d1"}}};
  EXPECT_EQ(p.request(pred, 5s)->dump(), R"({"ok":true,"value":true})");
  EXPECT_EQ(p.request(pred, 5s)->dump(), R"({"ok":true,"value":false})");
  EXPECT_EQ(p.request(pred, 5s)->dump(), R"({"ok":true,"value":false})");
  EXPECT_EQ(p.request(Json{{"op", "fun"}, {"sym", "f"}, {"args", Json::array()}}, 5s)->at("ok"), false);
}

TEST(Proc, TimeoutIsUnknown) {
  ProcEndpoint p("sleep 5");
  auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(p.request(Json{{"op", "pred"}, {"sym", "x"}, {"args", Json::array()}}, 200ms), std::nullopt);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 3s);
}

TEST(Proc, HubTimeoutLeavesThePredicateUnknown) {
  Network net = parse_network(kNet);
  auto hub = std::make_shared<ExternalHub>(net, 200ms);
  hub->connect("user", std::make_shared<ProcEndpoint>("sleep 5"));
  EXPECT_EQ(hub->predicate("UserAppr", {GroundTerm("d1")}), std::nullopt);
  EXPECT_EQ(hub->wire_log().back(), "user< timeout");
}

TEST(Proc, ExitedChildIsATransportFailure) {
  ProcEndpoint p("true");
  EXPECT_THROW(p.request(Json{{"op", "update"}, {"prim", "x"}, {"comm", Json::object()}}, 2s), ProtocolError);
}

TEST(Tcp, RequestAndReply) {
  LineServer server(R"({"ok":true,"value":"d1"})");
  TcpEndpoint t("127.0.0.1", server.port());
  Json fun{{"op", "fun"}, {"sym", "f"}, {"args", {"d2"}}};
  EXPECT_EQ(t.request(fun, 2s)->dump(), R"({"ok":true,"value":"d1"})");
  EXPECT_EQ(server.lines(), (std::vector<std::string>{fun.dump()}));
}

TEST(Endpoints, SchemesAreChecked) {
  EXPECT_THROW(make_endpoint("carrier-pigeon:"), LoadError);
  EXPECT_THROW(make_endpoint("tcp:localhost"), LoadError);
  EXPECT_THROW(make_endpoint("tcp:localhost:http"), LoadError);
}

TEST(Endpoints, ConnectAllNeedsAnEndpointPerExternalPrimitive) {
  Network net = parse_network(kNet);
  ExternalHub hub(net);
  EXPECT_THROW(hub.connect_all(), LoadError);
  EXPECT_THROW(hub.connect("nobody", nullptr), PreconditionError);
}
