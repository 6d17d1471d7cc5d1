#include <doctest.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "streetlearn/panograph/slpack.hpp"
#include "streetlearn/service/protocol.hpp"
#include "streetlearn/service/server.hpp"
#include "streetlearn/service/session.hpp"
#include "test_util.hpp"

using namespace streetlearn;
using namespace streetlearn::wire;
namespace asio = boost::asio;
namespace beast = boost::beast;
using tcp = asio::ip::tcp;
using nlohmann::json;

namespace {

// Ignores graph_path and builds a small in-memory city.
EnvFactory city_factory() {
  return [](const EnvConfig& c) { return city_env(small_city(), c); };
}

json session_config(int frame_size = 84) {
  return {{"graph_path", "memory"},
          {"observations", {"view_image", "yaw", "latlng"}},
          {"frame_size", frame_size},
          {"seed", 42}};
}

// A message as seen by a client: JSON text, or a binary blob.
struct Received {
  bool binary = false;
  std::string data;
};

class Client {
 public:
  virtual ~Client() = default;
  virtual void send(const json& msg) = 0;
  virtual Received receive() = 0;

  json request(const json& msg) {
    send(msg);
    return json::parse(receive().data);
  }

  // Reply to reset/step plus the view_image bytes.
  std::pair<json, std::string> observe(const json& msg) {
    send(msg);
    const Received head = receive();
    REQUIRE_FALSE(head.binary);
    const json obs = json::parse(head.data);
    std::string view;
    if (obs["type"] != "obs") return {obs, view};
    for (const json& img : obs["images"]) {
      const Received blob = receive();
      REQUIRE(blob.binary);
      const auto [ref, bytes] = decode_image_payload(blob.data);
      CHECK(ref == img["ref"].get<std::uint32_t>());
      if (img["channel"] == "view_image") view = std::string(bytes);
    }
    return {obs, view};
  }
};

class TcpClient final : public Client {
 public:
  explicit TcpClient(std::uint16_t port) : socket_(io_) { socket_.connect({asio::ip::make_address("127.0.0.1"), port}); }
  void send(const json& msg) override { asio::write(socket_, asio::buffer(encode_frame({FrameType::kJson, msg.dump()}))); }
  Received receive() override {
    for (;;) {
      if (auto f = decoder_.next()) return {f->type == FrameType::kBinary, std::move(f->payload)};
      std::array<char, 65536> buf;
      const std::size_t n = socket_.read_some(asio::buffer(buf));
      decoder_.feed(std::string_view(buf.data(), n));
    }
  }
  tcp::socket& socket() { return socket_; }

 private:
  asio::io_context io_;
  tcp::socket socket_;
  FrameDecoder decoder_;
};

class WsClient final : public Client {
 public:
  explicit WsClient(std::uint16_t port) : ws_(io_) {
    ws_.next_layer().connect({asio::ip::make_address("127.0.0.1"), port});
    ws_.handshake("127.0.0.1", "/");
  }
  ~WsClient() override {
    beast::error_code ec;
    ws_.close(beast::websocket::close_code::normal, ec);
  }
  void send(const json& msg) override {
    ws_.text(true);
    ws_.write(asio::buffer(msg.dump()));
  }
  void send_binary(const std::string& bytes) {
    ws_.binary(true);
    ws_.write(asio::buffer(bytes));
  }
  Received receive() override {
    beast::flat_buffer buf;
    ws_.read(buf);
    return {ws_.got_binary(), beast::buffers_to_string(buf.data())};
  }

 private:
  asio::io_context io_;
  beast::websocket::stream<tcp::socket> ws_;
};

// Local reference trace: view bytes and rewards for a fixed action script.
struct LocalTrace {
  std::vector<std::string> views;
  std::vector<double> rewards;
};

int scripted_action(int i) { return (i * 7 + i / 5) % 5; }

LocalTrace local_trace(int steps) {
  const EnvConfig c = EnvConfig::from_json(session_config());
  auto env = city_env(small_city(), c);
  LocalTrace t;
  auto bytes = [](const Observation& o) {
    return std::string(reinterpret_cast<const char*>(o.view_image->pixels.data()), o.view_image->pixels.size());
  };
  t.views.push_back(bytes(env->reset()));
  t.rewards.push_back(0.0);
  for (int i = 0; i < steps; ++i) {
    const StepResult r = env->step(static_cast<std::size_t>(scripted_action(i)));
    t.views.push_back(bytes(r.observation));
    t.rewards.push_back(r.reward);
  }
  return t;
}

void run_script(Client& client, const LocalTrace& expected, int steps) {
  CHECK(client.request({{"type", "hello"}, {"id", 1}})["type"] == "hello");
  CHECK(client.request({{"type", "configure"}, {"id", 2}, {"config", session_config()}})["ok"] == true);
  auto [obs, view] = client.observe({{"type", "reset"}, {"id", 3}});
  CHECK(view == expected.views[0]);
  for (int i = 0; i < steps; ++i) {
    auto [o, v] = client.observe({{"type", "step"}, {"discrete", scripted_action(i)}});
    REQUIRE(v == expected.views[static_cast<std::size_t>(i) + 1]);
    CHECK(o["reward"].get<double>() == expected.rewards[static_cast<std::size_t>(i) + 1]);
  }
}

std::vector<json> texts(const std::vector<Outgoing>& out) {
  std::vector<json> r;
  for (const Outgoing& o : out)
    if (!o.binary) r.push_back(json::parse(o.data));
  return r;
}

struct CliResult {
  int status;
  std::string output;
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(STREETLEARN_CLI) + " " + args + " 2>&1";
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = ::pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_SUITE("service") {
  TEST_CASE("frame codec") {
    const Frame a{FrameType::kJson, R"({"type":"hello"})"};
    const Frame b{FrameType::kBinary, std::string("\x00\x01\xff", 3)};
    const Frame empty{FrameType::kJson, ""};
    const std::string stream = encode_frame(a) + encode_frame(b) + encode_frame(empty);
    CHECK(encode_frame(a).substr(0, 5) == std::string("\x00\x00\x00\x10\x01", 5));
    // Byte at a time.
    FrameDecoder d;
    std::vector<Frame> got;
    for (char c : stream) {
      d.feed(std::string_view(&c, 1));
      while (auto f = d.next()) got.push_back(*f);
    }
    CHECK(got == std::vector<Frame>{a, b, empty});
    CHECK(d.buffered() == 0);

    FrameDecoder bad;
    bad.feed(std::string("\x00\x00\x00\x01\x07x", 6));
    CHECK_THROWS_AS(bad.next(), ProtocolError);
    FrameDecoder huge;
    huge.feed(std::string("\x7f\x00\x00\x00\x01", 5));
    CHECK_THROWS_AS(huge.next(), ProtocolError);
  }

  TEST_CASE("image payload and base64") {
    Image img(3, 2);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<std::uint8_t>(i * 13);
    const std::string p = encode_image_payload(0x01020304, img);
    CHECK(p.size() == 4 + 18);
    const auto [ref, bytes] = decode_image_payload(p);
    CHECK(ref == 0x01020304);
    CHECK(std::equal(bytes.begin(), bytes.end(), img.pixels.begin(), img.pixels.end(),
                     [](char c, std::uint8_t u) { return static_cast<std::uint8_t>(c) == u; }));
    CHECK_THROWS_AS(decode_image_payload("abc"), ProtocolError);

    CHECK(base64_encode("") == "");
    CHECK(base64_encode("f") == "Zg==");
    CHECK(base64_encode("fo") == "Zm8=");
    CHECK(base64_encode("foobar") == "Zm9vYmFy");
    Rng rng(9);
    for (int n = 0; n < 40; ++n) {
      std::string s;
      for (int i = 0; i < n; ++i) s.push_back(static_cast<char>(rng.index(256)));
      CHECK(base64_decode(base64_encode(s)) == s);
    }
    CHECK_THROWS_AS(base64_decode("Zm9"), ProtocolError);
    CHECK_THROWS_AS(base64_decode("Z!9v"), ProtocolError);
  }

  TEST_CASE("session walk-through") {
    Session s(city_factory());
    const auto hello = texts(s.handle(R"({"type":"hello","id":"h"})"));
    REQUIRE(hello.size() == 1);
    CHECK(hello[0]["version"] == kProtocolVersion);
    CHECK(hello[0]["reply_to"] == "h");
    CHECK(hello[0]["games"].size() == 6);
    CHECK(hello[0]["channels"].size() == kAllChannels.size());

    const auto early = texts(s.handle(R"({"type":"reset","id":1})"));
    CHECK(early[0]["code"] == "not-configured");

    json cfg = session_config(480);
    const auto conf = texts(s.handle(json{{"type", "configure"}, {"id", 2}, {"config", cfg}}.dump()));
    CHECK(conf[0]["ok"] == true);
    CHECK(conf[0]["actions"].size() == 5);
    CHECK(conf[0]["episode_length"] == 1000);

    const auto not_reset = texts(s.handle(R"({"type":"step","id":3,"discrete":0})"));
    CHECK(not_reset[0]["type"] == "error");
    CHECK(not_reset[0]["code"] == "not-reset");

    const std::vector<Outgoing> reset = s.handle(R"({"type":"reset","id":4})");
    REQUIRE(reset.size() == 2);
    const json obs = json::parse(reset[0].data);
    CHECK(obs["type"] == "obs");
    CHECK(obs["images"][0]["width"] == 480);
    CHECK(obs["images"][0]["height"] == 480);
    CHECK(obs["observation"].contains("yaw"));
    CHECK(reset[1].binary);
    CHECK(reset[1].data.size() == 4 + 480 * 480 * 3);

    const auto step = s.handle(R"({"type":"step","id":5,"action":[22.5,0,0,0]})");
    CHECK(json::parse(step[0].data)["info"]["step"] == 1);
    CHECK(json::parse(step[0].data)["id"].get<int>() > obs["id"].get<int>());

    for (const char* bad : {R"({"type":"step","discrete":9})", R"({"type":"step"})",
                            R"({"type":"step","discrete":1,"action":[0,0,0,0]})",
                            R"({"type":"step","action":[0,0,0.5,0]})", R"({"type":"step","action":[0,0]})"}) {
      CHECK(texts(s.handle(bad))[0]["code"] == "bad-action");
    }
    CHECK(texts(s.handle("not json"))[0]["code"] == "bad-request");
    CHECK(texts(s.handle("[1,2]"))[0]["code"] == "bad-request");
    CHECK(texts(s.handle(R"({"type":"dance"})"))[0]["code"] == "unknown-type");
    CHECK(texts(s.reject_binary())[0]["code"] == "bad-request");
    CHECK(texts(s.handle(R"({"type":"configure","config":{"fov":500}})"))[0]["code"] == "config-error");
    CHECK(texts(s.handle(R"({"type":"reset"})"))[0]["code"] == "not-configured");
    CHECK(texts(s.handle(R"({"type":"bye","id":9})"))[0]["type"] == "bye");
    CHECK(s.closed());
    CHECK(s.handle(R"({"type":"hello"})").empty());
  }

  TEST_CASE("session base64 frames") {
    Session s(city_factory());
    s.handle(R"({"type":"hello","frame_mode":"base64"})");
    s.handle(json{{"type", "configure"}, {"config", session_config()}}.dump());
    const auto out = s.handle(R"({"type":"reset"})");
    REQUIRE(out.size() == 1);
    const json obs = json::parse(out[0].data);
    const LocalTrace t = local_trace(0);
    CHECK(base64_decode(obs["images"][0]["data"].get<std::string>()) == t.views[0]);
    CHECK(texts(Session(city_factory()).handle(R"({"type":"hello","frame_mode":"jpeg"})"))[0]["code"] ==
          "bad-request");
  }

  TEST_CASE("tcp and websocket round trips match a local run") {
    const LocalTrace expected = local_trace(60);
    for (Transport transport : {Transport::kTcp, Transport::kWebSocket}) {
      Server server({"127.0.0.1", 0, transport, city_factory()});
      server.start();
      {
        std::unique_ptr<Client> c;
        if (transport == Transport::kTcp) {
          c = std::make_unique<TcpClient>(server.port());
        } else {
          c = std::make_unique<WsClient>(server.port());
        }
        run_script(*c, expected, 60);
        CHECK(c->request({{"type", "bye"}})["type"] == "bye");
      }
      server.stop();
      CHECK(server.sessions_served() == 1);
    }
  }

  TEST_CASE("interleaved sessions are independent") {
    const LocalTrace expected = local_trace(30);
    Server server({"127.0.0.1", 0, Transport::kWebSocket, city_factory()});
    server.start();
    WsClient a(server.port());
    TcpClient unused(server.port());  // an idle connection on the wrong protocol
    WsClient b(server.port());
    for (WsClient* c : {&a, &b}) {
      c->request({{"type", "hello"}});
      c->request({{"type", "configure"}, {"config", session_config()}});
      CHECK(c->observe({{"type", "reset"}}).second == expected.views[0]);
    }
    for (int i = 0; i < 30; ++i) {
      CHECK(a.observe({{"type", "step"}, {"discrete", scripted_action(i)}}).second == expected.views[i + 1]);
      CHECK(b.observe({{"type", "step"}, {"discrete", scripted_action(i)}}).second == expected.views[i + 1]);
    }
    a.send_binary("nope");
    CHECK(json::parse(a.receive().data)["code"] == "bad-request");
    server.stop();
  }

  TEST_CASE("a stalled client does not hold up others") {
    Server server({"127.0.0.1", 0, Transport::kTcp, city_factory()});
    server.start();
    TcpClient slow(server.port());
    slow.request({{"type", "configure"}, {"config", session_config(480)}});
    slow.send({{"type", "reset"}});
    // Flood with steps and never read: the server blocks writing to it.
    for (int i = 0; i < 50; ++i) slow.send({{"type", "step"}, {"discrete", 1}});

    const LocalTrace expected = local_trace(40);
    const auto t0 = std::chrono::steady_clock::now();
    TcpClient fast(server.port());
    run_script(fast, expected, 40);
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(20));
    server.stop();
  }
}

TEST_SUITE("cli") {
  TEST_CASE("generate is deterministic") {
    TempDir tmp;
    const std::string args = " --seed 5 --blocks 3x2 --pano-height 32 --out ";
    REQUIRE(cli("generate" + args + (tmp / "a").string()).status == 0);
    REQUIRE(cli("generate" + args + (tmp / "b").string()).status == 0);
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::recursive_directory_iterator(tmp / "a")) {
      if (!e.is_regular_file()) continue;
      const auto rel = std::filesystem::relative(e.path(), tmp / "a");
      names.push_back(rel.string());
      CHECK(slurp(e.path()) == slurp(tmp / "b" / rel.string()));
    }
    CHECK(names.size() > 10);
    const CliResult stats = cli("stats --graph " + (tmp / "a").string());
    CHECK(stats.status == 0);
    CHECK(stats.output.find("#nodes") != std::string::npos);

    CHECK(cli("generate --blocks 0x0 --out " + (tmp / "c").string()).status != 0);
    CHECK(cli("generate --blocks three --out " + (tmp / "c").string()).status != 0);
    CHECK(cli("stats --graph " + (tmp / "missing").string()).status != 0);
  }

  TEST_CASE("carve") {
    TempDir tmp;
    save_graph(oracle::line_graph({"a", "b", "c", "d", "e", "f", "g"}), tmp / "line", "line");
    const CliResult r = cli("carve --graph " + (tmp / "line").string() + " --bfs-center d --depth 1 --out " +
                            (tmp / "cut").string());
    CHECK(r.status == 0);
    const StreetGraph cut = load_graph(tmp / "cut");
    CHECK(cut.size() == 3);
    CHECK(cut.find("c"));
    CHECK(cut.find("e"));

    CHECK(cli("carve --graph " + (tmp / "line").string() + " --bfs-center d --depth 2 --out " +
              (tmp / "cut2").string())
              .status == 0);
    CHECK(load_graph(tmp / "cut2").size() == 5);

    CHECK(cli("carve --graph " + (tmp / "line").string() + " --polygon '40,-74;41,-74' --out " +
              (tmp / "bad").string())
              .status != 0);
    CHECK(cli("carve --graph " + (tmp / "line").string() + " --bfs-center zz --depth 2 --out " +
              (tmp / "bad").string())
              .status != 0);
    CHECK(cli("carve --graph " + (tmp / "line").string() + " --out " + (tmp / "bad").string()).status != 0);
  }

  TEST_CASE("oracle-bench scores the oracle above a random walk") {
    const std::string common = " --blocks 4x4 --episodes 2 --episode-length 300 --frame-size 16 --json";
    const CliResult o = cli("oracle-bench" + common);
    const CliResult r = cli("oracle-bench" + common + " --agent random");
    REQUIRE(o.status == 0);
    REQUIRE(r.status == 0);
    const json oj = json::parse(o.output);
    const json rj = json::parse(r.output);
    CHECK(oj["fail_pct"] == 0.0);
    CHECK(oj["goal_rewards"].get<double>() > rj["goal_rewards"].get<double>());
    CHECK(oj["budget_violations"] == 0);
    CHECK(cli("oracle-bench --agent sleepy --episodes 1").status != 0);
  }
}
