#include "streetlearn/service/server.hpp"

#include <sys/socket.h>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "streetlearn/service/protocol.hpp"

namespace streetlearn::wire {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

void serve_tcp(tcp::socket& socket, Session& session) {
  FrameDecoder decoder;
  std::array<char, 16384> buf{};
  while (!session.closed()) {
    boost::system::error_code ec;
    const std::size_t n = socket.read_some(asio::buffer(buf), ec);
    if (ec) return;
    decoder.feed(std::string_view(buf.data(), n));
    while (auto frame = decoder.next()) {
      const auto replies = frame->type == FrameType::kJson ? session.handle(frame->payload) : session.reject_binary();
      for (const Outgoing& o : replies) {
        const std::string bytes = encode_frame({o.binary ? FrameType::kBinary : FrameType::kJson, o.data});
        asio::write(socket, asio::buffer(bytes));
      }
      if (session.closed()) return;
    }
  }
}

void serve_websocket(tcp::socket& socket, Session& session) {
  websocket::stream<tcp::socket&> ws(socket);
  ws.read_message_max(kMaxFrameBytes);
  ws.accept();
  beast::flat_buffer buffer;
  while (!session.closed()) {
    boost::system::error_code ec;
    ws.read(buffer, ec);
    if (ec) return;
    const bool text = ws.got_text();
    const std::string data = beast::buffers_to_string(buffer.data());
    buffer.consume(buffer.size());
    for (const Outgoing& o : text ? session.handle(data) : session.reject_binary()) {
      ws.binary(o.binary);
      ws.write(asio::buffer(o.data));
    }
  }
  boost::system::error_code ignored;
  ws.close(websocket::close_code::normal, ignored);
}

}  // namespace

struct Server::Impl {
  ServerOptions options;
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::thread accept_thread;
  std::atomic<bool> stopping{false};

  struct Connection {
    tcp::socket socket;
    std::thread thread;
    std::atomic<bool> done{false};
    explicit Connection(asio::io_context& io) : socket(io) {}
  };
  std::mutex mutex;
  std::list<std::shared_ptr<Connection>> connections;
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  const tcp::endpoint ep(asio::ip::make_address(impl_->options.host), impl_->options.port);
  impl_->acceptor.open(ep.protocol());
  impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
  impl_->acceptor.bind(ep);
  impl_->acceptor.listen();
}

Server::~Server() { stop(); }

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
  Impl& s = *impl_;
  while (!s.stopping) {
    auto conn = std::make_shared<Impl::Connection>(s.io);
    boost::system::error_code ec;
    s.acceptor.accept(conn->socket, ec);
    if (ec) {
      if (s.stopping) break;
      continue;
    }
    conn->socket.set_option(tcp::no_delay(true), ec);
    ++served_;
    std::lock_guard lock(s.mutex);
    if (s.stopping) break;
    for (auto it = s.connections.begin(); it != s.connections.end();) {
      if ((*it)->done) {
        (*it)->thread.join();
        it = s.connections.erase(it);
      } else {
        ++it;
      }
    }
    s.connections.push_back(conn);
    conn->thread = std::thread([conn, &s] {
      Session session(s.options.factory);
      try {
        if (s.options.transport == Transport::kTcp) {
          serve_tcp(conn->socket, session);
        } else {
          serve_websocket(conn->socket, session);
        }
      } catch (const std::exception&) {
        // Broken connection or protocol violation; drop the client.
      }
      boost::system::error_code ignored;
      conn->socket.shutdown(tcp::socket::shutdown_both, ignored);
      conn->done = true;
    });
  }
}

void Server::start() {
  impl_->accept_thread = std::thread([this] { run(); });
}

void Server::stop() {
  Impl& s = *impl_;
  if (s.stopping.exchange(true)) return;
  boost::system::error_code ignored;
  // shutdown() wakes a blocking accept(); close() alone may not.
  ::shutdown(s.acceptor.native_handle(), SHUT_RDWR);
  s.acceptor.close(ignored);
  if (s.accept_thread.joinable()) s.accept_thread.join();
  std::list<std::shared_ptr<Impl::Connection>> conns;
  {
    std::lock_guard lock(s.mutex);
    conns.swap(s.connections);
  }
  for (auto& c : conns) ::shutdown(c->socket.native_handle(), SHUT_RDWR);
  for (auto& c : conns) {
    if (c->thread.joinable()) c->thread.join();
  }
}

}  // namespace streetlearn::wire
