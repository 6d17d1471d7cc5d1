#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "streetlearn/engine/environment.hpp"

namespace streetlearn::wire {

enum class FrameMode { kBinary, kBase64 };

struct Outgoing {
  bool binary = false;  // binary: [u32 ref][RGB]; text: one JSON message
  std::string data;
};

using EnvFactory = std::function<std::unique_ptr<Environment>(const EnvConfig&)>;

// One client connection's state machine. Client messages are JSON objects
// with "type" in {hello, configure, reset, step, bye} and an optional "id".
// Replies carry a per-session increasing "id" and "reply_to". Observations
// go out as an "obs" message followed by one binary message per image,
// unless the client asked for base64 frames in hello.
class Session {
 public:
  explicit Session(EnvFactory factory);

  std::vector<Outgoing> handle(std::string_view text);
  // Reply to a binary message from the client, which is not allowed.
  std::vector<Outgoing> reject_binary();

  bool closed() const { return closed_; }
  FrameMode frame_mode() const { return mode_; }

 private:
  Outgoing message(nlohmann::json body, const nlohmann::json& reply_to);
  std::vector<Outgoing> error(const std::string& code, const std::string& text, const nlohmann::json& reply_to);
  std::vector<Outgoing> observation(const StepResult& r, const nlohmann::json& reply_to);

  EnvFactory factory_;
  std::unique_ptr<Environment> env_;
  FrameMode mode_ = FrameMode::kBinary;
  std::uint64_t next_id_ = 1;
  std::uint32_t next_ref_ = 1;
  bool closed_ = false;
};

}  // namespace streetlearn::wire
