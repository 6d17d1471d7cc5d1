#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "streetlearn/image.hpp"

namespace streetlearn::wire {

inline constexpr int kProtocolVersion = 1;
inline constexpr std::size_t kMaxFrameBytes = 64u << 20;

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw TCP framing: u32 big-endian payload length, u8 type, payload.
enum class FrameType : std::uint8_t { kJson = 1, kBinary = 2 };

struct Frame {
  FrameType type = FrameType::kJson;
  std::string payload;

  friend bool operator==(const Frame&, const Frame&) = default;
};

std::string encode_frame(const Frame& frame);

// Incremental decoder for a byte stream of frames.
class FrameDecoder {
 public:
  void feed(std::string_view bytes);
  // Throws ProtocolError on an unknown type or an oversized frame.
  std::optional<Frame> next();
  std::size_t buffered() const { return buffer_.size() - offset_; }

 private:
  std::string buffer_;
  std::size_t offset_ = 0;
};

// Image messages: u32 big-endian frame ref followed by raw RGB rows.
std::string encode_image_payload(std::uint32_t ref, const Image& image);
std::pair<std::uint32_t, std::string_view> decode_image_payload(std::string_view payload);

std::string base64_encode(std::string_view bytes);
// Throws ProtocolError on malformed input.
std::string base64_decode(std::string_view text);

}  // namespace streetlearn::wire
