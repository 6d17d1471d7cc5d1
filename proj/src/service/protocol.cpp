#include "streetlearn/service/protocol.hpp"

#include <openssl/evp.h>

namespace streetlearn::wire {
namespace {

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

std::uint32_t get_u32(std::string_view s) {
  const auto b = [&](std::size_t i) { return static_cast<std::uint32_t>(static_cast<unsigned char>(s[i])); };
  return (b(0) << 24) | (b(1) << 16) | (b(2) << 8) | b(3);
}

}  // namespace

std::string encode_frame(const Frame& frame) {
  if (frame.payload.size() > kMaxFrameBytes) throw ProtocolError("frame too large");
  std::string out;
  out.reserve(frame.payload.size() + 5);
  put_u32(out, static_cast<std::uint32_t>(frame.payload.size()));
  out.push_back(static_cast<char>(frame.type));
  out += frame.payload;
  return out;
}

void FrameDecoder::feed(std::string_view bytes) {
  if (offset_ > 0 && offset_ == buffer_.size()) {
    buffer_.clear();
    offset_ = 0;
  }
  buffer_.append(bytes);
}

std::optional<Frame> FrameDecoder::next() {
  const std::string_view pending = std::string_view(buffer_).substr(offset_);
  if (pending.size() < 5) return std::nullopt;
  const std::uint32_t len = get_u32(pending);
  if (len > kMaxFrameBytes) throw ProtocolError("frame too large");
  const auto type = static_cast<std::uint8_t>(pending[4]);
  if (type != static_cast<std::uint8_t>(FrameType::kJson) && type != static_cast<std::uint8_t>(FrameType::kBinary)) {
    throw ProtocolError("unknown frame type " + std::to_string(type));
  }
  if (pending.size() < 5 + static_cast<std::size_t>(len)) return std::nullopt;
  Frame f{static_cast<FrameType>(type), std::string(pending.substr(5, len))};
  offset_ += 5 + len;
  if (offset_ > (1u << 20) && offset_ * 2 > buffer_.size()) {
    buffer_.erase(0, offset_);
    offset_ = 0;
  }
  return f;
}

std::string encode_image_payload(std::uint32_t ref, const Image& image) {
  std::string out;
  out.reserve(4 + image.pixels.size());
  put_u32(out, ref);
  out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
  return out;
}

std::pair<std::uint32_t, std::string_view> decode_image_payload(std::string_view payload) {
  if (payload.size() < 4) throw ProtocolError("image payload too short");
  return {get_u32(payload), payload.substr(4)};
}

std::string base64_encode(std::string_view bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(bytes.data()), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw ProtocolError("base64 length is not a multiple of 4");
  std::string out(3 * (text.size() / 4), '\0');
  const int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(text.data()), static_cast<int>(text.size()));
  if (n < 0) throw ProtocolError("malformed base64");
  // EVP_DecodeBlock keeps the bytes produced by '=' padding.
  std::size_t pad = 0;
  if (!text.empty() && text.back() == '=') ++pad;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++pad;
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

}  // namespace streetlearn::wire
