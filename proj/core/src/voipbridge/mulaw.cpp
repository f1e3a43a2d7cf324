#include "easyvoice/voipbridge/mulaw.hpp"

#include <array>
#include <bit>

namespace easyvoice::voip {

namespace {

constexpr int kBias = 0x84;
constexpr int kClip = 32635;

constexpr std::int16_t decode_one(std::uint8_t code) {
  const int u = static_cast<std::uint8_t>(~code);
  const int exponent = (u >> 4) & 0x07;
  const int mantissa = u & 0x0F;
  const int magnitude = (((mantissa << 3) + kBias) << exponent) - kBias;
  return static_cast<std::int16_t>((u & 0x80) ? -magnitude : magnitude);
}

constexpr auto kDecodeTable = [] {
  std::array<std::int16_t, 256> t{};
  for (int c = 0; c < 256; ++c) t[static_cast<std::size_t>(c)] = decode_one(static_cast<std::uint8_t>(c));
  return t;
}();

}  // namespace

std::uint8_t mulaw_encode(std::int16_t sample) noexcept {
  int value = sample;
  const int sign = value < 0 ? 0x80 : 0x00;
  int magnitude = value < 0 ? -value : value;
  if (magnitude > kClip) magnitude = kClip;
  magnitude += kBias;
  // magnitude is in [132, 32767]: its top bit sits at position 7..14.
  const int exponent = static_cast<int>(std::bit_width(static_cast<unsigned>(magnitude))) - 8;
  const int mantissa = (magnitude >> (exponent + 3)) & 0x0F;
  return static_cast<std::uint8_t>(~(sign | (exponent << 4) | mantissa));
}

std::int16_t mulaw_decode(std::uint8_t code) noexcept { return kDecodeTable[code]; }

std::vector<std::uint8_t> mulaw_encode(std::span<const std::int16_t> samples) {
  std::vector<std::uint8_t> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = mulaw_encode(samples[i]);
  return out;
}

std::vector<std::int16_t> mulaw_decode(std::span<const std::uint8_t> codes) {
  std::vector<std::int16_t> out(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) out[i] = kDecodeTable[codes[i]];
  return out;
}

}  // namespace easyvoice::voip
