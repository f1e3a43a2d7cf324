#pragma once

#include <cstdint>
#include <span>
#include <vector>

// ITU-T G.711 mu-law companding (16-bit linear domain, bias 132, clip 32635).
namespace easyvoice::voip {

std::uint8_t mulaw_encode(std::int16_t sample) noexcept;
std::int16_t mulaw_decode(std::uint8_t code) noexcept;

/// encode(0); the payload byte of a silent frame.
inline constexpr std::uint8_t kMulawSilence = 0xFF;

std::vector<std::uint8_t> mulaw_encode(std::span<const std::int16_t> samples);
std::vector<std::int16_t> mulaw_decode(std::span<const std::uint8_t> codes);

}  // namespace easyvoice::voip
