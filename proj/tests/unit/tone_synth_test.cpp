#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "easyvoice/speech/tone_synth.hpp"
#include "oracles.hpp"

namespace sp = easyvoice::speech;
namespace et = easyvoice::testing;

TEST(ToneSynth, EmptyTextIsEmpty) { EXPECT_EQ(sp::synthesize_tone("").size(), 0u); }

TEST(ToneSynth, OneCharacterIs640Samples) {
  auto buf = sp::synthesize_tone("a");
  EXPECT_EQ(buf.sample_rate_hz(), 8000);
  EXPECT_EQ(buf.size(), 640u);
}

TEST(ToneSynth, DifferentCharactersDifferentFrequencies) {
  auto buf = sp::synthesize_tone("ab");
  ASSERT_EQ(buf.size(), 1280u);
  auto s = buf.samples();
  // Skip the 5 ms ramps at both ends of each segment.
  const auto fa = et::crossing_frequency(s.subspan(40, 560), 8000.0);
  const auto fb = et::crossing_frequency(s.subspan(680, 560), 8000.0);
  EXPECT_NEAR(fa, 220.0 * std::pow(2.0, 25.0 / 36.0), 1.0);  // 'a' = 97, 97 mod 36 = 25
  EXPECT_NEAR(fb, 220.0 * std::pow(2.0, 26.0 / 36.0), 1.0);
  EXPECT_GT(fb - fa, 5.0);
  EXPECT_FALSE(std::equal(s.begin(), s.begin() + 640, s.begin() + 640));
}

TEST(ToneSynth, WhitespaceIsSilent) {
  auto buf = sp::synthesize_tone("a b");
  auto s = buf.samples();
  for (std::size_t i = 640; i < 1280; ++i) ASSERT_EQ(s[i], 0) << i;
}

TEST(ToneSynth, SegmentsStartAndEndQuietly) {
  auto s = sp::synthesize_tone("z").samples();
  EXPECT_EQ(s.front(), 0);
  EXPECT_LE(std::abs(s.back()), 12000 / 40 + 1);
}

TEST(ToneSynth, DurationLaw) {
  std::mt19937_64 rng(8);
  const std::vector<std::string> pieces = {"a", "Z", " ", "\xC3\xA9", "\xE2\x82\xAC", "?", "\xF0\x9F\x98\x80"};
  for (int i = 0; i < 200; ++i) {
    std::string text;
    const std::size_t n = rng() % 30;
    for (std::size_t k = 0; k < n; ++k) text += pieces[rng() % pieces.size()];
    ASSERT_EQ(sp::synthesize_tone(text).size(), n * 640u);
  }
}

TEST(ToneSynth, DurationLawAtOtherRates) {
  sp::ToneSynthConfig cfg;
  cfg.per_char_ms = 33;
  cfg.sample_rate_hz = 44100;
  for (std::size_t n = 0; n < 40; ++n) {
    const std::string text(n, 'q');
    // 33 ms at 44.1 kHz is 1455.3 samples, so segments alternate in length.
    ASSERT_EQ(sp::synthesize_tone(text, cfg).size(), n * 33 * 44100 / 1000) << n;
  }
}

TEST(ToneSynth, RejectsBadConfig) {
  sp::ToneSynthConfig cfg;
  cfg.sample_rate_hz = 4000;
  EXPECT_ANY_THROW(sp::synthesize_tone("a", cfg));
  cfg = {};
  cfg.per_char_ms = 0;
  EXPECT_ANY_THROW(sp::synthesize_tone("a", cfg));
}
