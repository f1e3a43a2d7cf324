#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "easyvoice/scankb/layout.hpp"

namespace easyvoice::scankb {

inline constexpr std::int64_t kMinScanPeriodMs = 50;

struct ScanConfig {
  std::int64_t scan_period_ms = 1000;
  int max_cycles = 2;

  /// Throws std::invalid_argument when scan_period_ms < 50 or max_cycles < 1.
  void validate() const;
};

// Position of the scanning cursor. `path` holds the child indices of the
// groups entered from the root; the cursor indexes the children of the
// innermost one.
struct ScanState {
  std::vector<std::size_t> path;
  std::size_t cursor = 0;
  std::int64_t elapsed_ms = 0;
  int cycles = 0;

  friend bool operator==(const ScanState&, const ScanState&) = default;
};

/// The group whose children are being scanned.
const ScanNode& current_level(const ScanNode& layout, const ScanState& state);
const ScanNode& highlighted(const ScanNode& layout, const ScanState& state);

/// True when every path element names a group and the cursor is in range.
bool is_valid(const ScanNode& layout, const ScanState& state) noexcept;

/// Advances simulated time by dt_ms (> 0). The cursor moves one option per
/// full scan period; a wrap counts a cycle, and max_cycles wraps at a nested
/// level return to the parent. At the root the count saturates.
ScanState tick(const ScanNode& layout, ScanState state, const ScanConfig& config, std::int64_t dt_ms);

/// Switch press: a leaf yields its action and restarts the current level,
/// a group is entered.
std::pair<ScanState, std::optional<KeyAction>> press(const ScanNode& layout, ScanState state);

}  // namespace easyvoice::scankb
