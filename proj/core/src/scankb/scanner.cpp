#include "easyvoice/scankb/scanner.hpp"

#include <string>

namespace easyvoice::scankb {

void ScanConfig::validate() const {
  if (scan_period_ms < kMinScanPeriodMs) {
    throw std::invalid_argument("scan period must be at least 50 ms, got " + std::to_string(scan_period_ms));
  }
  if (max_cycles < 1) throw std::invalid_argument("max_cycles must be at least 1");
}

const ScanNode& current_level(const ScanNode& layout, const ScanState& state) {
  const ScanNode* node = &layout;
  for (auto i : state.path) node = &node->children.at(i);
  return *node;
}

const ScanNode& highlighted(const ScanNode& layout, const ScanState& state) {
  return current_level(layout, state).children.at(state.cursor);
}

bool is_valid(const ScanNode& layout, const ScanState& state) noexcept {
  const ScanNode* node = &layout;
  if (!node->is_group()) return false;
  for (auto i : state.path) {
    if (i >= node->children.size() || !node->children[i].is_group()) return false;
    node = &node->children[i];
  }
  return state.cursor < node->children.size() && state.elapsed_ms >= 0 && state.cycles >= 0;
}

ScanState tick(const ScanNode& layout, ScanState state, const ScanConfig& config, std::int64_t dt_ms) {
  if (dt_ms <= 0) return state;
  state.elapsed_ms += dt_ms;
  while (state.elapsed_ms >= config.scan_period_ms) {
    const auto size = current_level(layout, state).children.size();
    if (state.path.empty() && state.cycles >= config.max_cycles) {
      // Saturated at the root: nothing but the cursor changes from here on.
      const auto steps = state.elapsed_ms / config.scan_period_ms;
      state.elapsed_ms -= steps * config.scan_period_ms;
      state.cursor = (state.cursor + static_cast<std::size_t>(steps % static_cast<std::int64_t>(size))) % size;
      break;
    }
    state.elapsed_ms -= config.scan_period_ms;
    state.cursor = (state.cursor + 1) % size;
    if (state.cursor != 0) continue;
    ++state.cycles;
    if (state.cycles < config.max_cycles) continue;
    if (!state.path.empty()) {
      state.path.pop_back();
      state.cursor = 0;
      state.cycles = 0;
    } else {
      state.cycles = config.max_cycles;
    }
  }
  return state;
}

std::pair<ScanState, std::optional<KeyAction>> press(const ScanNode& layout, ScanState state) {
  const auto& option = highlighted(layout, state);
  std::optional<KeyAction> action;
  if (option.is_group()) {
    state.path.push_back(state.cursor);
  } else {
    action = option.action;
  }
  state.cursor = 0;
  state.elapsed_ms = 0;
  state.cycles = 0;
  return {std::move(state), std::move(action)};
}

}  // namespace easyvoice::scankb
