#pragma once

#include <string>
#include <string_view>

#include "phragmen/experiment.hpp"

namespace phragmen {

enum class ConfigFormat { kJson, kToml };

// Keys: distributions ([[a, b], ...]), xi (number or list), rules (list of
// rule strings), n, m, k, runs, p, tau, delta, seed, groups (list of cut
// points), workers. Missing keys keep SimConfig::defaults(); unknown keys are
// rejected. Only the TOML subset needed here is understood: top-level
// `key = value` pairs with numbers, strings and (nested, possibly
// multi-line) arrays, plus comments.
SimConfig parse_sim_config(std::string_view text, ConfigFormat format);

// Format from the extension: ".json" is JSON, everything else TOML.
SimConfig load_sim_config(const std::string& path);

}  // namespace phragmen
