#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace gamow::cli {

/// Named resonance with measured constants. Energies in eV, times in s.
struct Preset {
  std::string_view name;
  double e_r;
  double gamma;
  double gamma_uncertainty;  ///< 0 when not quoted
  double tau_direct;         ///< directly measured lifetime
  double tau_direct_uncertainty;
  std::string_view source;   ///< one-line description for --explain
};

std::span<const Preset> presets();
std::optional<Preset> find_preset(std::string_view name);

}  // namespace gamow::cli
