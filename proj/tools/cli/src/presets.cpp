#include "gamow/cli/presets.hpp"

#include <array>

#include "gamow/units.hpp"

namespace gamow::cli {

namespace {

constexpr double kPionLifetime = 8.97e-17;

// E_R values are standard spectroscopic constants: the Na D2 transition
// (16973.37 cm^-1), the 14.4125 keV Fe-57 Moessbauer line and the pi0 mass.
const std::array<Preset, 3> kPresets{{
    {"sodium-3p", 2.1044, 4.0538e-8, 0.0091e-8, 16.254e-9, 0.022e-9,
     "Na 3p 2P3/2 natural linewidth 9.802(22) MHz = 4.0538(91)e-8 eV from trapped ultracold atoms; "
     "direct lifetime 16.254(22) ns from beam-gas-laser spectroscopy"},
    {"fe57", 14412.5, 4.7e-9, 0.0, 1.4e-7, 0.0,
     "Fe-57 first excited state: Moessbauer linewidth 4.7e-9 eV; direct lifetime 1.4e-7 s, "
     "reported to agree with the width within 10 percent"},
    {"pi0", 134.9768e6, units::kHbarEvS / kPionLifetime, 0.0, kPionLifetime, 0.0,
     "neutral pion: lifetime 8.97e-17 s measured directly from the time-dilated decay length of fast pions; "
     "width taken as hbar / tau"},
}};

}  // namespace

std::span<const Preset> presets() { return kPresets; }

std::optional<Preset> find_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

}  // namespace gamow::cli
