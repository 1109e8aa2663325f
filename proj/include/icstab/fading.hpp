#pragma once

// Per-slot small-scale fading draws and the exact decoding events they feed.

#include <array>

#include "icstab/channel.hpp"
#include "icstab/rng.hpp"

namespace icstab {

// Effective fading power gains seen at each destination in one slot.
struct SlotGains {
  std::array<double, 2> signal{};  // own link S_i -> D_i after beamforming
  std::array<double, 2> cross{};   // S_j -> D_i after S_j's beamforming
};

// Draws SlotGains for a given antenna configuration. Single antennas use
// Rayleigh power gains; MRT and ZF draw complex Gaussian channel vectors and
// form the beamformers explicitly, so no closed-form law is assumed.
class FadingSampler {
 public:
  explicit FadingSampler(AntennaConfig antennas);

  SlotGains draw(Rng& rng);

 private:
  AntennaConfig antennas_;
  std::exponential_distribution<double> exponential_{1.0};
  std::normal_distribution<double> normal_{0.0, 0.7071067811865476};  // CN(0,1) parts
};

// Whether D_link decodes S_link's packet given the gains of this slot.
// `interferer_active` is whether S_j transmits in the same slot.
bool decodes(Link link, bool interferer_active, Decoder decoder, const SlotGains& gains,
             const ChannelParams& params);

}  // namespace icstab
