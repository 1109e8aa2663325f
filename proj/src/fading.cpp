#include "icstab/fading.hpp"

#include <complex>
#include <vector>

namespace icstab {
namespace {

using Complex = std::complex<double>;

// a^H b
Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

double norm2(const std::vector<Complex>& a) { return inner(a, a).real(); }

// Component of b orthogonal to a.
std::vector<Complex> project_out(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  const Complex coeff = inner(a, b) / norm2(a);
  std::vector<Complex> out(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) out[k] = b[k] - coeff * a[k];
  return out;
}

}  // namespace

FadingSampler::FadingSampler(AntennaConfig antennas) : antennas_(antennas) { antennas_.validate(); }

SlotGains FadingSampler::draw(Rng& rng) {
  SlotGains g;
  if (antennas_.beamformer == Beamformer::Single) {
    g.signal[0] = exponential_(rng);
    g.cross[0] = exponential_(rng);
    g.signal[1] = exponential_(rng);
    g.cross[1] = exponential_(rng);
    return g;
  }

  const auto m = static_cast<std::size_t>(antennas_.antennas);
  auto vec = [&] {
    std::vector<Complex> v(m);
    for (auto& c : v) c = Complex(normal_(rng), normal_(rng));
    return v;
  };
  // h[from][to]: channel vector S_from -> D_to
  const std::vector<Complex> h11 = vec(), h12 = vec(), h21 = vec(), h22 = vec();

  if (antennas_.beamformer == Beamformer::Mrt) {
    const double n11 = norm2(h11), n22 = norm2(h22);
    g.signal[0] = n11;
    g.signal[1] = n22;
    g.cross[0] = std::norm(inner(h21, h22)) / n22;  // |h21^H w2|^2, w2 = h22/|h22|
    g.cross[1] = std::norm(inner(h12, h11)) / n11;
    return g;
  }

  // ZF: w_i along the part of h_ii orthogonal to h_ij.
  const auto v1 = project_out(h12, h11);
  const auto v2 = project_out(h21, h22);
  const double n1 = norm2(v1), n2 = norm2(v2);
  g.signal[0] = n1;
  g.signal[1] = n2;
  g.cross[0] = n2 > 0.0 ? std::norm(inner(h21, v2)) / n2 : 0.0;
  g.cross[1] = n1 > 0.0 ? std::norm(inner(h12, v1)) / n1 : 0.0;
  return g;
}

bool decodes(Link link, bool interferer_active, Decoder decoder, const SlotGains& gains,
             const ChannelParams& params) {
  const Link j = other(link);
  const auto& topo = params.topology;
  const double gamma_i = params.thresholds[link];
  const double own = gains.signal[index(link)] * topo.gain(link, link) * params.power[link];
  if (!interferer_active) return own >= gamma_i;

  const double interference = gains.cross[index(link)] * topo.gain(j, link) * params.power[j];
  if (decoder == Decoder::Ian) return own >= gamma_i * (1.0 + interference);
  // SIC: S_j's packet must clear gamma_j with S_i as noise, then S_i clears gamma_i alone.
  return interference >= params.thresholds[j] * (1.0 + own) && own >= gamma_i;
}

}  // namespace icstab
