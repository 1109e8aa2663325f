#include "icstab/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "icstab/errors.hpp"

namespace icstab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// num / den with 0/x = 0 and x/0 = inf, which is what every closed form below
// needs at zero power or zero threshold.
double ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  if (den == 0.0) return kInf;
  return num / den;
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

double pathloss(double distance, double alpha) {
  if (!(distance > 0.0)) throw DomainError("link distance must be positive");
  if (!(alpha >= 0.0)) throw DomainError("pathloss exponent must be non-negative");
  return std::pow(distance, -alpha);
}

void Topology::validate() const {
  for (double r : {r11, r12, r21, r22}) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("link distances must be positive and finite");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("pathloss exponent must be non-negative");
}

double Topology::distance(Link from, Link to) const {
  if (from == Link::One) return to == Link::One ? r11 : r12;
  return to == Link::One ? r21 : r22;
}

void PowerAllocation::validate() const {
  if (!(p1 >= 0.0) || !(p2 >= 0.0) || !std::isfinite(p1) || !std::isfinite(p2))
    throw DomainError("transmit powers must be non-negative and finite");
}

void SinrThresholds::validate() const {
  if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0) || !std::isfinite(gamma1) || !std::isfinite(gamma2))
    throw DomainError("SINR thresholds must be non-negative and finite");
}

void ChannelParams::validate() const {
  topology.validate();
  power.validate();
  thresholds.validate();
}

void AntennaConfig::validate() const {
  switch (beamformer) {
    case Beamformer::Single:
      if (antennas != 1) throw DomainError("single-antenna transmitters have exactly one antenna");
      break;
    case Beamformer::Mrt:
      if (antennas < 1) throw DomainError("MRT needs at least one antenna");
      break;
    case Beamformer::Zf:
      if (antennas < 2) throw DomainError("ZF needs at least two antennas");
      break;
  }
}

void StrategyPair::validate() const {
  antennas.validate();
  if (antennas.beamformer != Beamformer::Single && (rx1 == Decoder::Sic || rx2 == Decoder::Sic))
    throw DomainError("SIC receivers are only supported with single-antenna transmitters");
}

std::string_view to_string(Decoder d) { return d == Decoder::Ian ? "ian" : "sic"; }

std::string_view to_string(Beamformer b) {
  switch (b) {
    case Beamformer::Single: return "single";
    case Beamformer::Mrt: return "mrt";
    case Beamformer::Zf: return "zf";
  }
  return "single";
}

std::string_view to_string(Scenario s) { return s == Scenario::Alone ? "alone" : "both"; }

Decoder parse_decoder(std::string_view name) {
  if (name == "ian") return Decoder::Ian;
  if (name == "sic") return Decoder::Sic;
  throw ConfigError("unknown decoder '" + std::string(name) + "' (expected ian|sic)");
}

Beamformer parse_beamformer(std::string_view name) {
  if (name == "single") return Beamformer::Single;
  if (name == "mrt") return Beamformer::Mrt;
  if (name == "zf") return Beamformer::Zf;
  throw ConfigError("unknown beamformer '" + std::string(name) + "' (expected single|mrt|zf)");
}

double normalized_threshold(Link link, const ChannelParams& params) {
  const double own = params.power[link] * params.topology.gain(link, link);
  return ratio(params.thresholds[link], own);
}

double snr_success(Link link, const ChannelParams& params) {
  return std::exp(-normalized_threshold(link, params));
}

double ian_success(Link link, const ChannelParams& params) {
  const Link j = other(link);
  const auto& topo = params.topology;
  const double own = params.power[link] * topo.gain(link, link);
  const double cross = params.power[j] * topo.gain(j, link);
  const double penalty = ratio(params.thresholds[link] * cross, own);
  return clamp_probability(snr_success(link, params) / (1.0 + penalty));
}

double sic_success(Link link, const ChannelParams& params) {
  const Link j = other(link);
  const auto& topo = params.topology;
  const auto& th = params.thresholds;
  const double own = params.power[link] * topo.gain(link, link);
  const double cross = params.power[j] * topo.gain(j, link);
  const double cancel = std::exp(-ratio(th[j] * (1.0 + th[link]), cross));
  const double penalty = ratio(th[j] * own, cross);
  if (std::isinf(penalty)) return 0.0;
  return clamp_probability(snr_success(link, params) * cancel / (1.0 + penalty));
}

FadingCoefficientSpec FadingCoefficientSpec::rayleigh() { return FadingCoefficientSpec{{{0, 1.0}}}; }

FadingCoefficientSpec FadingCoefficientSpec::gamma(int shape) {
  FadingCoefficientSpec spec;
  double factorial = 1.0;
  for (int k = 0; k < shape; ++k) {
    if (k > 0) factorial *= k;
    spec.terms.emplace_back(k, 1.0 / factorial);
  }
  return spec;
}

int FadingCoefficientSpec::max_order() const {
  int m = 0;
  for (const auto& [k, a] : terms) m = std::max(m, k);
  return m;
}

double FadingCoefficientSpec::ccdf(double x) const {
  if (std::isinf(x)) return 0.0;
  double s = 0.0;
  for (const auto& [k, a] : terms) s += a * std::pow(x, k);
  return std::exp(-x) * s;
}

bool FadingCoefficientSpec::is_valid_distribution() const {
  if (terms.empty()) return false;
  for (const auto& [k, a] : terms) {
    if (k < 0 || !std::isfinite(a)) return false;
  }
  constexpr double kSlack = 1e-12;
  double previous = 1.0 - ccdf(0.0);
  if (previous < -kSlack) return false;
  for (int i = 1; i <= 4000; ++i) {
    const double x = 0.025 * i;
    const double cdf = 1.0 - ccdf(x);
    if (cdf < previous - kSlack || cdf > 1.0 + kSlack) return false;
    previous = cdf;
  }
  return true;
}

LaplaceTransform exponential_interference_laplace(double scale) {
  if (!(scale >= 0.0)) throw DomainError("interference scale must be non-negative");
  LaplaceTransform lt;
  lt.max_order = std::numeric_limits<int>::max();
  // d^m/ds^m (1 + c s)^-1 = (-1)^m m! c^m (1 + c s)^-(m+1)
  lt.derivative = [scale](int m, double s) {
    const double base = 1.0 + scale * s;
    double factorial = 1.0;
    for (int i = 2; i <= m; ++i) factorial *= i;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * factorial * std::pow(scale, m) / std::pow(base, m + 1);
  };
  return lt;
}

double general_success(const FadingCoefficientSpec& spec, double phi,
                       const LaplaceTransform& interference) {
  if (!(phi >= 0.0)) throw DomainError("normalized threshold must be non-negative");
  if (!interference.derivative || interference.max_order < spec.max_order())
    throw ConfigError("interference Laplace transform lacks derivative order " +
                      std::to_string(spec.max_order()));
  if (std::isinf(phi)) return 0.0;

  const double decay = std::exp(-phi);
  double total = 0.0;
  for (const auto& [k, a] : spec.terms) {
    const double lead = a * std::pow(phi, k) * decay;
    for (int m = 0; m <= k; ++m) {
      // (-1)^(2k - m) == (-1)^m
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      total += lead * binomial(k, m) * sign * interference.derivative(m, phi);
    }
  }
  return clamp_probability(total);
}

double gamma_tail(int shape, double x) {
  if (shape <= 0) return 0.0;
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  double term = std::exp(-x);
  double sum = term;
  for (int k = 1; k < shape; ++k) {
    term *= x / k;
    sum += term;
  }
  return clamp_probability(sum);
}

double miso_success(Beamformer beamformer, int antennas, Link link,
                    const ChannelParams& params, Scenario scenario) {
  const double phi = normalized_threshold(link, params);
  switch (beamformer) {
    case Beamformer::Mrt: {
      if (antennas < 1) throw DomainError("MRT needs at least one antenna");
      if (scenario == Scenario::Alone) return gamma_tail(antennas, phi);
      const Link j = other(link);
      const double scale = params.power[j] * params.topology.gain(j, link);
      return general_success(FadingCoefficientSpec::gamma(antennas), phi,
                             exponential_interference_laplace(scale));
    }
    case Beamformer::Zf:
      if (antennas < 2) throw DomainError("ZF needs at least two antennas");
      return gamma_tail(antennas - 1, phi);
    case Beamformer::Single:
      break;
  }
  throw DomainError("miso_success needs an MRT or ZF beamformer");
}

bool SuccessProfile::in_unit_interval() const {
  for (double p : {p1_alone, p2_alone, p1_both, p2_both}) {
    if (!(p >= 0.0 && p <= 1.0)) return false;
  }
  return true;
}

bool SuccessProfile::has_zero_entry() const {
  return p1_alone == 0.0 || p2_alone == 0.0 || p1_both == 0.0 || p2_both == 0.0;
}

SuccessProfile success_profile(const StrategyPair& strategy, const ChannelParams& params) {
  strategy.validate();
  const auto& ant = strategy.antennas;
  auto alone = [&](Link l) {
    if (ant.beamformer == Beamformer::Single) return snr_success(l, params);
    return miso_success(ant.beamformer, ant.antennas, l, params, Scenario::Alone);
  };
  auto both = [&](Link l) {
    if (ant.beamformer != Beamformer::Single)
      return miso_success(ant.beamformer, ant.antennas, l, params, Scenario::Both);
    return strategy.decoder(l) == Decoder::Ian ? ian_success(l, params) : sic_success(l, params);
  };
  return SuccessProfile{alone(Link::One), alone(Link::Two), both(Link::One), both(Link::Two)};
}

}  // namespace icstab
