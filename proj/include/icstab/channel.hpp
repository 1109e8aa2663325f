#pragma once

// Link-level success probabilities for the two-user interference channel.
//
// Source S_i talks to destination D_i; S_j interferes at D_i. All powers are
// normalized to unit noise power, fading power gains are unit-mean, and the
// large-scale gain of a link of length r is r^(-alpha).

#include <cstddef>
#include <functional>
#include <string_view>
#include <utility>
#include <vector>

namespace icstab {

enum class Link : int { One = 1, Two = 2 };

constexpr Link other(Link l) noexcept { return l == Link::One ? Link::Two : Link::One; }
constexpr std::size_t index(Link l) noexcept { return l == Link::One ? 0 : 1; }
constexpr int number(Link l) noexcept { return static_cast<int>(l); }

double pathloss(double distance, double alpha);

struct Topology {
  double r11 = 1.0;  // S1 -> D1
  double r12 = 1.0;  // S1 -> D2
  double r21 = 1.0;  // S2 -> D1
  double r22 = 1.0;  // S2 -> D2
  double alpha = 2.0;

  void validate() const;
  double distance(Link from, Link to) const;
  // Large-scale gain of the S_from -> D_to link.
  double gain(Link from, Link to) const { return pathloss(distance(from, to), alpha); }
};

struct PowerAllocation {
  double p1 = 0.0;
  double p2 = 0.0;

  void validate() const;
  double operator[](Link l) const { return l == Link::One ? p1 : p2; }
};

struct SinrThresholds {
  double gamma1 = 0.0;
  double gamma2 = 0.0;

  void validate() const;
  double operator[](Link l) const { return l == Link::One ? gamma1 : gamma2; }
};

struct ChannelParams {
  Topology topology;
  PowerAllocation power;
  SinrThresholds thresholds;

  void validate() const;
};

enum class Decoder { Ian, Sic };
enum class Beamformer { Single, Mrt, Zf };
enum class Scenario { Alone, Both };

// Both transmitters use the same beamformer and antenna count.
struct AntennaConfig {
  Beamformer beamformer = Beamformer::Single;
  int antennas = 1;

  void validate() const;
};

struct StrategyPair {
  Decoder rx1 = Decoder::Ian;
  Decoder rx2 = Decoder::Ian;
  AntennaConfig antennas;

  Decoder decoder(Link l) const { return l == Link::One ? rx1 : rx2; }
  // SIC is only defined for single-antenna links.
  void validate() const;
};

std::string_view to_string(Decoder d);
std::string_view to_string(Beamformer b);
std::string_view to_string(Scenario s);
Decoder parse_decoder(std::string_view name);
Beamformer parse_beamformer(std::string_view name);

// gamma_i / (p_i * l(r_ii)): the own-link threshold in fading-gain units.
// Infinite when the link has no power and a positive threshold.
double normalized_threshold(Link link, const ChannelParams& params);

// Pr(SNR_i >= gamma_i) with only S_i active.
double snr_success(Link link, const ChannelParams& params);
// Pr(SINR_i >= gamma_i) with S_j treated as noise.
double ian_success(Link link, const ChannelParams& params);
// Pr(SINR_ji >= gamma_j and SNR_i >= gamma_i): decode S_j first, cancel it,
// then decode S_i interference-free. Zero when S_j is silent but gamma_j > 0.
double sic_success(Link link, const ChannelParams& params);

// Signal power law with complementary CDF e^(-x) * sum_k a_k x^k.
struct FadingCoefficientSpec {
  std::vector<std::pair<int, double>> terms;  // (k, a_k)

  static FadingCoefficientSpec rayleigh();
  static FadingCoefficientSpec gamma(int shape);  // a_k = 1/k!, k < shape

  int max_order() const;
  double ccdf(double x) const;
  // Spot check that 1 - ccdf is a distribution function on a grid.
  bool is_valid_distribution() const;
};

// Laplace transform of the interference power together with its derivatives.
struct LaplaceTransform {
  int max_order = 0;
  std::function<double(int order, double s)> derivative;
};

// I = scale * Exp(1): L(s) = 1 / (1 + scale * s).
LaplaceTransform exponential_interference_laplace(double scale);

// Success probability of Pr(|h|^2 >= phi (1 + I)) for a signal law from
// `spec` and independent interference with transform `interference`.
double general_success(const FadingCoefficientSpec& spec, double phi,
                       const LaplaceTransform& interference);

// Pr(Gamma(shape, 1) >= x) = sum_{k < shape} x^k e^-x / k!; zero for shape <= 0.
double gamma_tail(int shape, double x);

// MRT: signal ~ Gamma(M, 1), interference ~ Exp(1).
// ZF: signal ~ Gamma(M - 1, 1), no interference, in both scenarios.
double miso_success(Beamformer beamformer, int antennas, Link link,
                    const ChannelParams& params, Scenario scenario);

struct SuccessProfile {
  double p1_alone = 1.0;
  double p2_alone = 1.0;
  double p1_both = 1.0;
  double p2_both = 1.0;

  double alone(Link l) const { return l == Link::One ? p1_alone : p2_alone; }
  double both(Link l) const { return l == Link::One ? p1_both : p2_both; }
  bool in_unit_interval() const;
  bool has_zero_entry() const;
};

SuccessProfile success_profile(const StrategyPair& strategy, const ChannelParams& params);

}  // namespace icstab
