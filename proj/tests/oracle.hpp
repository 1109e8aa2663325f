#pragma once

// Reference computations for the tests, written independently of the
// library's closed forms and samplers.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "icstab/channel.hpp"

namespace oracle {

inline icstab::Topology t1() { return {10.0, 5.0, 5.0, 10.0, 2.0}; }
inline icstab::Topology t2() { return {14.0, 15.0, 10.0, 14.0, 2.0}; }

inline icstab::ChannelParams params(const icstab::Topology& t, double p1, double p2, double g1, double g2) {
  return {t, {p1, p2}, {g1, g2}};
}
inline icstab::ChannelParams t1_params(double g1 = 0.5, double g2 = 0.4) { return params(t1(), 800, 800, g1, g2); }
inline icstab::ChannelParams t2_params(double g1 = 0.5, double g2 = 0.4) { return params(t2(), 600, 450, g1, g2); }

struct Link {
  double own_snr;    // p_i r_ii^-a
  double cross_snr;  // p_j r_ji^-a
  double gamma_i;
  double gamma_j;
};

inline Link link_view(const icstab::ChannelParams& c, int i) {
  const auto& t = c.topology;
  const double rii = i == 1 ? t.r11 : t.r22;
  const double rji = i == 1 ? t.r21 : t.r12;
  const double pi = i == 1 ? c.power.p1 : c.power.p2;
  const double pj = i == 1 ? c.power.p2 : c.power.p1;
  return {pi * std::pow(rii, -t.alpha), pj * std::pow(rji, -t.alpha), i == 1 ? c.thresholds.gamma1 : c.thresholds.gamma2,
          i == 1 ? c.thresholds.gamma2 : c.thresholds.gamma1};
}

template <typename F>
double integrate_tail(F f, double from) {
  boost::math::quadrature::gauss_kronrod<double, 61> gk;
  return gk.integrate(f, from, std::numeric_limits<double>::infinity(), 30, 1e-13);
}

// SIC success as the integral over the own-link gain of the probability that
// the interferer is decodable first.
inline double sic_quadrature(const icstab::ChannelParams& c, int i) {
  const Link l = link_view(c, i);
  const double start = l.gamma_i / l.own_snr;
  return integrate_tail(
      [&](double x) { return std::exp(-(l.gamma_j + l.gamma_j * l.own_snr * x) / l.cross_snr) * std::exp(-x); },
      start);
}

// IAN success by integrating the exponential interference law.
inline double ian_quadrature(const icstab::ChannelParams& c, int i) {
  const Link l = link_view(c, i);
  return integrate_tail([&](double y) { return std::exp(-l.gamma_i * (1.0 + l.cross_snr * y) / l.own_snr) * std::exp(-y); },
                        0.0);
}

// Signal Gamma(2, 1) (two-antenna MRT) against unit-mean exponential interference.
inline double mrt2_quadrature(const icstab::ChannelParams& c, int i) {
  const Link l = link_view(c, i);
  return integrate_tail(
      [&](double y) {
        const double x = l.gamma_i * (1.0 + l.cross_snr * y) / l.own_snr;
        return (1.0 + x) * std::exp(-x) * std::exp(-y);
      },
      0.0);
}

enum class Event { Alone, Ian, Sic };

// Straightforward sampler: four exponential gains per draw.
inline double monte_carlo(const icstab::ChannelParams& c, int i, Event e, std::uint64_t n, std::uint32_t seed) {
  const Link l = link_view(c, i);
  std::mt19937 gen(seed);
  std::exponential_distribution<double> exp1(1.0);
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    const double own = l.own_snr * exp1(gen);
    const double cross = l.cross_snr * exp1(gen);
    bool ok = false;
    switch (e) {
      case Event::Alone: ok = own >= l.gamma_i; break;
      case Event::Ian: ok = own / (1.0 + cross) >= l.gamma_i; break;
      case Event::Sic: ok = cross / (1.0 + own) >= l.gamma_j && own >= l.gamma_i; break;
    }
    hits += ok;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

inline double binomial_sigma(double p, std::uint64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

}  // namespace oracle
