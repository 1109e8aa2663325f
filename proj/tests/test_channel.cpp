#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "icstab/channel.hpp"
#include "icstab/errors.hpp"
#include "oracle.hpp"

using namespace icstab;
using Catch::Approx;

TEST_CASE("pathloss values") {
  CHECK(pathloss(1.0, 2.0) == 1.0);
  CHECK(pathloss(10.0, 2.0) == Approx(0.01).epsilon(1e-15));
  CHECK(pathloss(15.0, 2.0) == Approx(std::exp(-2.0 * std::log(15.0))).epsilon(1e-14));
  CHECK(pathloss(15.0, 2.0) == Approx(0.0044444444).epsilon(0).margin(5e-11));
  CHECK_THROWS_AS(pathloss(0.0, 2.0), DomainError);
  for (double r = 0.5; r < 50.0; r += 0.5) CHECK(pathloss(r, 3.5) >= pathloss(r + 1.0, 3.5));
}

TEST_CASE("topology validation") {
  Topology t = oracle::t1();
  CHECK_NOTHROW(t.validate());
  t.r12 = -1.0;
  CHECK_THROWS_AS(t.validate(), DomainError);
  t = oracle::t1();
  t.alpha = -0.1;
  CHECK_THROWS_AS(t.validate(), DomainError);
}

TEST_CASE("single-antenna closed forms at T1") {
  const auto c = oracle::t1_params();
  CHECK(snr_success(Link::One, c) == Approx(std::exp(-0.0625)).epsilon(1e-14));
  CHECK(snr_success(Link::One, c) == Approx(0.939413).epsilon(0).margin(5e-7));
  CHECK(ian_success(Link::One, c) == Approx(std::exp(-0.0625) / 3.0).epsilon(1e-14));
  CHECK(ian_success(Link::One, c) == Approx(0.313138).epsilon(0).margin(5e-7));
  CHECK(ian_success(Link::Two, c) == Approx(std::exp(-0.05) / 2.6).epsilon(1e-14));
  CHECK(ian_success(Link::Two, c) == Approx(0.365857).epsilon(0).margin(5e-7));
  // The integral oracle fixes the SIC values; hand-rounded figures agree to ~3e-6.
  CHECK(sic_success(Link::One, c) == Approx(oracle::sic_quadrature(c, 1)).epsilon(1e-10));
  CHECK(sic_success(Link::Two, c) == Approx(oracle::sic_quadrature(c, 2)).epsilon(1e-10));
  CHECK(sic_success(Link::One, c) == Approx(0.838151).epsilon(0).margin(5e-6));
  CHECK(sic_success(Link::Two, c) == Approx(0.827243).epsilon(0).margin(5e-6));
}

TEST_CASE("closed forms bracket an independent Monte Carlo") {
  const std::uint64_t n = 400'000;
  for (const auto& c : {oracle::t1_params(), oracle::t2_params(2.0, 1.4)}) {
    for (int i : {1, 2}) {
      const Link l = i == 1 ? Link::One : Link::Two;
      const std::pair<double, oracle::Event> cases[] = {{snr_success(l, c), oracle::Event::Alone},
                                                        {ian_success(l, c), oracle::Event::Ian},
                                                        {sic_success(l, c), oracle::Event::Sic}};
      std::uint32_t seed = 11;
      for (const auto& [p, e] : cases) {
        const double mc = oracle::monte_carlo(c, i, e, n, seed++);
        CHECK(std::abs(mc - p) <= 5.0 * oracle::binomial_sigma(p, n) + 1e-12);
      }
    }
  }
}

TEST_CASE("trivial threshold and power limits") {
  auto c = oracle::t1_params(0.0, 0.0);
  for (Link l : {Link::One, Link::Two}) {
    CHECK(snr_success(l, c) == 1.0);
    CHECK(ian_success(l, c) == 1.0);
    CHECK(sic_success(l, c) == 1.0);
  }
  c = oracle::t1_params();
  c.power.p1 = 0.0;
  CHECK(snr_success(Link::One, c) == 0.0);
  CHECK(ian_success(Link::One, c) == 0.0);
  // Silent interferer: IAN reduces to SNR, SIC cannot decode the absent packet.
  CHECK(ian_success(Link::Two, c) == snr_success(Link::Two, c));
  CHECK(sic_success(Link::Two, c) == 0.0);
  c = oracle::t1_params(0.5, 0.0);
  CHECK(sic_success(Link::One, c) == Approx(snr_success(Link::One, c)).epsilon(1e-15));
}

TEST_CASE("SIC with an unbounded interferer threshold never succeeds") {
  const auto c = oracle::t1_params(0.5, 1e300);
  CHECK(sic_success(Link::One, c) == 0.0);
}

TEST_CASE("general success reductions") {
  const auto c = oracle::t1_params();
  for (Link l : {Link::One, Link::Two}) {
    const Link j = other(l);
    const double scale = c.power[j] * c.topology.gain(j, l);
    const double phi = normalized_threshold(l, c);
    const double g = general_success(FadingCoefficientSpec::rayleigh(), phi, exponential_interference_laplace(scale));
    CHECK(std::abs(g - ian_success(l, c)) <= 1e-12 * ian_success(l, c));
  }
  CHECK(general_success(FadingCoefficientSpec::rayleigh(), 0.0, exponential_interference_laplace(3.0)) == 1.0);
  CHECK(general_success(FadingCoefficientSpec::gamma(4), 0.0, exponential_interference_laplace(3.0)) == 1.0);
  LaplaceTransform shallow = exponential_interference_laplace(1.0);
  shallow.max_order = 0;
  CHECK_THROWS_AS(general_success(FadingCoefficientSpec::gamma(2), 0.1, shallow), ConfigError);
}

TEST_CASE("analytic Laplace derivatives match finite differences") {
  const auto lt = exponential_interference_laplace(2.5);
  const double s = 0.3, h = 1e-4;
  const double d1 = (lt.derivative(0, s + h) - lt.derivative(0, s - h)) / (2 * h);
  const double d2 = (lt.derivative(0, s + h) - 2 * lt.derivative(0, s) + lt.derivative(0, s - h)) / (h * h);
  CHECK(lt.derivative(1, s) == Approx(d1).epsilon(1e-6));
  CHECK(lt.derivative(2, s) == Approx(d2).epsilon(1e-4));
}

TEST_CASE("fading coefficient specs are distributions") {
  CHECK(FadingCoefficientSpec::rayleigh().is_valid_distribution());
  for (int m = 1; m <= 8; ++m) CHECK(FadingCoefficientSpec::gamma(m).is_valid_distribution());
  CHECK_FALSE(FadingCoefficientSpec{{{0, 1.0}, {1, -2.0}}}.is_valid_distribution());
  CHECK_FALSE(FadingCoefficientSpec{}.is_valid_distribution());
}

TEST_CASE("MISO closed forms") {
  const auto c = oracle::t1_params();
  CHECK(miso_success(Beamformer::Mrt, 1, Link::One, c, Scenario::Both) ==
        Approx(ian_success(Link::One, c)).epsilon(1e-13));
  CHECK(miso_success(Beamformer::Mrt, 1, Link::Two, c, Scenario::Alone) ==
        Approx(snr_success(Link::Two, c)).epsilon(1e-14));
  CHECK(miso_success(Beamformer::Mrt, 2, Link::One, c, Scenario::Alone) ==
        Approx(1.0625 * std::exp(-0.0625)).epsilon(1e-14));
  CHECK(miso_success(Beamformer::Mrt, 2, Link::One, c, Scenario::Alone) == Approx(0.998124).epsilon(0).margin(5e-6));
  const double mrt2 = miso_success(Beamformer::Mrt, 2, Link::One, c, Scenario::Both);
  CHECK(mrt2 == Approx(oracle::mrt2_quadrature(c, 1)).epsilon(1e-10));
  CHECK(mrt2 == Approx(0.541468).epsilon(0).margin(1e-6));
  CHECK(miso_success(Beamformer::Zf, 2, Link::One, c, Scenario::Both) == Approx(0.939413).epsilon(0).margin(5e-7));
  CHECK(miso_success(Beamformer::Zf, 2, Link::One, c, Scenario::Alone) ==
        miso_success(Beamformer::Zf, 2, Link::One, c, Scenario::Both));
  CHECK_THROWS_AS(miso_success(Beamformer::Zf, 1, Link::One, c, Scenario::Both), DomainError);
  CHECK_THROWS_AS(miso_success(Beamformer::Single, 1, Link::One, c, Scenario::Both), DomainError);
}

TEST_CASE("success profiles compose per receiver") {
  const auto c = oracle::t1_params();
  const auto ian = success_profile({Decoder::Ian, Decoder::Ian, {}}, c);
  CHECK(ian.p1_alone == Approx(0.939413).epsilon(0).margin(5e-7));
  CHECK(ian.p2_alone == Approx(0.951229).epsilon(0).margin(5e-7));
  CHECK(ian.p1_both == Approx(0.313138).epsilon(0).margin(5e-7));
  CHECK(ian.p2_both == Approx(0.365857).epsilon(0).margin(5e-7));
  const auto sic = success_profile({Decoder::Sic, Decoder::Sic, {}}, c);
  CHECK(sic.p1_both == sic_success(Link::One, c));
  CHECK(sic.p2_both == sic_success(Link::Two, c));
  const auto mixed = success_profile({Decoder::Sic, Decoder::Ian, {}}, c);
  CHECK(mixed.p1_both == sic.p1_both);
  CHECK(mixed.p2_both == ian.p2_both);
  CHECK_THROWS_AS(success_profile({Decoder::Sic, Decoder::Ian, {Beamformer::Mrt, 2}}, c), DomainError);
}

TEST_CASE("random draws stay in the unit interval and both <= alone") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(1.0, 30.0), power(0.0, 1000.0), gamma(0.0, 5.0), alpha(0.0, 4.0);
  for (int k = 0; k < 10'000; ++k) {
    const ChannelParams c{{dist(gen), dist(gen), dist(gen), dist(gen), alpha(gen)},
                          {power(gen), power(gen)},
                          {gamma(gen), gamma(gen)}};
    for (Link l : {Link::One, Link::Two}) {
      const double s = snr_success(l, c), i = ian_success(l, c), x = sic_success(l, c);
      for (double p : {s, i, x}) REQUIRE((p >= 0.0 && p <= 1.0));
      CHECK(i <= s);
      CHECK(x <= s);
      for (int m : {1, 2, 4}) {
        const double mrt = miso_success(Beamformer::Mrt, m, l, c, Scenario::Both);
        REQUIRE((mrt >= 0.0 && mrt <= 1.0));
        CHECK(mrt <= miso_success(Beamformer::Mrt, m, l, c, Scenario::Alone) + 1e-15);
      }
      const double zf = miso_success(Beamformer::Zf, 3, l, c, Scenario::Both);
      REQUIRE((zf >= 0.0 && zf <= 1.0));
    }
  }
}

TEST_CASE("monotone in own threshold and interferer power") {
  for (double g = 0.0; g < 5.0; g += 0.05) {
    const auto a = oracle::t1_params(g, 0.4), b = oracle::t1_params(g + 0.05, 0.4);
    CHECK(snr_success(Link::One, b) <= snr_success(Link::One, a));
    CHECK(ian_success(Link::One, b) <= ian_success(Link::One, a));
    CHECK(sic_success(Link::One, b) <= sic_success(Link::One, a));
  }
  for (double p = 0.0; p < 800.0; p += 20.0) {
    const auto a = oracle::params(oracle::t1(), 800, p, 0.5, 0.4);
    const auto b = oracle::params(oracle::t1(), 800, p + 20.0, 0.5, 0.4);
    CHECK(ian_success(Link::One, b) <= ian_success(Link::One, a));
  }
}

TEST_CASE("strategy names parse and validate") {
  CHECK(parse_decoder("sic") == Decoder::Sic);
  CHECK(parse_beamformer("zf") == Beamformer::Zf);
  CHECK_THROWS_AS(parse_decoder("nope"), ConfigError);
  CHECK_THROWS_AS((AntennaConfig{Beamformer::Single, 2}.validate()), DomainError);
  CHECK_NOTHROW((AntennaConfig{Beamformer::Mrt, 1}.validate()));
  CHECK_THROWS_AS((AntennaConfig{Beamformer::Zf, 1}.validate()), DomainError);
}
