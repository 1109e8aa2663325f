#include <omp.h>

#include <cmath>

#include "catch_amalgamated.hpp"
#include "icstab/errors.hpp"
#include "icstab/sim.hpp"
#include "oracle.hpp"

using namespace icstab;
using Catch::Approx;

namespace {

const StrategyPair kIan{Decoder::Ian, Decoder::Ian, {}};
const StrategyPair kSic{Decoder::Sic, Decoder::Sic, {}};

SimConfig base(const StrategyPair& s = kIan, ChannelParams c = oracle::t1_params()) {
  SimConfig cfg;
  cfg.channel = c;
  cfg.strategy = s;
  cfg.horizon = 100'000;
  cfg.seed = 17;
  return cfg;
}

bool same(const SimResult& a, const SimResult& b) {
  for (std::size_t i = 0; i < 2; ++i) {
    const auto &x = a.queues[i], &y = b.queues[i];
    if (x.service_rate != y.service_rate || x.mean_length != y.mean_length || x.final_length != y.final_length ||
        x.drift != y.drift || x.verdict != y.verdict)
      return false;
  }
  return a.seed == b.seed && a.horizon == b.horizon;
}

}  // namespace

TEST_CASE("no arrivals keeps both queues empty and stable") {
  SimConfig cfg = base();
  cfg.horizon = 20'000;
  const auto r = run(cfg);
  for (const auto& q : r.queues) {
    CHECK(q.final_length == 0);
    CHECK(q.mean_length == 0.0);
    CHECK(q.verdict == Verdict::Stable);
  }
  CHECK(r.system_verdict() == Verdict::Stable);
}

TEST_CASE("slot dynamics respect queue discipline") {
  for (DominantMode mode : {DominantMode::None, DominantMode::Source1Dummy, DominantMode::Source2Dummy}) {
    SimConfig cfg = base(kSic);
    cfg.arrivals = {0.4, 0.45};
    cfg.access = {0.8, 0.6};
    cfg.mode = mode;
    cfg.horizon = 50'000;
    std::uint64_t slots = 0;
    bool ok = true;
    run(cfg, {}, [&](const SlotRecord& r) {
      ++slots;
      for (std::size_t i = 0; i < 2; ++i) {
        const bool dummy = (i == 0 && mode == DominantMode::Source1Dummy) || (i == 1 && mode == DominantMode::Source2Dummy);
        ok = ok && r.departures[i] <= 1 && r.arrivals[i] <= 1;
        ok = ok && r.queue_after[i] + r.departures[i] == r.queue_before[i] + r.arrivals[i];
        if (r.queue_before[i] == 0 && !dummy) ok = ok && !r.transmitted[i] && r.departures[i] == 0;
        if (r.departures[i] == 1) ok = ok && r.decoded[i] && r.transmitted[i] && r.queue_before[i] > 0;
        if (r.decoded[i]) ok = ok && r.transmitted[i];
      }
    });
    CHECK(slots == cfg.horizon);
    CHECK(ok);
  }
}

TEST_CASE("same seed, same trajectory") {
  SimConfig cfg = base(kSic);
  cfg.arrivals = {0.5, 0.5};
  cfg.access = {0.9, 0.7};
  std::vector<SlotRecord> a, b;
  run(cfg, {}, [&](const SlotRecord& r) { a.push_back(r); });
  run(cfg, {}, [&](const SlotRecord& r) { b.push_back(r); });
  REQUIRE(a.size() == b.size());
  bool equal = true;
  for (std::size_t k = 0; k < a.size(); ++k)
    equal = equal && a[k].queue_after == b[k].queue_after && a[k].decoded == b[k].decoded &&
            a[k].transmitted == b[k].transmitted;
  CHECK(equal);
  cfg.seed = 18;
  CHECK_FALSE(same(run(cfg), run(base(kSic))));
}

TEST_CASE("seed batches are independent of execution") {
  SimConfig cfg = base();
  cfg.arrivals = {0.2, 0.3};
  const auto seeds = seed_list(5, 6);
  const auto serial = run_seeds(cfg, seeds, {}, Execution::Serial);
  for (int threads : {1, 4}) {
    omp_set_num_threads(threads);
    const auto par = run_seeds(cfg, seeds, {}, Execution::Parallel);
    for (std::size_t i = 0; i < seeds.size(); ++i) CHECK(same(serial[i], par[i]));
  }
  for (std::size_t i = 0; i < seeds.size(); ++i) CHECK(serial[i].seed == seeds[i]);
}

TEST_CASE("saturated service matches closed forms") {
  const std::uint64_t n = 1'000'000;
  for (const auto& s : {kIan, kSic}) {
    SimConfig cfg = base(s);
    cfg.mode = DominantMode::BothSaturated;
    cfg.horizon = n;
    const auto mu = saturated_service(cfg);
    const auto p = success_profile(s, cfg.channel);
    CHECK(std::abs(mu[0] - p.p1_both) <= 3.0 * oracle::binomial_sigma(p.p1_both, n) + 1e-3);
    CHECK(std::abs(mu[1] - p.p2_both) <= 3.0 * oracle::binomial_sigma(p.p2_both, n) + 1e-3);
    CHECK(std::abs(mu[0] - p.p1_both) <= 0.01);
    CHECK(std::abs(mu[1] - p.p2_both) <= 0.01);
  }
}

TEST_CASE("random access mixes the alone and both scenarios") {
  SimConfig cfg = base();
  cfg.mode = DominantMode::BothSaturated;
  cfg.access = {0.5, 1.0};
  cfg.horizon = 400'000;
  const auto mu = saturated_service(cfg);
  const auto p = success_profile(kIan, cfg.channel);
  CHECK(mu[1] == Approx(0.5 * p.p2_both + 0.5 * p.p2_alone).epsilon(0).margin(0.01));
  CHECK(mu[0] == Approx(0.5 * p.p1_both).epsilon(0).margin(0.01));
}

TEST_CASE("zero thresholds serve every transmission") {
  SimConfig cfg = base(kIan, oracle::t1_params(0.0, 0.0));
  cfg.mode = DominantMode::BothSaturated;
  cfg.access = {0.3, 0.8};
  cfg.horizon = 200'000;
  const auto mu = saturated_service(cfg);
  CHECK(mu[0] == Approx(0.3).epsilon(0).margin(0.005));
  CHECK(mu[1] == Approx(0.8).epsilon(0).margin(0.005));
  cfg.mode = DominantMode::None;
  CHECK_THROWS_AS(saturated_service(cfg), DomainError);
}

TEST_CASE("dominant system with a dummy source 1") {
  SimConfig cfg = base();
  cfg.mode = DominantMode::Source1Dummy;
  cfg.arrivals = {0.0, 0.3};
  cfg.horizon = 1'000'000;
  const auto r = run(cfg);
  const auto p = success_profile(kIan, cfg.channel);
  CHECK(r.queues[1].verdict == Verdict::Stable);
  // S1 meets interference only while queue 2 is busy, a fraction lambda2 / p2_both of slots.
  const double busy = 0.3 / p.p2_both;
  CHECK(r.queues[0].service_rate == Approx(busy * p.p1_both + (1.0 - busy) * p.p1_alone).epsilon(0).margin(0.01));
  CHECK(r.queues[1].service_rate == Approx(p.p2_both).epsilon(0).margin(0.01));
}

TEST_CASE("a saturated queue 1 is indistinguishable from the dummy source") {
  SimConfig orig = base();
  orig.arrivals = {1.0, 0.2};
  orig.horizon = 500'000;
  SimConfig dom = orig;
  dom.mode = DominantMode::Source1Dummy;
  dom.arrivals = {0.0, 0.2};
  dom.seed = 1234;
  CHECK(run(orig).queues[1].service_rate == Approx(run(dom).queues[1].service_rate).epsilon(0).margin(0.01));
}

TEST_CASE("verdict rules") {
  CHECK(verdict({1, 0, 0.0}) == Verdict::Inconclusive);
  CHECK(verdict({9'999, 0, 0.0}) == Verdict::Inconclusive);
  CHECK(verdict({1'000'000, 0, 0.0}) == Verdict::Stable);
  CHECK(verdict({1'000'000, 10'001, 0.0}) == Verdict::Inconclusive);
  CHECK(verdict({1'000'000, 5, 0.002}) == Verdict::Inconclusive);
  CHECK(verdict({1'000'000, 50'000, 0.01}) == Verdict::Unstable);
  SimConfig cfg = base();
  cfg.horizon = 1;
  const auto r = run(cfg);
  CHECK(r.queues[0].verdict == Verdict::Inconclusive);
  CHECK(r.system_verdict() == Verdict::Inconclusive);
}

TEST_CASE("config invariants") {
  SimConfig cfg = base();
  cfg.arrivals = {1.2, 0.0};
  CHECK_THROWS_AS(run(cfg), DomainError);
  cfg = base();
  cfg.horizon = 0;
  CHECK_THROWS_AS(run(cfg), DomainError);
  CHECK(parse_dominant_mode("both-saturated") == DominantMode::BothSaturated);
  CHECK_THROWS_AS(parse_dominant_mode("sometimes"), ConfigError);
}

TEST_CASE("empirical boundary") {
  SimConfig cfg = base();
  cfg.horizon = 1'000'000;
  const auto p = success_profile(kIan, cfg.channel);
  CHECK(empirical_boundary(cfg, 0.0, 0.01) == Approx(0.951229).epsilon(0).margin(0.02));
  CHECK(empirical_boundary(cfg, 0.313, 0.01) == Approx(0.366).epsilon(0).margin(0.02));
  cfg.horizon = 200'000;
  CHECK(empirical_boundary(cfg, 0.97, 0.01) == 0.0);
  CHECK(p.p1_alone < 0.97);
  cfg.horizon = 1;
  try {
    empirical_boundary(cfg, 0.1, 0.01);
    FAIL("expected a BoundaryError");
  } catch (const BoundaryError& e) {
    CHECK(e.lo() == 0.0);
    CHECK(e.hi() == 1.0);
  }
  CHECK_THROWS_AS(empirical_boundary(base(), 0.1, 0.0), DomainError);
  BoundaryOptions two;
  two.seeds = 2;
  CHECK_THROWS_AS(empirical_boundary(base(), 0.1, 0.01, two), DomainError);
}
