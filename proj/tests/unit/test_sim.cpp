#include <cmath>
#include <numeric>

#include "adrec/sim.hpp"
#include "doctest.h"

using namespace adrec;

namespace {

SimConfig small_config() {
    SimConfig cfg;
    cfg.params.molecules_per_bit = 100;
    cfg.dt = 1e-4;
    cfg.frame.bits = {1};
    cfg.frame.threshold = 10;
    cfg.horizon = 0.1;
    cfg.trials = 4;
    cfg.seed = 99;
    return cfg;
}

}  // namespace

TEST_CASE("seeded rng basics") {
    SplitRng a(123), b(123), c(124);
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
    }
    bool differs = false;
    SplitRng a2(123);
    for (int i = 0; i < 10; ++i) differs |= a2.next_u64() != c.next_u64();
    CHECK(differs);
    SplitRng u(5);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }
    CHECK(u.gaussian(3.5, 0.0) == 3.5);
    CHECK_THROWS_AS(u.gaussian(0.0, -1.0), std::domain_error);
}

TEST_CASE("gaussian sampling moments") {
    SplitRng rng(7);
    const double variance = 2.0 * 8.0 * 1e-5;  // a typical step variance
    const int n = 1000000;
    double sum = 0, sum_sq = 0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.gaussian(0.0, variance);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 5.0 * std::sqrt(variance) / std::sqrt(double(n)));
    CHECK(var == doctest::Approx(variance).epsilon(0.01));
}

TEST_CASE("split streams are independent and reproducible") {
    const SplitRng root(42);
    SplitRng s0 = root.split(0), s0b = root.split(0), s1 = root.split(1);
    bool differs = false;
    for (int i = 0; i < 50; ++i) {
        const auto v = s0.next_u64();
        CHECK(v == s0b.next_u64());
        differs |= v != s1.next_u64();
    }
    CHECK(differs);
}

TEST_CASE("adsorption probability") {
    SystemParams p;  // k1 = 20, D = 8
    CHECK(adsorption_probability(p, 1e-5) ==
          doctest::Approx(0.039633).epsilon(1e-4));
    p.adsorption_rate = 0;
    p.desorption_rate = 0;
    CHECK(adsorption_probability(p, 1e-5) == 0.0);
    p.adsorption_rate = std::numeric_limits<double>::infinity();
    CHECK(adsorption_probability(p, 1e-5) == 1.0);
    p.adsorption_rate = 1e4;  // dt far too coarse: clamps
    CHECK(adsorption_probability(p, 1e-5) == 1.0);
    CHECK_THROWS_AS(adsorption_probability(p, 0.0), std::domain_error);
}

TEST_CASE("desorption probability") {
    SystemParams p;  // k_1 = 5
    CHECK(desorption_probability(p, 1e-5) ==
          doctest::Approx(4.99987500208e-5).epsilon(1e-9));
    p.desorption_rate = 0;
    CHECK(desorption_probability(p, 1e-5) == 0.0);
    p.desorption_rate = 1e9;
    CHECK(desorption_probability(p, 1e-3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(desorption_probability(p, -1.0), std::domain_error);
}

TEST_CASE("segment-sphere intersection") {
    const Vec3 c{0, 0, 0};
    const Vec3 hit = segment_sphere_intersection({2, 0, 0}, {0, 0, 0}, c, 1.0);
    CHECK(hit.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hit.y == 0.0);
    // start on the surface
    const Vec3 on = segment_sphere_intersection({1, 0, 0}, {0.5, 0, 0}, c, 1.0);
    CHECK(on.x == doctest::Approx(1.0).epsilon(1e-12));
    // generic reference case
    const Vec3 g = segment_sphere_intersection({1.5, 0.5, 0}, {0.2, 0.1, 0}, c, 1.0);
    CHECK(g.x == doctest::Approx(0.94432218).epsilon(1e-7));
    CHECK(g.y == doctest::Approx(0.32902221).epsilon(1e-7));
    CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-9));
    // random property: point lies on the sphere, between the endpoints
    SplitRng rng(3);
    for (int i = 0; i < 1000; ++i) {
        Vec3 prev{1.0 + rng.uniform(), rng.uniform(), rng.uniform()};
        Vec3 next = prev * (0.3 * rng.uniform() / prev.norm());
        const Vec3 x = segment_sphere_intersection(prev, next, c, 1.0);
        CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK((x - prev).norm() <= (next - prev).norm() + 1e-9);
    }
    CHECK_THROWS_AS(segment_sphere_intersection({3, 3, 3}, {3, 3, 2.9}, c, 1.0),
                    std::domain_error);
}

TEST_CASE("reflection is the identity on the start point") {
    const Vec3 p{1.2, -0.3, 4.0};
    const Vec3 r = reflect(p);
    CHECK(r.x == p.x);
    CHECK(r.y == p.y);
    CHECK(r.z == p.z);
}

TEST_CASE("desorption displacement is nonnegative with the right scale") {
    SplitRng rng(11);
    const double D = 8, dt = 1e-5;
    const double scale = std::sqrt(2.0 * D * dt);
    double mean = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const Vec3 d = desorption_displacement(rng, D, dt);
        CHECK(d.x >= 0.0);
        CHECK(d.y >= 0.0);
        CHECK(d.z >= 0.0);
        mean += d.x;
    }
    mean /= n;
    // E f(U) = 0.529926 * sqrt(2 D dt)
    CHECK(mean == doctest::Approx(0.529926 * scale).epsilon(0.02));
}

TEST_CASE("placement after desorption moves outward") {
    const Vec3 c{1, 2, 3};
    const Vec3 site{1 + 10, 2, 3};  // on the +x axis of the sphere
    const Vec3 kept = place_after_desorption(site, c, {0, 0, 0});
    CHECK(kept.x == site.x);
    const Vec3 moved = place_after_desorption(site, c, {0.5, 0.5, 0.5});
    CHECK(moved.x == doctest::Approx(site.x + 0.5));
    CHECK(moved.y == site.y);  // exactly-zero components keep their axis
    CHECK(moved.z == site.z);
    SplitRng rng(17);
    for (int i = 0; i < 1000; ++i) {
        Vec3 dir{rng.gaussian(0, 1), rng.gaussian(0, 1), rng.gaussian(0, 1)};
        const Vec3 s = c + dir * (10.0 / dir.norm());
        const Vec3 off{0.1 * rng.uniform(), 0.1 * rng.uniform(),
                       0.1 * rng.uniform()};
        const Vec3 out = place_after_desorption(s, c, off);
        CHECK((out - c).norm() >= (s - c).norm() - 1e-12);
    }
}

TEST_CASE("config validation") {
    SimConfig cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.dt = 3e-4;  // Ts not an integer multiple
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.dt = 0.01;  // > Ts
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("degenerate trials") {
    SimConfig cfg = small_config();
    cfg.params.molecules_per_bit = 0;
    SplitRng rng(1);
    const TrialResult tr = run_trial(cfg, rng);
    CHECK(std::accumulate(tr.net_per_sample.begin(), tr.net_per_sample.end(), 0L) ==
          0);
    CHECK(tr.final_adsorbed == 0);
    CHECK(tr.demodulated[0] == 0);

    SimConfig none = small_config();
    none.params.adsorption_rate = 0;
    none.params.desorption_rate = 0;
    SplitRng rng2(1);
    const TrialResult tz = run_trial(none, rng2);
    for (long v : tz.net_per_sample) CHECK(v == 0);
}

TEST_CASE("trial determinism and engine invariants") {
    for (bool literal : {false, true}) {
        SimConfig cfg = small_config();
        cfg.literal_stepping = literal;
        SplitRng r1(5), r2(5);
        const TrialResult a = run_trial(cfg, r1);
        const TrialResult b = run_trial(cfg, r2);
        CHECK(a.net_per_sample == b.net_per_sample);
        CHECK(a.final_adsorbed == b.final_adsorbed);
        // conservation: total net equals what remains bound at the end
        CHECK(std::accumulate(a.net_per_sample.begin(), a.net_per_sample.end(),
                              0L) == a.final_adsorbed);
        // per-bit fold consistency
        long fold = 0;
        for (long v : a.net_per_bit) fold += v;
        long direct = 0;
        for (std::size_t s = 0; s < a.net_per_sample.size(); ++s)
            direct += a.net_per_sample[s];
        CHECK(fold == direct);  // single bit covering the whole horizon? no:
        // horizon 0.1 < Tb, the one bit window covers every sample
    }
}

TEST_CASE("irreversible cumulative counts never decrease") {
    SimConfig cfg = small_config();
    cfg.params.desorption_rate = 0;
    for (bool literal : {false, true}) {
        cfg.literal_stepping = literal;
        SplitRng rng(8);
        const TrialResult tr = run_trial(cfg, rng);
        for (long v : tr.net_per_sample) CHECK(v >= 0);
    }
}

TEST_CASE("ensemble is deterministic and averages trials") {
    SimConfig cfg = small_config();
    cfg.trials = 8;
    const EnsembleResult a = run_ensemble(cfg);
    const EnsembleResult b = run_ensemble(cfg);
    CHECK(a.mean_net_per_sample == b.mean_net_per_sample);
    CHECK(a.net_per_bit == b.net_per_bit);

    // trials = 1 reproduces a single split-stream trial
    cfg.trials = 1;
    const EnsembleResult one = run_ensemble(cfg);
    SplitRng rng = SplitRng(cfg.seed).split(0);
    const TrialResult tr = run_trial(cfg, rng);
    for (std::size_t s = 0; s < tr.net_per_sample.size(); ++s)
        CHECK(one.mean_net_per_sample[s] ==
              doctest::Approx(double(tr.net_per_sample[s])).epsilon(1e-12));
}

TEST_CASE("accelerated and literal engines agree statistically") {
    SimConfig cfg = small_config();
    cfg.params.molecules_per_bit = 200;
    cfg.horizon = 0.05;
    cfg.trials = 150;
    cfg.seed = 31;
    const EnsembleResult fast = run_ensemble(cfg);
    cfg.literal_stepping = true;
    const EnsembleResult lit = run_ensemble(cfg);
    const double mf = fast.mean_cumulative.back();
    const double ml = lit.mean_cumulative.back();
    // pooled standard error of the difference in final cumulative counts
    double vf = 0, vl = 0;
    for (long t = 0; t < cfg.trials; ++t) {
        const double df = fast.net_per_bit[t][0] - mf;
        const double dl = lit.net_per_bit[t][0] - ml;
        vf += df * df;
        vl += dl * dl;
    }
    const double se =
        std::sqrt((vf + vl) / (cfg.trials - 1.0) / cfg.trials);
    CHECK(std::abs(mf - ml) < 4.0 * se + 1e-9);
}

TEST_CASE("doubling trials shrinks the standard error") {
    SimConfig cfg = small_config();
    cfg.trials = 32;
    const EnsembleResult a = run_ensemble(cfg);
    cfg.trials = 128;
    const EnsembleResult b = run_ensemble(cfg);
    // compare stderr at the peak mean sample
    std::size_t pk = 0;
    for (std::size_t i = 1; i < a.mean_net_per_sample.size(); ++i)
        if (a.mean_net_per_sample[i] > a.mean_net_per_sample[pk]) pk = i;
    CHECK(b.stderr_net_per_sample[pk] < a.stderr_net_per_sample[pk]);
}
