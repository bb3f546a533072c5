#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "brwlab/errors.hpp"
#include "brwlab/gw.hpp"
#include "brwlab/rng.hpp"
#include "brwlab/stats.hpp"

using namespace brwlab;

TEST_CASE("chi_square basics") {
    SUBCASE("exact proportions give statistic 0") {
        const std::vector<std::uint64_t> obs = {25, 25, 25, 25};
        const std::vector<double> probs(4, 0.25);
        const TestReport r = chi_square(obs, probs);
        CHECK(r.statistic == doctest::Approx(0.0));
        CHECK(r.df == 3);
        CHECK(r.p_value == doctest::Approx(1.0));
    }
    SUBCASE("hand-computed statistic (30,20,25,25) vs uniform") {
        const std::vector<std::uint64_t> obs = {30, 20, 25, 25};
        const std::vector<double> probs(4, 0.25);
        const TestReport r = chi_square(obs, probs);
        // sum (O-E)^2/E = (25 + 25 + 0 + 0) / 25 = 2
        CHECK(r.statistic == doctest::Approx(2.0));
        CHECK(r.df == 3);
        // Closed form for df=3: Q(x) = erfc(sqrt(x/2)) + sqrt(2x/pi) exp(-x/2).
        const double x = 2.0;
        const double oracle = std::erfc(std::sqrt(x / 2)) +
                              std::sqrt(2 * x / 3.14159265358979323846) * std::exp(-x / 2);
        CHECK(r.p_value == doctest::Approx(oracle).epsilon(1e-9));
    }
    SUBCASE("tail agrees with the df=1 closed form erfc(sqrt(x/2))") {
        for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 25.0})
            CHECK(chi_square_tail(x, 1) ==
                  doctest::Approx(std::erfc(std::sqrt(x / 2))).epsilon(1e-9));
    }
    SUBCASE("permutation invariance over categories") {
        const std::vector<std::uint64_t> obs = {40, 10, 30, 20};
        const std::vector<double> probs = {0.4, 0.1, 0.3, 0.2};
        const std::vector<std::uint64_t> perm_obs = {10, 20, 40, 30};
        const std::vector<double> perm_probs = {0.1, 0.2, 0.4, 0.3};
        CHECK(chi_square(obs, probs).statistic ==
              doctest::Approx(chi_square(perm_obs, perm_probs).statistic));
    }
    SUBCASE("support mismatch rejected") {
        const std::vector<std::uint64_t> obs = {1, 2};
        const std::vector<double> probs = {1.0};
        CHECK_THROWS_AS(chi_square(obs, probs), validation_error);
    }
}

TEST_CASE("growth_rate_fit") {
    SUBCASE("exact powers of two") {
        std::vector<std::uint64_t> v;
        for (int n = 0; n <= 30; ++n) v.push_back(1ULL << n);
        const GrowthFit fit = growth_rate_fit(v, 0, 30);
        CHECK(fit.rate == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(fit.slope_se < 1e-10);
    }
    SUBCASE("polynomial n^2 over [10,40] is flagged, rate <= 1.2") {
        std::vector<std::uint64_t> v;
        for (int n = 0; n <= 40; ++n) v.push_back(static_cast<std::uint64_t>(n) * n + 1);
        const GrowthFit fit = growth_rate_fit(v, 10, 40);
        CHECK(fit.rate <= 1.2);
        CHECK(fit.curvature_flagged());
    }
    SUBCASE("T4 cumulative ball sizes give rate near 3") {
        std::vector<std::uint64_t> v = {1};
        std::uint64_t sphere = 4;
        for (int n = 1; n <= 15; ++n) {
            v.push_back(v.back() + sphere);
            sphere *= 3;
        }
        const GrowthFit fit = growth_rate_fit(v, 3, 15);
        CHECK(fit.rate == doctest::Approx(3.0).epsilon(0.02));
    }
    SUBCASE("scale equivariance: scaling changes c, not r") {
        std::vector<std::uint64_t> v, w;
        for (int n = 0; n <= 20; ++n) {
            v.push_back(3ULL << n);
            w.push_back(12ULL << n);
        }
        const GrowthFit fv = growth_rate_fit(v, 0, 20);
        const GrowthFit fw = growth_rate_fit(w, 0, 20);
        CHECK(fv.rate == doctest::Approx(fw.rate).epsilon(1e-12));
        CHECK(fw.scale == doctest::Approx(4.0 * fv.scale).epsilon(1e-9));
    }
    SUBCASE("fewer than 3 points rejected") {
        const std::vector<std::uint64_t> v = {1, 2, 4};
        CHECK_THROWS_AS(growth_rate_fit(v, 0, 1), validation_error);
    }
}

TEST_CASE("wilson interval brackets the empirical fraction") {
    const Interval iv = wilson_interval(30, 100);
    CHECK(iv.low < 0.3);
    CHECK(iv.high > 0.3);
    CHECK(iv.low > 0.2);
    CHECK(iv.high < 0.42);
    const Interval all = wilson_interval(100, 100);
    CHECK(all.high == doctest::Approx(1.0));
    CHECK(all.low > 0.95);
}

TEST_CASE("derived streams") {
    SUBCASE("same spec twice gives identical draws") {
        RandomStream a = RandomStream::derive(99, {stream_tag::walk, 5});
        RandomStream b = RandomStream::derive(99, {stream_tag::walk, 5});
        for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    }
    SUBCASE("sibling replicas decorrelated") {
        RandomStream a = RandomStream::derive(99, {stream_tag::walk, 0});
        RandomStream b = RandomStream::derive(99, {stream_tag::walk, 1});
        std::vector<double> xs(10000), ys(10000);
        for (int i = 0; i < 10000; ++i) {
            xs[static_cast<std::size_t>(i)] = a.next_double();
            ys[static_cast<std::size_t>(i)] = b.next_double();
        }
        CHECK(std::fabs(sample_correlation(xs, ys)) < 0.05);
    }
    SUBCASE("next_below is unbiased on a small range (chi-square)") {
        RandomStream rng(2024);
        std::vector<std::uint64_t> counts(5, 0);
        for (int i = 0; i < 100000; ++i) ++counts[rng.next_below(5)];
        const std::vector<double> probs(5, 0.2);
        CHECK(chi_square(counts, probs).p_value > 0.01);
    }
}

TEST_CASE("mtp_check statistic is exactly 1 on the deterministic regular tree") {
    const OffspringDist dist = parse_offspring("2:1.0");
    RandomStream rng(1);
    std::vector<RootedTree> samples;
    for (int i = 0; i < 50; ++i) samples.push_back(sample_tree(dist, TreeKind::ugw, 2, rng));
    const MtpReport report = mtp_check(samples);
    CHECK(report.mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.pass);
}

TEST_CASE("mtp_check separates UGW from GW rooting (enumeration oracle)") {
    // Law p_1 = p_2 = 1/2. Let Y = 1/(1+K): E[Y] = c = (1/2)(1/2 + 1/3) = 5/12.
    // UGW: root degree D = k+1 w.p. p_k/((k+1)c); E[stat] = E[D] E[Y] = (1/c) c = 1.
    // GW: root offspring D = K0 ~ p; E[stat] = E[K0] E[Y] = 1.5 * 5/12 = 0.625.
    const OffspringDist dist = parse_offspring("1:0.5,2:0.5");
    const double c = 0.5 * (1.0 / 2 + 1.0 / 3);
    const double gw_mean = 1.5 * c;
    RandomStream rng(77);
    std::vector<RootedTree> ugw, gw;
    for (int i = 0; i < 100000; ++i) ugw.push_back(sample_tree(dist, TreeKind::ugw, 2, rng));
    for (int i = 0; i < 100000; ++i) gw.push_back(sample_tree(dist, TreeKind::gw, 2, rng));

    const MtpReport ugw_report = mtp_check(ugw);
    CHECK(ugw_report.pass);
    CHECK(ugw_report.mean == doctest::Approx(1.0).epsilon(0.02));

    const MtpReport gw_report = mtp_check(gw);
    CHECK_FALSE(gw_report.pass);
    CHECK(gw_report.mean == doctest::Approx(gw_mean).epsilon(0.02));
}
