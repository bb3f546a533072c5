#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace brwlab {

struct RootedTree; // gw.hpp

struct TestReport {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    std::size_t sample_size = 0;
    bool pass(double level = 0.01) const { return p_value > level; }
};

// Pearson goodness-of-fit against a fixed discrete law. Expected
// probabilities must be strictly positive and match the observed support.
TestReport chi_square(std::span<const std::uint64_t> observed,
                      std::span<const double> expected_probs);

// Upper tail of the chi-square distribution, Q(x; df), via the regularized
// incomplete gamma function (series / continued fraction, |err| < 1e-10).
double chi_square_tail(double x, int df);

double regularized_gamma_q(double a, double x);

// Least-squares fit of log(values[n]) ~ intercept + slope * n over
// n in [n_lo, n_hi]; rate = exp(slope), scale = exp(intercept).
// The quadratic refit flags curvature (saturating or polynomial growth).
struct GrowthFit {
    double scale = 0.0;       // c
    double rate = 0.0;        // r = exp(slope)
    double slope = 0.0;
    double slope_se = 0.0;
    double intercept = 0.0;
    double quad_coeff = 0.0;  // second-order coefficient of the quadratic refit
    double quad_se = 0.0;
    bool curvature_flagged() const;
};

GrowthFit growth_rate_fit(std::span<const std::uint64_t> values, int n_lo, int n_hi);

// Mass-transport check with f(G,o,x) = 1{x~o}/deg(o): under a unimodular
// law the mean of sum_{x~o} 1/deg(x) is exactly 1. Samples must have
// depth >= 2 so every root-neighbor degree is determined.
struct MtpReport {
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double level = 0.99;
    std::size_t sample_size = 0;
    bool pass = false; // true iff 1 lies in the CI
};

MtpReport mtp_check(std::span<const RootedTree> samples, double level = 0.99);

// Wilson score interval for a binomial proportion.
struct Interval {
    double low = 0.0;
    double high = 0.0;
};
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

double sample_correlation(std::span<const double> a, std::span<const double> b);

} // namespace brwlab
