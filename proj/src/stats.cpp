#include "brwlab/stats.hpp"

#include <cmath>
#include <limits>

#include "brwlab/errors.hpp"
#include "brwlab/gw.hpp"

namespace brwlab {

namespace {

double gamma_p_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
    // Lentz's algorithm for the continued fraction of Q(a, x).
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double regularized_gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw validation_error("regularized_gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

double chi_square_tail(double x, int df) {
    if (df < 1) throw validation_error("chi_square_tail: df must be positive");
    if (x <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * df, 0.5 * x);
}

TestReport chi_square(std::span<const std::uint64_t> observed,
                      std::span<const double> expected_probs) {
    if (observed.size() != expected_probs.size() || observed.empty())
        throw validation_error("chi_square: observed and expected supports differ");
    std::uint64_t total = 0;
    for (std::uint64_t o : observed) total += o;
    if (total == 0) throw validation_error("chi_square: empty sample");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected_probs[i] <= 0.0)
            throw validation_error("chi_square: expected probabilities must be positive");
        const double e = expected_probs[i] * static_cast<double>(total);
        const double diff = static_cast<double>(observed[i]) - e;
        stat += diff * diff / e;
    }
    TestReport report;
    report.statistic = stat;
    report.df = static_cast<int>(observed.size()) - 1;
    report.p_value = report.df > 0 ? chi_square_tail(stat, report.df) : 1.0;
    report.sample_size = total;
    return report;
}

bool GrowthFit::curvature_flagged() const {
    return quad_se > 0.0 && quad_coeff < 0.0 && -quad_coeff > 2.0 * quad_se;
}

GrowthFit growth_rate_fit(std::span<const std::uint64_t> values, int n_lo, int n_hi) {
    if (n_lo < 0 || n_hi >= static_cast<int>(values.size()) || n_hi - n_lo + 1 < 3)
        throw validation_error("growth_rate_fit: need at least 3 points inside the sequence");
    const int m = n_hi - n_lo + 1;
    std::vector<double> xs(m), ys(m);
    for (int i = 0; i < m; ++i) {
        if (values[static_cast<std::size_t>(n_lo + i)] < 1)
            throw validation_error("growth_rate_fit: all values must be >= 1");
        xs[i] = n_lo + i;
        ys[i] = std::log(static_cast<double>(values[static_cast<std::size_t>(n_lo + i)]));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = m * sxx - sx * sx;
    GrowthFit fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    fit.rate = std::exp(fit.slope);
    fit.scale = std::exp(fit.intercept);

    double sse = 0.0;
    for (int i = 0; i < m; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        sse += r * r;
    }
    if (m > 2) {
        const double sigma2 = sse / (m - 2);
        fit.slope_se = std::sqrt(sigma2 * m / denom);
    }

    // Quadratic refit in centered coordinates for the curvature flag.
    // With t = x - xbar the normal equations are
    //   [ n   0   s2 ] [a0]   [sy0]
    //   [ 0   s2  s3 ] [a1] = [sy1]
    //   [ s2  s3  s4 ] [a2]   [sy2]
    if (m > 3) {
        const double xbar = sx / m;
        double s2 = 0, s3 = 0, s4 = 0, sy0 = 0, sy1 = 0, sy2 = 0;
        for (int i = 0; i < m; ++i) {
            const double t = xs[i] - xbar;
            s2 += t * t;
            s3 += t * t * t;
            s4 += t * t * t * t;
            sy0 += ys[i];
            sy1 += t * ys[i];
            sy2 += t * t * ys[i];
        }
        const double n = m;
        const double det3 = n * (s2 * s4 - s3 * s3) - s2 * s2 * s2;
        if (std::fabs(det3) > 1e-12) {
            const double a2 = (n * (s2 * sy2 - s3 * sy1) - s2 * s2 * sy0) / det3;
            const double a1 = (sy1 - s3 * a2) / s2;
            const double a0 = (sy0 - s2 * a2) / n;
            fit.quad_coeff = a2;
            double sse2 = 0.0;
            for (int i = 0; i < m; ++i) {
                const double t = xs[i] - xbar;
                const double r = ys[i] - (a0 + a1 * t + a2 * t * t);
                sse2 += r * r;
            }
            const double sigma2 = sse2 / (m - 3);
            const double inv22 = n * s2 / det3; // (A^-1)_{22}
            fit.quad_se = std::sqrt(std::max(0.0, sigma2 * inv22));
        }
    }
    return fit;
}

MtpReport mtp_check(std::span<const RootedTree> samples, double level) {
    if (samples.empty()) throw validation_error("mtp_check: no samples");
    double sum = 0.0, sumsq = 0.0;
    for (const RootedTree& t : samples) {
        if (t.depth < 2)
            throw validation_error("mtp_check: samples must have depth >= 2");
        double stat = 0.0;
        for (std::uint32_t c = t.child_begin(0); c < t.child_end(0); ++c)
            stat += 1.0 / (1.0 + static_cast<double>(t.child_count(c)));
        sum += stat;
        sumsq += stat * stat;
    }
    const double n = static_cast<double>(samples.size());
    MtpReport report;
    report.sample_size = samples.size();
    report.level = level;
    report.mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * report.mean * report.mean) / (n - 1.0));
    // Normal quantile for the two-sided level; 0.99 -> 2.5758.
    const double z = level >= 0.99 ? 2.5758293035489004 : 1.959963984540054;
    const double half = z * std::sqrt(var / n);
    report.ci_low = report.mean - half;
    report.ci_high = report.mean + half;
    report.pass = report.ci_low <= 1.0 && 1.0 <= report.ci_high;
    return report;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double sample_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2)
        throw validation_error("sample_correlation: size mismatch");
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

} // namespace brwlab
