#include "cdklab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdklab/equilibrium.hpp"
#include "cdklab/numerics.hpp"
#include "cdklab/poly.hpp"
#include "cdklab/transfer.hpp"

namespace cdklab::kernel {

using params::ClassTag;
using poly::eval_poly_derivative;
using poly::eval_poly_sequence;
using poly::PolySample;

namespace {

double sinc(double z) { return z == 0.0 ? 1.0 : std::sin(z) / z; }

/// omega'(anchor) for the class: the modulated limits anchor at 0, the other
/// classes at x itself.
double omega_prime_anchor(const ParameterModel& model, double x) {
    const auto& env = model.envelope();
    switch (model.tag()) {
        case ClassTag::PeriodicallyModulated:
            return equilibrium::omega_prime_periodic(env, 0.0).value;
        case ClassTag::PeriodicBlend:
            return equilibrium::omega_prime_blend(env, x).value;
        default:
            return equilibrium::omega_prime_periodic(env, x).value;
    }
}

}  // namespace

KernelReport kernel(const ParameterModel& model, long n, double x, double y) {
    if (n < 0) throw std::invalid_argument("kernel: n must be >= 0");
    KernelReport report;
    report.n = n;
    report.x = x;
    report.y = y;
    report.rho = rho(model, n);

    const bool confluent = std::abs(x - y) < kConfluentThreshold;
    PolySample px;
    if (confluent) {
        px = eval_poly_derivative(model, x, n + 1);
    } else {
        px = eval_poly_sequence(model, 0, x, n + 1);
    }
    const PolySample py = (x == y) ? px : eval_poly_sequence(model, 0, y, n + 1);

    const long avail = std::min({px.n_max(), py.n_max(), n});
    report.overflow = px.overflow || py.overflow || avail < n;

    KahanSum direct;
    for (long j = 0; j <= avail; ++j) direct.add(px.values[j] * py.values[j]);
    report.K_direct = direct.value();

    if (!report.overflow) {
        const double an = model.a(n);
        if (confluent) {
            // a_n (p_n p_{n+1}' - p_n' p_{n+1}) at x; |x-y| is below the
            // identity tolerance here.
            const auto& p = px.values;
            const auto& dp = px.deriv_values;
            report.K_cd = an * (p[n] * dp[n + 1] - dp[n] * p[n + 1]);
        } else {
            report.K_cd = an *
                          (px.values[n + 1] * py.values[n] - px.values[n] * py.values[n + 1]) /
                          (x - y);
        }
    }
    return report;
}

double rho(const ParameterModel& model, long n) {
    if (n < 0) throw std::invalid_argument("rho: n must be >= 0");
    const auto& env = model.envelope();
    KahanSum sum;
    if (model.tag() == ClassTag::PeriodicBlend) {
        const int N = env.period();
        const int W = N + 2;
        for (long j = 0; j <= n; ++j) {
            const long i = j % W;
            if (i < N) sum.add(env.alpha(i) / model.a(j));
        }
    } else {
        for (long j = 0; j <= n; ++j) sum.add(env.alpha(j) / model.a(j));
    }
    return sum.value();
}

double rho_sub(const ParameterModel& model, int i, long n) {
    const int W = model.window();
    if (i < -1 || i >= W) throw std::invalid_argument("rho_sub: i out of range");
    KahanSum sum;
    for (long j = 0; j <= n; ++j) sum.add(1.0 / model.a(j * W + i));
    return sum.value();
}

double kernel_sub(const ParameterModel& model, int i, long n, double x, double y) {
    const int W = model.window();
    if (i < 0 || i >= W) throw std::invalid_argument("kernel_sub: i out of range");
    const long top = n * W + i;
    const PolySample px = eval_poly_sequence(model, 0, x, top);
    const PolySample py = (x == y) ? px : eval_poly_sequence(model, 0, y, top);
    if (px.overflow || py.overflow) throw OverflowError("kernel_sub: polynomial overflow");
    KahanSum sum;
    for (long j = 0; j <= n; ++j) sum.add(px.values[j * W + i] * py.values[j * W + i]);
    return sum.value();
}

ChristoffelReport christoffel_ratio(const ParameterModel& model, std::optional<int> i,
                                    long n, double x, const DensityOracle* oracle) {
    ChristoffelReport report;
    report.full = kernel(model, n, x, x);
    report.i = i;

    const double omega = omega_prime_anchor(model, x);
    if (report.full.K_direct > 0.0)
        report.mu_hat = omega * report.full.rho / report.full.K_direct;

    if (oracle) {
        const double mu = oracle->mu_prime(x);
        if (mu > 0.0) {
            report.full.predicted = omega / mu * report.full.rho;
            report.full.observed_error = report.full.K_direct - *report.full.predicted;
        }
    }

    if (i) {
        report.K_sub = kernel_sub(model, *i, n, x, x);
        report.rho_shifted = rho_sub(model, *i - 1, n + 1);
        report.rho_plain = rho_sub(model, *i, n);
    }
    return report;
}

ScalingReport scaling_kernel(const ParameterModel& model, long n, double x, double u,
                             double v) {
    ScalingReport report;
    const double rn = rho(model, n);
    const double xu = x + u / rn;
    const double xv = x + v / rn;
    report.scaled = kernel(model, n, xu, xv);
    const KernelReport diag = kernel(model, n, x, x);
    if (diag.K_direct > 0.0 && !report.scaled.overflow && !diag.overflow)
        report.ratio = report.scaled.K_direct / diag.K_direct;

    report.omega_prime_anchor = omega_prime_anchor(model, x);
    report.predicted_ratio = sinc((u - v) * std::numbers::pi * report.omega_prime_anchor);
    report.scaled.predicted = report.predicted_ratio;
    report.scaled.observed_error = report.ratio - report.predicted_ratio;
    return report;
}

namespace {

/// Fits the tail of a decreasing increment sequence d over its last decade
/// and returns the extrapolated remainder sum_{l > L} d(l)/stride.
struct TailFit {
    double remainder = 0.0;
    double exponent = 0.0;
    bool decreasing = true;
};

TailFit fit_tail(const std::vector<double>& d, long stride) {
    TailFit fit;
    const long L = static_cast<long>(d.size()) - 1;
    if (L < 10 || d[L] <= 1e-14) return fit;  // spec cutoff: tail below noise

    std::vector<double> xs, ys;
    for (long l = std::max<long>(1, L - L / 10); l <= L; l += std::max<long>(1, L / 200)) {
        xs.push_back(static_cast<double>(l));
        ys.push_back(d[l]);
    }
    fit.exponent = loglog_slope(xs, ys);
    if (fit.exponent >= -1.02) {
        fit.decreasing = fit.exponent < 0.0;
        return fit;  // tail not summable-looking; leave remainder 0, flag via caller
    }
    // integral comparison: sum_{l>L, step stride} c l^p ~ d(L) L / ((-p-1) stride)
    fit.remainder = d[L] * static_cast<double>(L) / ((-fit.exponent - 1.0) * stride);
    return fit;
}

double sup_norm_diff(const ParameterModel& model, long lo_index, long step,
                     std::span<const double> grid) {
    double worst = 0.0;
    for (double x : grid) {
        const Mat2 d = transfer::one_step(model, lo_index + step, x) -
                       transfer::one_step(model, lo_index, x);
        worst = std::max(worst, frobenius(d));
    }
    return worst;
}

}  // namespace

LedgerResult error_ledger_subsequence(const ParameterModel& model, int i, long n,
                                      std::span<const double> grid) {
    const int W = model.window();
    if (i < 0 || i >= W) throw std::invalid_argument("error_ledger_subsequence: bad i");
    const long horizon = 4 * (n + 1);

    // E(j) = sup_x ||X_{(j+1)W+i} - X_{jW+i}||
    std::vector<double> inc(horizon + 1);
    for (long j = 0; j <= horizon; ++j) {
        double worst = 0.0;
        for (double x : grid) {
            const Mat2 d = transfer::n_step(model, (j + 1) * W + i, x) -
                           transfer::n_step(model, j * W + i, x);
            worst = std::max(worst, frobenius(d));
        }
        inc[j] = worst;
    }

    const TailFit tail = fit_tail(inc, 1);
    std::vector<double> suffix(horizon + 2);
    suffix[horizon + 1] = tail.remainder;
    for (long j = horizon; j >= 0; --j) suffix[j] = inc[j] + suffix[j + 1];

    KahanSum ledger;
    for (long k = 0; k <= n; ++k) {
        const double inv_next = 1.0 / model.a((k + 1) * static_cast<long>(W) + i - 1);
        const double inv_cur = 1.0 / model.a(k * static_cast<long>(W) + i - 1);
        ledger.add(std::abs(inv_next - inv_cur));
        ledger.add(inv_next * suffix[k]);
    }

    LedgerResult out;
    out.value = ledger.value();
    out.fitted_decay = tail.exponent;
    out.tail_ok = inc[horizon] <= 1e-14 || (tail.decreasing && tail.exponent < -1.02) ||
                  inc[horizon] == 0.0;
    return out;
}

LedgerResult error_ledger_full(const ParameterModel& model, long n,
                               std::span<const double> grid) {
    const int N = model.envelope().period();
    const long top = n + N;
    const long horizon = 4 * (top + 1) + 8 * N;

    // D(l) = sup_x ||B_{l+N} - B_l||, suffix-summed along each residue class.
    std::vector<double> d(horizon + 1);
    for (long l = 0; l <= horizon; ++l) d[l] = sup_norm_diff(model, l, N, grid);

    const TailFit tail = fit_tail(d, N);
    std::vector<double> suffix(horizon + 1 + N, tail.remainder);
    for (long l = horizon; l >= 0; --l) suffix[l] = d[l] + suffix[l + N];

    KahanSum ledger;
    for (long m = 0; m <= top; ++m) ledger.add(suffix[m] / model.a(m));

    LedgerResult out;
    out.value = ledger.value();
    out.fitted_decay = tail.exponent;
    out.tail_ok = d[horizon] <= 1e-14 || (tail.decreasing && tail.exponent < -1.02) ||
                  d[horizon] == 0.0;
    return out;
}

}  // namespace cdklab::kernel
