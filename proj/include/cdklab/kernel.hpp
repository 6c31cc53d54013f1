#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cdklab/oracles.hpp"
#include "cdklab/params.hpp"

namespace cdklab::kernel {

using oracles::DensityOracle;
using params::ParameterModel;

/// Thrown by the strict helpers (kernel_sub) when polynomial values pass the
/// overflow guard; the KernelReport paths set a flag instead.
class OverflowError : public std::runtime_error {
public:
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

struct KernelReport {
    long n = 0;
    double x = 0.0, y = 0.0;
    double K_direct = 0.0;
    std::optional<double> K_cd;  // omitted on overflow
    double rho = 0.0;
    std::optional<double> predicted;
    std::optional<double> observed_error;
    std::optional<double> bound_ledger;
    bool overflow = false;
};

/// Switch point between the divided-difference and confluent CD branches.
inline constexpr double kConfluentThreshold = 1e-8;

/// K_n(x,y) both ways: the direct sum over p_j(x)p_j(y) and the
/// Christoffel-Darboux formula, confluent branch (via the derivative
/// formula) when |x - y| < 1e-8.
KernelReport kernel(const ParameterModel& model, long n, double x, double y);

/// Class-appropriate normalizer:
///   periodic / asymptotically periodic / modulated: sum_j alpha_j / a_j,
///   blend: sum over j = i mod (N+2), i < N of alpha_i / a_j.
double rho(const ParameterModel& model, long n);

/// rho_{i;n} = sum_{j=0}^n 1/a_{jW+i}; i = -1 is allowed (a_{-1} convention).
double rho_sub(const ParameterModel& model, int i, long n);

/// Subsequence kernel K_{i;n}(x,y) = sum_j p_{jW+i}(x) p_{jW+i}(y).
double kernel_sub(const ParameterModel& model, int i, long n, double x, double y);

/// Diagonal Christoffel ratios. Without an oracle, `predicted` stays empty
/// and mu_hat carries the Theorem-B inversion omega'(anchor) rho_n / K_n(x,x)
/// (anchor 0 for modulated models, x otherwise).
struct ChristoffelReport {
    KernelReport full;           // K_n(x,x) against rho_n
    double mu_hat = 0.0;
    std::optional<int> i;        // set for subsequence reports
    double rho_shifted = 0.0;    // rho_{i-1;n+1} (Theorem-6 bookkeeping)
    double rho_plain = 0.0;      // rho_{i;n}     (eq. 31 bookkeeping)
    double K_sub = 0.0;
};

ChristoffelReport christoffel_ratio(const ParameterModel& model, std::optional<int> i,
                                    long n, double x,
                                    const DensityOracle* oracle = nullptr);

/// Scaled kernel at x + u/rho_n, x + v/rho_n plus the mu'-free universality
/// ratio R_n(u,v) = K_n(x_u, x_v)/K_n(x,x) with its sinc prediction.
struct ScalingReport {
    KernelReport scaled;     // K_n(x_u, x_v)/rho_n in K_direct, etc.
    double ratio = 0.0;      // R_n(u, v)
    double predicted_ratio = 0.0;
    double omega_prime_anchor = 0.0;
};

ScalingReport scaling_kernel(const ParameterModel& model, long n, double x, double u,
                             double v);

/// Computable right-hand sides of the quantitative error bounds. The inner
/// tails are suffix-summed over a finite horizon with a fitted power-law
/// extrapolation for the remainder; `tail_ok` is false when the increments
/// were not decreasing (truncation then unjustified).
struct LedgerResult {
    double value = 0.0;
    bool tail_ok = true;
    double fitted_decay = 0.0;
};

/// Theorem-2 form, subsequence i:
///   sum_k |Delta 1/a_{kN+i-1}| + (1/a_{(k+1)N+i-1}) sum_{j>=k} sup ||Delta X_{jN+i}||.
LedgerResult error_ledger_subsequence(const ParameterModel& model, int i, long n,
                                      std::span<const double> grid);

/// Theorem-8/9 form: sum_{m=0}^{n+N} (1/a_m) sum_{j>=0} sup ||B_{m+(j+1)N} - B_{m+jN}||.
LedgerResult error_ledger_full(const ParameterModel& model, long n,
                               std::span<const double> grid);

}  // namespace cdklab::kernel
