#pragma once

#include <utility>
#include <vector>

#include "cdklab/params.hpp"

namespace cdklab::equilibrium {

using params::PeriodicEnvelope;

enum class BandKind { Periodic, Blend };

/// The set Lambda as finitely many disjoint open intervals, plus the
/// equilibrium density evaluated through the class formula.
class BandStructure {
public:
    BandStructure(BandKind kind, PeriodicEnvelope env,
                  std::vector<std::pair<double, double>> intervals)
        : kind_(kind), env_(std::move(env)), intervals_(std::move(intervals)) {}

    BandKind kind() const { return kind_; }
    const PeriodicEnvelope& envelope() const { return env_; }
    const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }

    bool contains(double x) const;
    /// omega'(x); throws BandEdgeError at or outside band edges.
    double density(double x) const;

private:
    BandKind kind_;
    PeriodicEnvelope env_;
    std::vector<std::pair<double, double>> intervals_;
};

struct ScanOptions {
    double seed_lo = -1.0;
    double seed_hi = 1.0;
    int initial_grid = 2048;
    int max_refinements = 6;
    double bisect_tol = 1e-10;
};

/// Locates {x : |tr M(x)| <= 2} (envelope window M = X_0, or the blend limit
/// X_1 with strict inequality): auto-expanded bracket, grid scan, bisection
/// of each endpoint, and splitting at interior tangency points |tr| = 2.
/// Throws std::runtime_error if the trace oscillates below grid resolution.
BandStructure band_set(const PeriodicEnvelope& env, BandKind kind,
                       const ScanOptions& opt = {});

/// Both routes to the periodic equilibrium density:
///   value:     (1/N) sum_i |[X_i]_{21}| / (pi sqrt(-discr X_i) alpha_{i-1})
///   via_trace: |tr X_0'| / (pi N sqrt(-discr X_0))
struct OmegaPrime {
    double value = 0.0;
    double via_trace = 0.0;
};

OmegaPrime omega_prime_periodic(const PeriodicEnvelope& env, double x);

/// Blend density: the explicit sum with the doubled last term, and the
/// trace-derivative route |tr X_1'|/(N pi sqrt(-discr X_1)).
OmegaPrime omega_prime_blend(const PeriodicEnvelope& env, double x);

/// Integral of the density over all intervals. The substitution
/// x = mid + half*sin(t) removes the inverse-square-root edge behavior, so a
/// fixed Gauss-Legendre rule per interval converges fast.
double integrate_density(const BandStructure& bands, int points_per_interval = 128);

/// The periodic envelope whose density reproduces the blend density:
/// alpha_0, alpha_{N-1} scaled by 1/sqrt(2) and beta_0 halved (for N = 1 the
/// two alpha scalings combine to 1/2).
PeriodicEnvelope blend_tilde_envelope(const PeriodicEnvelope& env);

}  // namespace cdklab::equilibrium
