#include "cdklab/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cdklab/numerics.hpp"
#include "cdklab/transfer.hpp"

namespace cdklab::equilibrium {

using transfer::BandEdgeError;

namespace {

constexpr double kBandEdgeFloor = 1e-14;

double trace_at(const PeriodicEnvelope& env, BandKind kind, double x) {
    if (kind == BandKind::Blend) return transfer::blend_limit_matrix(env, 1, x).trace();
    return transfer::envelope_n_step(env, 0, x).trace();
}

// |tr| - 2: negative inside bands.
double gap_fn(const PeriodicEnvelope& env, BandKind kind, double x) {
    return std::abs(trace_at(env, kind, x)) - 2.0;
}

double bisect_edge(const PeriodicEnvelope& env, BandKind kind, double inside,
                   double outside, double tol) {
    double lo = inside, hi = outside;
    for (int it = 0; it < 200 && std::abs(hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gap_fn(env, kind, mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Local maximizer of f on [a, b] by golden-section (f unimodal there).
double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

BandStructure band_set(const PeriodicEnvelope& env, BandKind kind, const ScanOptions& opt) {
    // Bracket: |tr| grows polynomially, expand until comfortably outside.
    double lo = opt.seed_lo, hi = opt.seed_hi;
    for (int it = 0;; ++it) {
        if (it > 60) throw std::runtime_error("band_set: could not bracket the band set");
        bool ok = true;
        if (gap_fn(env, kind, lo) < 1.0) {
            lo = lo * 2.0 - 1.0;
            ok = false;
        }
        if (gap_fn(env, kind, hi) < 1.0) {
            hi = hi * 2.0 + 1.0;
            ok = false;
        }
        if (ok) break;
    }

    // Grid scan for negative runs of |tr|-2, refining until the run count is
    // stable and every run is resolved by several cells.
    std::vector<std::pair<double, double>> runs;
    int grid = opt.initial_grid;
    int stable = 0;
    long prev_count = -1;
    for (int refine = 0;; ++refine) {
        if (refine > opt.max_refinements)
            throw std::runtime_error("band_set: trace oscillates below grid resolution");
        runs.clear();
        const double h = (hi - lo) / grid;
        double run_start = 0.0;
        bool inside = false;
        int run_cells = 0;
        int min_cells = grid;
        for (int k = 0; k <= grid; ++k) {
            const double x = lo + k * h;
            const bool neg = gap_fn(env, kind, x) < 0.0;
            if (neg && !inside) {
                inside = true;
                run_start = x;
                run_cells = 1;
            } else if (neg && inside) {
                ++run_cells;
            } else if (!neg && inside) {
                inside = false;
                runs.emplace_back(run_start, x);
                min_cells = std::min(min_cells, run_cells);
            }
        }
        if (inside) runs.emplace_back(run_start, hi);
        const long count = static_cast<long>(runs.size());
        if (count == prev_count && min_cells >= 8) {
            if (++stable >= 2) break;
        } else {
            stable = 0;
        }
        prev_count = count;
        grid *= 2;
    }
    if (runs.empty()) throw std::runtime_error("band_set: no bands found");

    // Sharpen endpoints by bisection. Run boundaries are grid points with a
    // known sign on each side.
    std::vector<std::pair<double, double>> intervals;
    const double h = (hi - lo) / grid;
    for (auto [l, r] : runs) {
        const double li = bisect_edge(env, kind, l, l - h, opt.bisect_tol);
        const double ri = bisect_edge(env, kind, r - h, r, opt.bisect_tol);
        intervals.emplace_back(li, ri);
    }

    // Split at interior tangency points (local maxima of |tr|-2 reaching 0);
    // a strictly positive interior bump means the grid straddled a narrow
    // gap, which gets both of its edges bisected.
    auto f = [&](double x) { return gap_fn(env, kind, x); };
    std::vector<std::pair<double, double>> final_intervals;
    for (auto [l, r] : intervals) {
        std::vector<std::pair<double, double>> cuts;  // (end of left part, start of right part)
        const int m = 512;
        const double step = (r - l) / m;
        double fprev = f(l + step), fcur = f(l + 2 * step);
        for (int k = 3; k < m; ++k) {
            const double fnext = f(l + k * step);
            if (fcur >= fprev && fcur >= fnext && fcur > -1e-6) {
                const double xm =
                    golden_max(f, l + (k - 2) * step, l + k * step, opt.bisect_tol);
                const double fm = f(xm);
                if (fm >= -1e-12 && xm - l > 1e-8 && r - xm > 1e-8) {
                    if (fm > 1e-10) {
                        double wl = xm, wr = xm;
                        while (f(wl) >= 0.0 && wl > l) wl -= step;
                        while (f(wr) >= 0.0 && wr < r) wr += step;
                        cuts.emplace_back(bisect_edge(env, kind, wl, xm, opt.bisect_tol),
                                          bisect_edge(env, kind, wr, xm, opt.bisect_tol));
                    } else {
                        cuts.emplace_back(xm, xm);
                    }
                }
            }
            fprev = fcur;
            fcur = fnext;
        }
        double start = l;
        for (auto [cl, cr] : cuts) {
            final_intervals.emplace_back(start, cl);
            start = cr;
        }
        final_intervals.emplace_back(start, r);
    }

    return BandStructure(kind, env, std::move(final_intervals));
}

bool BandStructure::contains(double x) const {
    for (auto [l, r] : intervals_)
        if (x > l && x < r) return true;
    return false;
}

double BandStructure::density(double x) const {
    return kind_ == BandKind::Blend ? omega_prime_blend(env_, x).value
                                    : omega_prime_periodic(env_, x).value;
}

OmegaPrime omega_prime_periodic(const PeriodicEnvelope& env, double x) {
    const int N = env.period();
    OmegaPrime out;
    double sum = 0.0;
    for (int i = 0; i < N; ++i) {
        const Mat2 Xi = transfer::envelope_n_step(env, i, x);
        const double mdiscr = -Xi.discr();
        if (mdiscr < kBandEdgeFloor)
            throw BandEdgeError("omega_prime_periodic: at or outside a band edge");
        sum += std::abs(Xi.m21) / (std::numbers::pi * std::sqrt(mdiscr)) / env.alpha(i - 1);
    }
    out.value = sum / N;

    const Mat2Jet jet = transfer::envelope_n_step_jet(env, 0, x);
    out.via_trace = std::abs(jet.d1.trace()) /
                    (std::numbers::pi * N * std::sqrt(-jet.value.discr()));
    return out;
}

OmegaPrime omega_prime_blend(const PeriodicEnvelope& env, double x) {
    const int N = env.period();
    const Mat2Jet jet1 = transfer::blend_limit_matrix_jet(env, 1, x);
    const double mdiscr = -jet1.value.discr();
    if (mdiscr < kBandEdgeFloor)
        throw BandEdgeError("omega_prime_blend: at or outside a band edge");

    double sum = 0.0;
    for (int i = 1; i <= N - 1; ++i) {
        const Mat2 Xi = transfer::blend_limit_matrix(env, i, x);
        sum += std::abs(Xi.m21) / env.alpha(i - 1);
    }
    const Mat2 XN = transfer::blend_limit_matrix(env, N, x);
    sum += 2.0 * std::abs(XN.m21) / env.alpha(N - 1);

    OmegaPrime out;
    out.value = sum / (N * std::numbers::pi * std::sqrt(mdiscr));
    out.via_trace =
        std::abs(jet1.d1.trace()) / (N * std::numbers::pi * std::sqrt(mdiscr));
    return out;
}

double integrate_density(const BandStructure& bands, int points_per_interval) {
    const QuadratureRule rule = gauss_legendre(points_per_interval);
    KahanSum total;
    for (auto [l, r] : bands.intervals()) {
        const double mid = 0.5 * (l + r);
        const double half = 0.5 * (r - l);
        // x = mid + half sin(t), t in (-pi/2, pi/2); the cos(t) Jacobian
        // cancels the inverse-square-root edge singularity.
        for (int k = 0; k < points_per_interval; ++k) {
            const double t = 0.5 * std::numbers::pi * rule.x[k];
            const double x = mid + half * std::sin(t);
            const double jac = 0.5 * std::numbers::pi * half * std::cos(t);
            total.add(rule.w[k] * jac * bands.density(x));
        }
    }
    return total.value();
}

PeriodicEnvelope blend_tilde_envelope(const PeriodicEnvelope& env) {
    std::vector<double> ta = env.alphas();
    std::vector<double> tb = env.betas();
    const int N = env.period();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ta[0] *= inv_sqrt2;
    ta[N - 1] *= inv_sqrt2;  // N = 1 collapses both scalings onto alpha_0
    tb[0] *= 0.5;
    return PeriodicEnvelope(std::move(ta), std::move(tb));
}

}  // namespace cdklab::equilibrium
