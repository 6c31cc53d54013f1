#include "cdklab/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cdklab/numerics.hpp"

namespace cdklab::params {

PeriodicEnvelope::PeriodicEnvelope(std::vector<double> alpha, std::vector<double> beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (alpha_.empty() || alpha_.size() != beta_.size())
        throw std::invalid_argument("PeriodicEnvelope: need matching non-empty alpha/beta");
    for (double a : alpha_)
        if (!(a > 0.0)) throw std::invalid_argument("PeriodicEnvelope: alpha must be positive");
    for (double b : beta_)
        if (!std::isfinite(b)) throw std::invalid_argument("PeriodicEnvelope: beta must be finite");
}

ParameterModel::ParameterModel(ClassTag tag, PeriodicEnvelope envelope, Sequence a, Sequence b)
    : tag_(tag), envelope_(std::move(envelope)), a_(std::move(a)), b_(std::move(b)) {
    if (!a_ || !b_) throw std::invalid_argument("ParameterModel: sequences must be set");
}

ParameterModel make_periodic(const PeriodicEnvelope& envelope) {
    PeriodicEnvelope env = envelope;
    return ParameterModel(
        ClassTag::ExactPeriodic, env, [env](long n) { return env.alpha(n); },
        [env](long n) { return env.beta(n); });
}

ParameterModel make_asymptotically_periodic(const PeriodicEnvelope& envelope,
                                            ParameterModel::Sequence a,
                                            ParameterModel::Sequence b) {
    for (long n : {0L, 1L, 64L, 4096L})
        if (!(a(n) > 0.0))
            throw std::invalid_argument("make_asymptotically_periodic: a must stay positive");
    return ParameterModel(ClassTag::AsymptoticallyPeriodic, envelope, std::move(a),
                          std::move(b));
}

ParameterModel make_modulated(const PeriodicEnvelope& envelope,
                              ParameterModel::Sequence growth, long diagnostic_window,
                              double tol) {
    PeriodicEnvelope env = envelope;
    auto g = growth;
    ParameterModel m(
        ClassTag::PeriodicallyModulated, env,
        [env, g](long n) { return env.alpha(n) * g(n); },
        [env, g](long n) { return env.beta(n) * g(n); });

    // Definition-2 window diagnostic at the end of the window: (b) the ratio
    // a_{n-1}/a_n tracks alpha_{n-1}/alpha_n, (c) b_n/a_n tracks beta_n/alpha_n.
    const long n = std::max<long>(diagnostic_window, 16);
    double worst = 0.0;
    for (long j = n - 4; j <= n; ++j) {
        const double an = env.alpha(j) * g(j);
        const double anm1 = env.alpha(j - 1) * g(j - 1);
        if (!(an > 0.0)) throw std::invalid_argument("make_modulated: growth must be positive");
        worst = std::max(worst, std::abs(anm1 / an - env.alpha(j - 1) / env.alpha(j)));
        worst = std::max(worst,
                         std::abs(env.beta(j) * g(j) / an - env.beta(j) / env.alpha(j)));
    }
    if (worst > tol) {
        m.diagnostic_flagged_ = true;
        std::ostringstream os;
        os << "modulation conditions off by " << worst << " at n=" << n;
        m.diagnostic_note_ = os.str();
    }
    return m;
}

ParameterModel make_blend(const ParameterModel& inner, ParameterModel::Sequence c,
                          long probe_window) {
    if (inner.tag() != ClassTag::AsymptoticallyPeriodic &&
        inner.tag() != ClassTag::ExactPeriodic)
        throw std::invalid_argument("make_blend: inner model must be (asymptotically) periodic");
    for (long j = 0; j < probe_window; ++j)
        if (!(c(j) > 0.0))
            throw std::invalid_argument("make_blend: c must be positive");

    auto inner_ptr = std::make_shared<const ParameterModel>(inner);
    const long N = inner.envelope().period();
    auto cc = c;
    auto a = [inner_ptr, cc, N](long n) {
        const long k = n / (N + 2), i = n % (N + 2);
        if (i < N) return inner_ptr->a(k * N + i);
        return i == N ? cc(2 * k) : cc(2 * k + 1);
    };
    auto b = [inner_ptr, N](long n) {
        const long k = n / (N + 2), i = n % (N + 2);
        return i < N ? inner_ptr->b(k * N + i) : 0.0;
    };
    ParameterModel m(ClassTag::PeriodicBlend, inner.envelope(), std::move(a), std::move(b));
    m.inner_ = inner_ptr;
    m.c_ = std::move(cc);
    return m;
}

ParameterModel make_custom(const PeriodicEnvelope& envelope, ParameterModel::Sequence a,
                           ParameterModel::Sequence b) {
    return ParameterModel(ClassTag::Custom, envelope, std::move(a), std::move(b));
}

double carleman_partial_sum(const ParameterModel& model, long n) {
    if (n < 0) throw std::invalid_argument("carleman_partial_sum: n must be >= 0");
    KahanSum sum;
    for (long k = 0; k <= n; ++k) sum.add(1.0 / model.a(k));
    return sum.value();
}

namespace {

DrVerdict verdict_from_partials(const std::vector<double>& s) {
    const long w = static_cast<long>(s.size()) - 1;
    if (s[w] == 0.0) return DrVerdict::Converging;
    if (w < 100) return DrVerdict::Inconclusive;
    const double b1 = s[w] - s[w / 10];
    const double b0 = s[w / 10] - s[w / 100];
    if (b1 <= 0.0) return DrVerdict::Converging;
    if (b0 <= 0.0) return DrVerdict::Inconclusive;
    const double ratio = b1 / b0;
    if (ratio < std::pow(10.0, -0.05)) return DrVerdict::Converging;
    if (ratio > std::pow(10.0, -0.01)) return DrVerdict::Diverging;
    return DrVerdict::Inconclusive;
}

template <class T, class Sub, class Norm>
DrDiagnostic dr_diagnostic_impl(const std::function<T(long)>& x, int r, long window,
                                Sub sub, Norm norm) {
    if (r < 1) throw std::invalid_argument("dr_diagnostic: r must be >= 1");
    if (window < r + 2) throw std::invalid_argument("dr_diagnostic: window must be >= r+2");

    DrDiagnostic diag;
    diag.r = r;
    diag.per_j_partial_sums.resize(r);
    diag.per_j_verdict.resize(r, DrVerdict::Inconclusive);

    std::vector<T> level;
    level.reserve(window + r + 1);
    for (long k = 0; k <= window + r; ++k) level.push_back(x(k));

    for (int j = 1; j <= r; ++j) {
        // level currently holds Delta^{j-1} x_k
        for (std::size_t k = 0; k + 1 < level.size(); ++k)
            level[k] = sub(level[k + 1], level[k]);
        level.pop_back();

        auto& partial = diag.per_j_partial_sums[j - 1];
        partial.resize(window + 1);
        KahanSum sum;
        const double p = static_cast<double>(r) / j;
        for (long k = 0; k <= window; ++k) {
            sum.add(std::pow(norm(level[k]), p));
            partial[k] = sum.value();
        }
        diag.per_j_verdict[j - 1] = verdict_from_partials(partial);
    }

    diag.verdict = DrVerdict::Converging;
    for (auto v : diag.per_j_verdict) {
        if (v == DrVerdict::Diverging) {
            diag.verdict = DrVerdict::Diverging;
            break;
        }
        if (v == DrVerdict::Inconclusive) diag.verdict = DrVerdict::Inconclusive;
    }
    return diag;
}

}  // namespace

DrDiagnostic dr_diagnostic(const std::function<double(long)>& x, int r, long window) {
    return dr_diagnostic_impl<double>(
        x, r, window, [](double u, double v) { return u - v; },
        [](double u) { return std::abs(u); });
}

DrDiagnostic dr_diagnostic(const std::function<Mat2(long)>& x, int r, long window) {
    return dr_diagnostic_impl<Mat2>(
        x, r, window, [](const Mat2& u, const Mat2& v) { return u - v; },
        [](const Mat2& u) { return frobenius(u); });
}

DrDiagnostic dr_diagnostic(const std::function<std::vector<Mat2>(long)>& x, int r,
                           long window) {
    auto sub = [](const std::vector<Mat2>& u, const std::vector<Mat2>& v) {
        std::vector<Mat2> d(u.size());
        for (std::size_t g = 0; g < u.size(); ++g) d[g] = u[g] - v[g];
        return d;
    };
    auto norm = [](const std::vector<Mat2>& u) {
        double m = 0.0;
        for (const auto& e : u) m = std::max(m, frobenius(e));
        return m;
    };
    return dr_diagnostic_impl<std::vector<Mat2>>(x, r, window, sub, norm);
}

const char* to_string(DrVerdict v) {
    switch (v) {
        case DrVerdict::Converging: return "converging";
        case DrVerdict::Diverging: return "diverging";
        default: return "inconclusive";
    }
}

}  // namespace cdklab::params
