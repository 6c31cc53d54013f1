#include "cdklab/transfer.hpp"

#include <cmath>
#include <sstream>

namespace cdklab::transfer {

namespace {

constexpr double kBandEdgeFloor = 1e-14;
constexpr double kArccosClamp = 1e-12;

[[noreturn]] void band_edge(long n, double x, double mdiscr) {
    std::ostringstream os;
    os << "band edge: -discr X_" << n << "(" << x << ") = " << mdiscr << " < 1e-14";
    throw BandEdgeError(os.str());
}

}  // namespace

Mat2 one_step(const ParameterModel& model, long n, double x) {
    if (n < 0) throw std::invalid_argument("one_step: n must be >= 0");
    const double an = model.a(n);
    return {0.0, 1.0, -model.a(n - 1) / an, (x - model.b(n)) / an};
}

Mat2 one_step_derivative(const ParameterModel& model, long n) {
    return {0.0, 0.0, 0.0, 1.0 / model.a(n)};
}

Mat2 n_step(const ParameterModel& model, long n, double x) {
    if (n < 0) throw std::invalid_argument("n_step: n must be >= 0");
    Mat2 prod = Mat2::identity();
    for (long j = n; j < n + model.window(); ++j) prod = one_step(model, j, x) * prod;
    return prod;
}

Mat2Jet n_step_jet(const ParameterModel& model, long n, double x) {
    Mat2Jet jet{Mat2::identity(), {}, {}};
    for (long j = n; j < n + model.window(); ++j) {
        const Mat2 B = one_step(model, j, x);
        const Mat2 Bp = one_step_derivative(model, j);
        jet.d2 = 2.0 * (Bp * jet.d1) + B * jet.d2;  // B'' = 0
        jet.d1 = Bp * jet.value + B * jet.d1;
        jet.value = B * jet.value;
    }
    return jet;
}

Mat2 envelope_one_step(const PeriodicEnvelope& env, long j, double x) {
    const double aj = env.alpha(j);
    return {0.0, 1.0, -env.alpha(j - 1) / aj, (x - env.beta(j)) / aj};
}

Mat2 envelope_n_step(const PeriodicEnvelope& env, long n, double x) {
    Mat2 prod = Mat2::identity();
    for (long j = n; j < n + env.period(); ++j) prod = envelope_one_step(env, j, x) * prod;
    return prod;
}

Mat2Jet envelope_n_step_jet(const PeriodicEnvelope& env, long n, double x) {
    Mat2Jet jet{Mat2::identity(), {}, {}};
    for (long j = n; j < n + env.period(); ++j) {
        const Mat2 B = envelope_one_step(env, j, x);
        const Mat2 Bp{0.0, 0.0, 0.0, 1.0 / env.alpha(j)};
        jet.d2 = 2.0 * (Bp * jet.d1) + B * jet.d2;
        jet.d1 = Bp * jet.value + B * jet.d1;
        jet.value = B * jet.value;
    }
    return jet;
}

Mat2 blend_c_matrix(const PeriodicEnvelope& env, double x) {
    const int N = env.period();
    return {0.0, -1.0, env.alpha(N - 1) / env.alpha(0), -(2.0 * x - env.beta(0)) / env.alpha(0)};
}

Mat2 blend_limit_matrix(const PeriodicEnvelope& env, int i, double x) {
    const int N = env.period();
    if (i < 1 || i > N) throw std::invalid_argument("blend_limit_matrix: i must be in 1..N");
    Mat2 left = Mat2::identity();
    for (int j = 1; j <= i - 1; ++j) left = envelope_one_step(env, j, x) * left;
    Mat2 right = Mat2::identity();
    for (int j = i; j <= N - 1; ++j) right = envelope_one_step(env, j, x) * right;
    return left * blend_c_matrix(env, x) * right;
}

Mat2Jet blend_limit_matrix_jet(const PeriodicEnvelope& env, int i, double x) {
    const int N = env.period();
    if (i < 1 || i > N) throw std::invalid_argument("blend_limit_matrix_jet: i must be in 1..N");
    Mat2Jet jet{Mat2::identity(), {}, {}};
    auto push = [&jet](const Mat2& B, const Mat2& Bp) {
        jet.d2 = 2.0 * (Bp * jet.d1) + B * jet.d2;
        jet.d1 = Bp * jet.value + B * jet.d1;
        jet.value = B * jet.value;
    };
    for (int j = i; j <= N - 1; ++j)
        push(envelope_one_step(env, j, x), Mat2{0.0, 0.0, 0.0, 1.0 / env.alpha(j)});
    push(blend_c_matrix(env, x), Mat2{0.0, 0.0, 0.0, -2.0 / env.alpha(0)});
    for (int j = 1; j <= i - 1; ++j)
        push(envelope_one_step(env, j, x), Mat2{0.0, 0.0, 0.0, 1.0 / env.alpha(j)});
    return jet;
}

Mat2 limit_matrix(const ParameterModel& model, int i, double x) {
    switch (model.tag()) {
        case params::ClassTag::PeriodicBlend:
            return blend_limit_matrix(model.envelope(), i, x);
        case params::ClassTag::PeriodicallyModulated:
            return envelope_n_step(model.envelope(), i, 0.0);
        default:
            return envelope_n_step(model.envelope(), i, x);
    }
}

PhaseSample phase(const ParameterModel& model, long n, double x) {
    const Mat2Jet jet = n_step_jet(model, n, x);
    const double tr = jet.value.trace();
    const double det = jet.value.det();
    const double mdiscr = -jet.value.discr();
    if (mdiscr < kBandEdgeFloor) band_edge(n, x, mdiscr);

    double arg = tr / (2.0 * std::sqrt(det));
    if (arg > 1.0) {
        if (arg > 1.0 + kArccosClamp) band_edge(n, x, mdiscr);
        arg = 1.0;
    } else if (arg < -1.0) {
        if (arg < -1.0 - kArccosClamp) band_edge(n, x, mdiscr);
        arg = -1.0;
    }

    PhaseSample out;
    out.n = n;
    out.theta = std::acos(arg);
    out.theta_prime = -jet.d1.trace() / std::sqrt(mdiscr);
    out.lambda = {tr / 2.0, std::sqrt(mdiscr) / 2.0};
    return out;
}

double phase_second_derivative(const ParameterModel& model, long n, double x) {
    const Mat2Jet jet = n_step_jet(model, n, x);
    const double mdiscr = -jet.value.discr();
    if (mdiscr < kBandEdgeFloor) band_edge(n, x, mdiscr);
    const double tr = jet.value.trace();
    const double tr1 = jet.d1.trace();
    const double tr2 = jet.d2.trace();
    return -tr2 / std::sqrt(mdiscr) - tr1 * tr1 * tr / std::pow(mdiscr, 1.5);
}

}  // namespace cdklab::transfer
