#pragma once

#include <complex>
#include <stdexcept>

#include "cdklab/mat2.hpp"
#include "cdklab/params.hpp"

namespace cdklab::transfer {

using params::ParameterModel;
using params::PeriodicEnvelope;

/// Thrown when a phase or density is requested at or outside a band edge
/// (-discr below 1e-14).
class BandEdgeError : public std::runtime_error {
public:
    explicit BandEdgeError(const std::string& what) : std::runtime_error(what) {}
};

/// B_n(x) = [[0, 1], [-a_{n-1}/a_n, (x - b_n)/a_n]].
/// n = 0 uses the convention a_{-1} = alpha_{N-1}.
Mat2 one_step(const ParameterModel& model, long n, double x);

/// dB_n/dx = [[0, 0], [0, 1/a_n]].
Mat2 one_step_derivative(const ParameterModel& model, long n);

/// X_n(x): ordered product B_{n+W-1} ... B_n, where W is the model's window
/// (N, or N+2 for blends).
Mat2 n_step(const ParameterModel& model, long n, double x);
Mat2Jet n_step_jet(const ParameterModel& model, long n, double x);

Mat2 envelope_one_step(const PeriodicEnvelope& env, long j, double x);
Mat2 envelope_n_step(const PeriodicEnvelope& env, long n, double x);
Mat2Jet envelope_n_step_jet(const PeriodicEnvelope& env, long n, double x);

/// C(x) = [[0, -1], [alpha_{N-1}/alpha_0, -(2x - beta_0)/alpha_0]], the limit
/// of the three-factor window spanning the two inserted blend slots.
Mat2 blend_c_matrix(const PeriodicEnvelope& env, double x);

/// X_i(x) = (prod_{j=1}^{i-1} B_j) C (prod_{j=i}^{N-1} B_j) for i in 1..N,
/// products ordered right-to-left. Rejects i outside 1..N.
Mat2 blend_limit_matrix(const PeriodicEnvelope& env, int i, double x);
Mat2Jet blend_limit_matrix_jet(const PeriodicEnvelope& env, int i, double x);

/// Class-appropriate limit of (X_{jW+i} : j): the envelope window at x for
/// asymptotically periodic entries, at 0 for modulated ones, and the blend
/// limit matrix for blends (i in 1..N there).
Mat2 limit_matrix(const ParameterModel& model, int i, double x);

struct PhaseSample {
    long n = 0;
    double theta = 0.0;        // in (0, pi)
    double theta_prime = 0.0;  // analytic d theta_n / dx
    std::complex<double> lambda;
};

/// theta_n(x) = arccos(tr X_n / (2 sqrt(det X_n))), with the analytic
/// derivative theta_n' = -tr X_n' / sqrt(-discr X_n) (det X_n does not
/// depend on x). Throws BandEdgeError when -discr X_n < 1e-14.
PhaseSample phase(const ParameterModel& model, long n, double x);

/// Second derivative of theta_n, assembled from the product-rule jet.
double phase_second_derivative(const ParameterModel& model, long n, double x);

}  // namespace cdklab::transfer
