#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdklab/mat2.hpp"

namespace cdklab::params {

/// N-periodic envelope (alpha_n, beta_n), indexed over all of Z: index n
/// wraps as ((n mod N) + N) mod N, so alpha_{-1} == alpha_{N-1}.
class PeriodicEnvelope {
public:
    PeriodicEnvelope(std::vector<double> alpha, std::vector<double> beta);

    int period() const { return static_cast<int>(alpha_.size()); }
    double alpha(long n) const { return alpha_[wrap(n)]; }
    double beta(long n) const { return beta_[wrap(n)]; }

    const std::vector<double>& alphas() const { return alpha_; }
    const std::vector<double>& betas() const { return beta_; }

private:
    int wrap(long n) const {
        const long N = static_cast<long>(alpha_.size());
        return static_cast<int>(((n % N) + N) % N);
    }
    std::vector<double> alpha_;
    std::vector<double> beta_;
};

enum class ClassTag {
    ExactPeriodic,
    AsymptoticallyPeriodic,
    PeriodicallyModulated,
    PeriodicBlend,
    Custom,
};

/// Jacobi parameters (a_n, b_n) plus class metadata. Sequences are pure
/// functions of n; instances are immutable after construction and safe to
/// share across threads.
class ParameterModel {
public:
    using Sequence = std::function<double(long)>;

    ParameterModel(ClassTag tag, PeriodicEnvelope envelope, Sequence a, Sequence b);

    ClassTag tag() const { return tag_; }
    const PeriodicEnvelope& envelope() const { return envelope_; }

    /// Off-diagonal entry. n = -1 resolves to the envelope value
    /// alpha_{N-1} (used by transfer matrices at the left boundary).
    double a(long n) const {
        if (n < 0) return envelope_.alpha(n);
        return a_(n);
    }
    double b(long n) const { return b_(n); }

    /// Transfer-matrix window length: N, or N+2 for blends.
    int window() const {
        return tag_ == ClassTag::PeriodicBlend ? envelope_.period() + 2 : envelope_.period();
    }

    bool has_blend() const { return static_cast<bool>(inner_); }
    const ParameterModel& blend_inner() const { return *inner_; }
    double blend_c(long n) const { return c_(n); }

    /// Set when a construction-time diagnostic window found violations
    /// beyond tolerance (make_modulated flags, it does not reject).
    bool diagnostic_flagged() const { return diagnostic_flagged_; }
    const std::string& diagnostic_note() const { return diagnostic_note_; }

private:
    friend ParameterModel make_blend(const ParameterModel&, Sequence, long);
    friend ParameterModel make_modulated(const PeriodicEnvelope&, Sequence, long, double);

    ClassTag tag_;
    PeriodicEnvelope envelope_;
    Sequence a_;
    Sequence b_;
    std::shared_ptr<const ParameterModel> inner_;
    Sequence c_;
    bool diagnostic_flagged_ = false;
    std::string diagnostic_note_;
};

/// a_n = alpha_{n mod N}, b_n = beta_{n mod N}.
ParameterModel make_periodic(const PeriodicEnvelope& envelope);

/// Asymptotically periodic entries given directly: |a_n - alpha_n| -> 0 and
/// |b_n - beta_n| -> 0 are the caller's contract (checked on a small window).
ParameterModel make_asymptotically_periodic(const PeriodicEnvelope& envelope,
                                            ParameterModel::Sequence a,
                                            ParameterModel::Sequence b);

/// a_n = alpha_{n mod N} * growth(n), b_n = beta_{n mod N} * growth(n).
/// Growth sequences violating the modulation conditions beyond `tol` on the
/// diagnostic window are flagged on the returned model, not rejected.
ParameterModel make_modulated(const PeriodicEnvelope& envelope,
                              ParameterModel::Sequence growth,
                              long diagnostic_window = 1000000,
                              double tol = 1e-6);

/// Index splicing of an asymptotically periodic model with two unbounded
/// insertions per period:
///   a_{k(N+2)+i} = inner.a(kN+i)  for i < N,
///   a_{k(N+2)+N} = c(2k), a_{k(N+2)+N+1} = c(2k+1), b = 0 at both slots.
ParameterModel make_blend(const ParameterModel& inner, ParameterModel::Sequence c,
                          long probe_window = 64);

/// Fully custom sequences carrying an envelope for the limit objects.
ParameterModel make_custom(const PeriodicEnvelope& envelope,
                           ParameterModel::Sequence a, ParameterModel::Sequence b);

/// sum_{k=0}^{n} 1/a_k, compensated.
double carleman_partial_sum(const ParameterModel& model, long n);

enum class DrVerdict { Converging, Diverging, Inconclusive };

/// Finite-sample Stolz-class diagnostic: partial sums of ||Delta^j x_n||^{r/j}
/// for j = 1..r plus a tail-slope verdict. The verdict compares the last two
/// decades of partial-sum increments; it is a heuristic, not a test the paper
/// provides.
struct DrDiagnostic {
    int r = 1;
    std::vector<std::vector<double>> per_j_partial_sums;  // [j-1][n]
    std::vector<DrVerdict> per_j_verdict;
    DrVerdict verdict = DrVerdict::Inconclusive;
};

DrDiagnostic dr_diagnostic(const std::function<double(long)>& x, int r, long window);
DrDiagnostic dr_diagnostic(const std::function<Mat2(long)>& x, int r, long window);
/// Sup-norm over a grid of matrix samples, ||X_n|| = max_g frobenius(X_n(g)).
DrDiagnostic dr_diagnostic(const std::function<std::vector<Mat2>(long)>& x, int r,
                           long window);

const char* to_string(DrVerdict v);

}  // namespace cdklab::params
