#pragma once

#include <cmath>

namespace cdklab {

/// 2x2 real matrix. Entries are named (row,col); m21 is the [2,1] entry
/// that shows up in the density formulas.
struct Mat2 {
    double m11 = 0.0, m12 = 0.0;
    double m21 = 0.0, m22 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double trace() const { return m11 + m22; }
    double det() const { return m11 * m22 - m12 * m21; }
    /// discr X = (tr X)^2 - 4 det X
    double discr() const {
        const double t = trace();
        return t * t - 4.0 * det();
    }

    Mat2 operator*(const Mat2& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
    Mat2 operator+(const Mat2& o) const {
        return {m11 + o.m11, m12 + o.m12, m21 + o.m21, m22 + o.m22};
    }
    Mat2 operator-(const Mat2& o) const {
        return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22};
    }
    Mat2 operator*(double s) const { return {m11 * s, m12 * s, m21 * s, m22 * s}; }
    Mat2 operator-() const { return {-m11, -m12, -m21, -m22}; }
};

inline Mat2 operator*(double s, const Mat2& m) { return m * s; }

inline double frobenius(const Mat2& m) {
    return std::sqrt(m.m11 * m.m11 + m.m12 * m.m12 + m.m21 * m.m21 + m.m22 * m.m22);
}

inline double max_abs(const Mat2& m) {
    return std::max(std::max(std::abs(m.m11), std::abs(m.m12)),
                    std::max(std::abs(m.m21), std::abs(m.m22)));
}

/// Value together with first and second x-derivatives, for transfer-matrix
/// products assembled by the product rule.
struct Mat2Jet {
    Mat2 value;
    Mat2 d1;
    Mat2 d2;
};

}  // namespace cdklab
