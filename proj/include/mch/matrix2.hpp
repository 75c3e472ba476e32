#pragma once

#include <complex>

namespace mch {

using Complex = std::complex<double>;

/// 2x2 complex matrix, row-major. Plain value algebra, no invariants:
/// structure checks (unimodularity, symmetry patterns) are per-operation
/// contracts so that negative-control inputs remain expressible.
struct Matrix2C {
    Complex a11{}, a12{}, a21{}, a22{};

    static Matrix2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Matrix2C sigma1() { return {0.0, 1.0, 1.0, 0.0}; }
    static Matrix2C sigma3() { return {1.0, 0.0, 0.0, -1.0}; }
    /// Off-diagonal matrix ((0, c), (conj c, 0)) used by the local-model sums.
    static Matrix2C off_diag(Complex c) { return {0.0, c, std::conj(c), 0.0}; }

    Complex det() const { return a11 * a22 - a12 * a21; }
    Complex trace() const { return a11 + a22; }

    Matrix2C conj() const {
        return {std::conj(a11), std::conj(a12), std::conj(a21), std::conj(a22)};
    }

    Matrix2C inverse() const {
        const Complex d = det();
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }

    friend Matrix2C operator+(const Matrix2C& x, const Matrix2C& y) {
        return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
    }
    friend Matrix2C operator-(const Matrix2C& x, const Matrix2C& y) {
        return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
    }
    friend Matrix2C operator*(const Matrix2C& x, const Matrix2C& y) {
        return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
                x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
    }
    friend Matrix2C operator*(Complex s, const Matrix2C& x) {
        return {s * x.a11, s * x.a12, s * x.a21, s * x.a22};
    }
    friend Matrix2C operator*(const Matrix2C& x, Complex s) { return s * x; }

    double max_abs() const {
        return std::max(std::max(std::abs(a11), std::abs(a12)),
                        std::max(std::abs(a21), std::abs(a22)));
    }
};

inline double distance(const Matrix2C& x, const Matrix2C& y) {
    return (x - y).max_abs();
}

} // namespace mch
