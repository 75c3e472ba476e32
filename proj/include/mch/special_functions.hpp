#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace mch {

/// log Gamma(z) for Re z > 0, principal branch, Lanczos approximation
/// (g = 7, 9 terms). Relative accuracy ~1e-13 on the region used here.
inline std::complex<double> log_gamma(std::complex<double> z) {
    if (z.real() <= 0.0 && z.imag() == 0.0)
        throw std::domain_error("log_gamma: nonpositive real argument");
    static constexpr double coeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    bool reflected = false;
    std::complex<double> result = 0.0;
    if (z.real() < 0.5) {
        // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        result = std::log(std::numbers::pi / std::sin(std::numbers::pi * z));
        z = 1.0 - z;
        reflected = true;
    }
    z -= 1.0;
    std::complex<double> x = coeff[0];
    for (int i = 1; i < 9; ++i) x += coeff[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + 7.5;
    std::complex<double> lg = 0.5 * std::log(2.0 * std::numbers::pi) +
                              (z + 0.5) * std::log(t) - t + std::log(x);
    return reflected ? result - lg : lg;
}

/// arg Gamma(i h) for h > 0, via Gamma(ih) = Gamma(1 + ih) / (ih).
/// The result is a phase; callers feed it into cos(), so the 2*pi branch
/// is irrelevant.
inline double arg_gamma_ih(double h) {
    if (!(h > 0.0)) throw std::domain_error("arg_gamma_ih: requires h > 0");
    const std::complex<double> lg = log_gamma(std::complex<double>(1.0, h));
    return lg.imag() - std::numbers::pi / 2.0;
}

} // namespace mch
