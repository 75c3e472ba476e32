#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "mch/errors.hpp"
#include "mch/phase_geometry.hpp"

namespace mch {

// Observables extracted from simulated fields for comparison with the
// ray-resolved predictions: the local wavenumber 2 kappa_j(zeta), the
// t^{-1/2} envelope law, and the fast-decay sectors. All estimators work
// on a uniform grid slice (origin x0, spacing dx).

namespace analysis_detail {

inline double hann(double frac) {
    // frac in [0, 1] across the window
    const double s = std::sin(std::numbers::pi * frac);
    return s * s;
}

} // namespace analysis_detail

/// Hann-windowed Fourier magnitude |S(k)| of u over [x_lo, x_hi],
/// evaluated on a fine uniform k grid (direct summation; the windows are
/// short so this stays cheap and dodges FFT bin quantization).
struct SpectrumPoint {
    double k;
    double magnitude;
};

inline std::vector<SpectrumPoint> windowed_spectrum(
    const std::vector<double>& u, double x0, double dx, double x_lo, double x_hi,
    double k_lo, double k_hi, std::size_t nk = 2400) {
    if (!(x_hi > x_lo) || !(k_hi > k_lo))
        throw std::invalid_argument("windowed_spectrum: empty window");
    const std::ptrdiff_t i_lo = static_cast<std::ptrdiff_t>(std::ceil((x_lo - x0) / dx));
    const std::ptrdiff_t i_hi = static_cast<std::ptrdiff_t>(std::floor((x_hi - x0) / dx));
    if (i_lo < 0 || i_hi >= static_cast<std::ptrdiff_t>(u.size()) || i_hi - i_lo < 16)
        throw InsufficientDataError("windowed_spectrum: window outside grid or too short");

    std::vector<double> wu(static_cast<std::size_t>(i_hi - i_lo + 1));
    std::vector<double> xs(wu.size());
    for (std::size_t j = 0; j < wu.size(); ++j) {
        const double x = x0 + dx * static_cast<double>(i_lo + static_cast<std::ptrdiff_t>(j));
        xs[j] = x;
        wu[j] = u[static_cast<std::size_t>(i_lo + static_cast<std::ptrdiff_t>(j))] *
                analysis_detail::hann((x - x_lo) / (x_hi - x_lo));
    }
    std::vector<SpectrumPoint> out(nk);
    for (std::size_t m = 0; m < nk; ++m) {
        const double k = k_lo + (k_hi - k_lo) * static_cast<double>(m) /
                                    static_cast<double>(nk - 1);
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < wu.size(); ++j) {
            re += wu[j] * std::cos(k * xs[j]);
            im -= wu[j] * std::sin(k * xs[j]);
        }
        out[m] = {k, std::hypot(re, im) * dx};
    }
    return out;
}

namespace analysis_detail {

/// Parabolic refinement of a grid peak location.
inline double refine_peak(const std::vector<SpectrumPoint>& s, std::size_t i) {
    if (i == 0 || i + 1 >= s.size()) return s[i].k;
    const double y0 = s[i - 1].magnitude, y1 = s[i].magnitude, y2 = s[i + 1].magnitude;
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom == 0.0) return s[i].k;
    const double shift = 0.5 * (y0 - y2) / denom;
    return s[i].k + shift * (s[i].k - s[i - 1].k);
}

} // namespace analysis_detail

/// Dominant local wavenumber of u in a window of half-width `half_width`
/// around x = zeta_tilde * t. Requires at least `min_oscillations` of the
/// measured wave inside the window.
inline double local_wavenumber(const std::vector<double>& u, double x0, double dx,
                               double t, double zeta_tilde, double half_width,
                               double k_lo = 0.05, double k_hi = 6.0,
                               double min_oscillations = 6.0) {
    const double xc = zeta_tilde * t;
    const auto spec = windowed_spectrum(u, x0, dx, xc - half_width, xc + half_width,
                                        k_lo, k_hi);
    std::size_t best = 0;
    for (std::size_t i = 1; i < spec.size(); ++i)
        if (spec[i].magnitude > spec[best].magnitude) best = i;
    const double k = analysis_detail::refine_peak(spec, best);
    const double oscillations = 2.0 * half_width * k / (2.0 * std::numbers::pi);
    if (oscillations < min_oscillations)
        throw InsufficientDataError("local_wavenumber: fewer oscillations than required");
    return k;
}

/// The two dominant, well-separated spectral peaks in a window (used where
/// both stationary-point branches radiate). Returned sorted by k.
inline std::pair<double, double> two_peak_wavenumbers(
    const std::vector<double>& u, double x0, double dx, double t, double zeta_tilde,
    double half_width, double k_lo = 0.05, double k_hi = 6.0,
    double min_separation = 0.8) {
    const double xc = zeta_tilde * t;
    const auto spec = windowed_spectrum(u, x0, dx, xc - half_width, xc + half_width,
                                        k_lo, k_hi, 4800);
    // local maxima, strongest first
    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < spec.size(); ++i)
        if (spec[i].magnitude >= spec[i - 1].magnitude &&
            spec[i].magnitude > spec[i + 1].magnitude)
            maxima.push_back(i);
    std::sort(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) {
        return spec[a].magnitude > spec[b].magnitude;
    });
    if (maxima.empty())
        throw InsufficientDataError("two_peak_wavenumbers: no spectral peak found");
    const double k_first = analysis_detail::refine_peak(spec, maxima[0]);
    for (std::size_t idx = 1; idx < maxima.size(); ++idx) {
        const double k_second = analysis_detail::refine_peak(spec, maxima[idx]);
        if (std::fabs(k_second - k_first) >= min_separation)
            return std::minmax(k_first, k_second);
    }
    throw InsufficientDataError("two_peak_wavenumbers: second peak not found");
}

/// Oscillation envelope at ray zeta_tilde from a phase-matched least
/// squares fit: u(x) ~ a cos(Phi(x)) + b sin(Phi(x)) over the window
/// |x/t - zeta_tilde| <= delta_zeta, with the reflection-independent
/// phase model Phi(x) = int 2 kappa0(x'/t) dx' (Hann-weighted normal
/// equations). The envelope is sqrt(a^2 + b^2); windows at a fixed
/// delta_zeta sample the same ray bundle at every t, so ratios across t
/// isolate the temporal decay law.
inline double envelope_at_ray(const std::vector<double>& u, double x0, double dx,
                              double t, double zeta_tilde, double delta_zeta = 0.06) {
    const double z_lo = zeta_tilde - delta_zeta;
    const double z_hi = zeta_tilde + delta_zeta;
    if (!(z_lo > 0.0 && z_hi < 2.0))
        throw std::invalid_argument("envelope_at_ray: window must stay inside (0, 2)");
    const double x_lo = z_lo * t, x_hi = z_hi * t;
    const std::ptrdiff_t i_lo = static_cast<std::ptrdiff_t>(std::ceil((x_lo - x0) / dx));
    const std::ptrdiff_t i_hi = static_cast<std::ptrdiff_t>(std::floor((x_hi - x0) / dx));
    if (i_lo < 0 || i_hi >= static_cast<std::ptrdiff_t>(u.size()) || i_hi - i_lo < 24)
        throw InsufficientDataError("envelope_at_ray: window outside grid or too short");

    double sww = 0.0, scc = 0.0, sss = 0.0, scs = 0.0, suc = 0.0, sus = 0.0;
    double phi = 0.0;
    double x_prev = x0 + dx * static_cast<double>(i_lo);
    for (std::ptrdiff_t i = i_lo; i <= i_hi; ++i) {
        const double x = x0 + dx * static_cast<double>(i);
        if (i > i_lo)
            phi += 2.0 * stationary_points(0.5 * (x + x_prev) / t).kappa0 * dx;
        x_prev = x;
        const double w = analysis_detail::hann((x - x_lo) / (x_hi - x_lo));
        const double c = std::cos(phi), s = std::sin(phi);
        const double uv = u[static_cast<std::size_t>(i)];
        sww += w;
        scc += w * c * c;
        sss += w * s * s;
        scs += w * c * s;
        suc += w * uv * c;
        sus += w * uv * s;
    }
    const double det = scc * sss - scs * scs;
    if (std::fabs(det) < 1e-9 * sww * sww)
        throw InsufficientDataError("envelope_at_ray: ill-conditioned fit window");
    const double a = (sus * (-scs) + suc * sss) / det;
    const double b = (sus * scc - suc * scs) / det;
    return std::hypot(a, b);
}

/// Largest |u| over the ray window z_lo <= x/t <= z_hi.
inline double max_abs_in_ray_window(const std::vector<double>& u, double x0,
                                    double dx, double t, double z_lo, double z_hi) {
    const std::ptrdiff_t i_lo =
        std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::ceil((z_lo * t - x0) / dx)));
    const std::ptrdiff_t i_hi = std::min<std::ptrdiff_t>(
        static_cast<std::ptrdiff_t>(u.size()) - 1,
        static_cast<std::ptrdiff_t>(std::floor((z_hi * t - x0) / dx)));
    if (i_hi < i_lo)
        throw InsufficientDataError("max_abs_in_ray_window: empty window");
    double m = 0.0;
    for (std::ptrdiff_t i = i_lo; i <= i_hi; ++i)
        m = std::max(m, std::fabs(u[static_cast<std::size_t>(i)]));
    return m;
}

/// Least-squares slope of ln(envelope) against ln(t). Requires >= 3
/// samples spanning at least a factor 4 in t; envelopes below the noise
/// floor are an error.
inline double envelope_exponent(const std::vector<std::pair<double, double>>& samples,
                                double noise_floor = 1e-14) {
    if (samples.size() < 3)
        throw InsufficientDataError("envelope_exponent: need at least 3 samples");
    double t_min = samples.front().first, t_max = samples.front().first;
    for (const auto& [t, e] : samples) {
        t_min = std::min(t_min, t);
        t_max = std::max(t_max, t);
        if (!(e > noise_floor))
            throw InsufficientDataError("envelope_exponent: envelope below noise floor");
    }
    if (t_max < 4.0 * t_min)
        throw InsufficientDataError("envelope_exponent: t range must span a factor >= 4");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(samples.size());
    for (const auto& [t, e] : samples) {
        const double lx = std::log(t), ly = std::log(e);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace mch
