#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "mch/wave_analysis.hpp"

using namespace mch;

namespace {

// uniform grid covering [x0, x0 + n dx)
struct TestGrid {
    double x0;
    double dx;
    std::size_t n;
    double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
};

} // namespace

TEST_CASE("local wavenumber recovers a pure tone") {
    TestGrid g{0.0, 0.125, 8192};
    const double k_true = 0.486;
    std::vector<double> u(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        u[i] = 0.01 * std::cos(k_true * g.x(i) + 0.7);
    const double t = 400.0;
    const double k = local_wavenumber(u, g.x0, g.dx, t, 1.0, 40.0);
    CHECK(k == Catch::Approx(k_true).epsilon(0.01));
}

TEST_CASE("local wavenumber rejects windows with too few oscillations") {
    TestGrid g{0.0, 0.125, 8192};
    std::vector<double> u(g.n);
    for (std::size_t i = 0; i < g.n; ++i) u[i] = std::cos(0.05 * g.x(i));
    CHECK_THROWS_AS(local_wavenumber(u, g.x0, g.dx, 400.0, 1.0, 40.0),
                    InsufficientDataError);
}

TEST_CASE("two-peak extraction on a synthetic two-wave field") {
    TestGrid g{-1024.0, 0.125, 16384};
    const double kA = 1.1589, kB = 3.5576;
    std::vector<double> u(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        u[i] = 3e-3 * std::cos(kA * g.x(i) + 0.2) + 1e-3 * std::cos(kB * g.x(i) - 1.1);
    const double t = 400.0;
    const auto [k_lo, k_hi] = two_peak_wavenumbers(u, g.x0, g.dx, t, -0.125, 30.0);
    CHECK(k_lo == Catch::Approx(kA).epsilon(0.01));
    CHECK(k_hi == Catch::Approx(kB).epsilon(0.01));
}

TEST_CASE("phase-matched envelope recovers the amplitude of a chirped wave") {
    TestGrid g{0.0, 0.125, 16384};
    const double t = 400.0;
    // manufactured signal with the model phase Phi' = -2 kappa0(x/t)
    std::vector<double> u(g.n);
    double phi = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        const double z = x / t;
        if (z > 0.05 && z < 1.95) {
            phi += 2.0 * stationary_points(z).kappa0 * g.dx;
            u[i] = 4.2e-3 * std::cos(phi + 0.3);
        }
    }
    const double env = envelope_at_ray(u, g.x0, g.dx, t, 1.0, 0.06);
    CHECK(env == Catch::Approx(4.2e-3).epsilon(0.02));
}

TEST_CASE("envelope exponent: manufactured t^{-1/2} decay and error paths") {
    std::vector<std::pair<double, double>> samples;
    for (const double t : {100.0, 200.0, 400.0})
        samples.emplace_back(t, 0.37 / std::sqrt(t));
    CHECK(envelope_exponent(samples) == Catch::Approx(-0.5).margin(1e-3));

    std::vector<std::pair<double, double>> sparse{{100.0, 1.0}, {200.0, 0.7}};
    CHECK_THROWS_AS(envelope_exponent(sparse), InsufficientDataError);

    std::vector<std::pair<double, double>> narrow{
        {100.0, 1.0}, {150.0, 0.8}, {200.0, 0.7}};
    CHECK_THROWS_AS(envelope_exponent(narrow), InsufficientDataError);

    std::vector<std::pair<double, double>> silent{
        {100.0, 1e-16}, {200.0, 1e-16}, {400.0, 1e-16}};
    CHECK_THROWS_AS(envelope_exponent(silent), InsufficientDataError);
}

TEST_CASE("ray-window maximum") {
    TestGrid g{-10.0, 0.5, 100};
    std::vector<double> u(g.n, 0.0);
    u[50] = -3.0; // x = 15
    const double t = 10.0;
    CHECK(max_abs_in_ray_window(u, g.x0, g.dx, t, 1.0, 2.0) == 3.0);
    CHECK(max_abs_in_ray_window(u, g.x0, g.dx, t, 1.8, 2.0) == 0.0);
}
