#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "mch/quadrature.hpp"

using namespace mch;

TEST_CASE("adaptive quadrature reproduces closed-form integrals") {
    QuadratureSpec spec;
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, spec) ==
          Catch::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0, spec) ==
          Catch::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
    // sharp peak forces subdivision
    CHECK(integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, spec) ==
          Catch::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-10));
}

TEST_CASE("complex integrands integrate componentwise") {
    auto f = [](double x) {
        return std::complex<double>(std::cos(x), std::sin(x));
    };
    const auto v = integrate(f, 0.0, 1.0);
    CHECK(v.real() == Catch::Approx(std::sin(1.0)).epsilon(1e-12));
    CHECK(v.imag() == Catch::Approx(1.0 - std::cos(1.0)).epsilon(1e-12));
}

TEST_CASE("graded transform handles log endpoint singularities") {
    // int_0^1 ln(x) dx = -1
    const double v = integrate_graded([](double x) { return std::log(x); }, 0.0, 1.0,
                                      true, false);
    CHECK(v == Catch::Approx(-1.0).epsilon(1e-9));
    // both endpoints: int_0^1 ln(x(1-x)) dx = -2
    const double w = integrate_graded(
        [](double x) { return std::log(x * (1.0 - x)); }, 0.0, 1.0, true, true);
    CHECK(w == Catch::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("interior log points are split and graded") {
    // int_0^2 ln|x-1| dx = -2
    const double v = integrate_with_log_points(
        [](double x) { return std::log(std::fabs(x - 1.0)); }, 0.0, 2.0, {1.0});
    CHECK(v == Catch::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("subdivision limit raises an accuracy error") {
    QuadratureSpec tight;
    tight.rel_tol = 1e-15;
    tight.abs_tol = 1e-300;
    tight.max_subdivisions = 4;
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / (1e-8 + x * x); }, -1.0,
                              1.0, tight),
                    AccuracyError);
}
