#include <cmath>
#include <numbers>

#include "doctest.h"

#include "dglab/builders.hpp"
#include "dglab/rng.hpp"
#include "dglab/solver.hpp"

using namespace dg;

namespace {

CoefficientField heat_coefficients(const GridSpec& spec, double scale = 1.0) {
    CoefficientParams params;
    params.matrix = MatrixKind::Identity;
    params.lambda = scale;
    params.Lambda = scale;
    return build_coefficients(spec, params);
}

CoefficientField rough_coefficients(const GridSpec& spec, std::uint64_t seed) {
    CoefficientParams params;
    params.matrix = MatrixKind::Checkerboard;
    params.lambda = 1.0;
    params.Lambda = 2.0;
    params.cell_size = 0.25;
    params.seed = seed;
    return build_coefficients(spec, params);
}

} // namespace

TEST_CASE("stability limit formula") {
    // d=1, Lambda=2, dx=0.1: 0.01 / (4 + 0.2)
    const GridSpec spec(1, 10, {40, 1}, Cylinder::box(-1.0, 0.0, {0.0, 0.0}, 2.0));
    CHECK(spec.dx(0) == doctest::Approx(0.1));
    CoefficientParams params;
    params.lambda = 2.0;
    params.Lambda = 2.0;
    CHECK(stability_limit(build_coefficients(spec, params)) ==
          doctest::Approx(0.01 / 4.2).epsilon(1e-14));

    // drift budget is reserved even for B = 0
    params.lambda = 1.0;
    params.Lambda = 1.0;
    CHECK(stability_limit(build_coefficients(spec, params)) ==
          doctest::Approx(0.01 / 2.1).epsilon(1e-14));
}

TEST_CASE("heat mode decays at the separation-of-variables rate") {
    // u(t,x) = exp(-(pi/4)^2 (t - t_lo)) sin(pi (x+2)/4) on (-4,0) x (-2,2)
    const GridSpec spec = GridSpec::make(1, 128, 128);
    const CoefficientField coeffs = heat_coefficients(spec);
    SolveConfig config;
    config.coeffs = &coeffs;
    config.initial = sine_mode_profile(spec);
    const GridField u = solve(config);

    const double rate = std::pow(std::numbers::pi / 4.0, 2);
    double worst = 0.0;
    for (int it = 0; it < spec.nt; it += 16) {
        const double t = spec.time_center(it);
        const double amp = std::exp(-rate * (t - spec.domain.t_lo));
        for (int j = 8; j < spec.nx[0] - 8; j += 8) {
            const double x = spec.space_center(0, j);
            const double expected = amp * std::sin(std::numbers::pi * (x + 2.0) / 4.0);
            worst = std::max(worst, std::abs(u.at(it, j) - expected) / amp);
        }
    }
    // relative error against the mode amplitude; coarse grid, loose bound
    CHECK(worst < 0.05);
}

TEST_CASE("constants are preserved exactly") {
    const GridSpec spec = GridSpec::make(1, 32, 64);
    const CoefficientField coeffs = rough_coefficients(spec, 5);
    SolveConfig config;
    config.coeffs = &coeffs;
    config.initial.assign(spec.space_cell_count(), 0.75);
    config.boundary = [](double, const Point&) { return 0.75; };
    const GridField u = solve(config);
    CHECK(u.min_value() == 0.75);
    CHECK(u.max_value() == 0.75);
}

TEST_CASE("discrete maximum principle and comparison") {
    const GridSpec spec = GridSpec::make(1, 32, 64);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const CoefficientField coeffs = rough_coefficients(spec, seed);
        SolveConfig config;
        config.coeffs = &coeffs;
        config.initial = random_modes_profile(spec, seed + 1000);
        const GridField u = solve(config);
        double init_lo = 0.0, init_hi = 0.0; // boundary value 0 participates
        for (double v : config.initial) {
            init_lo = std::min(init_lo, v);
            init_hi = std::max(init_hi, v);
        }
        CHECK(u.min_value() >= init_lo - 1e-12);
        CHECK(u.max_value() <= init_hi + 1e-12);

        // comparison: adding a nonnegative bump to the data orders the outputs
        SolveConfig config2 = config;
        std::vector<double> higher = config.initial;
        for (std::size_t i = 0; i < higher.size(); ++i)
            higher[i] += 0.1 * std::abs(std::sin(static_cast<double>(i)));
        config2.initial = higher;
        const GridField v = solve(config2);
        for (std::size_t i = 0; i < u.values().size(); ++i)
            CHECK(v.values()[i] >= u.values()[i] - 1e-12);
    }
}

TEST_CASE("zero-boundary energy is nonincreasing") {
    const GridSpec spec = GridSpec::make(1, 32, 64);
    const CoefficientField coeffs = rough_coefficients(spec, 9);
    SolveConfig config;
    config.coeffs = &coeffs;
    config.initial = random_modes_profile(spec, 12);
    const GridField u = solve(config);
    double prev = 1e300;
    for (int it = 0; it < spec.nt; ++it) {
        double e = 0.0;
        for (int j = 0; j < spec.nx[0]; ++j) e += u.at(it, j) * u.at(it, j);
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
}

TEST_CASE("upwind drift keeps the maximum principle") {
    const GridSpec spec = GridSpec::make(1, 32, 64);
    CoefficientParams params;
    params.matrix = MatrixKind::Checkerboard;
    params.lambda = 1.0;
    params.Lambda = 2.0;
    params.seed = 14;
    params.drift = DriftKind::Constant;
    params.drift_value = {{-1.5, 0.0}};
    const CoefficientField coeffs = build_coefficients(spec, params);
    SolveConfig config;
    config.coeffs = &coeffs;
    config.initial = random_modes_profile(spec, 31);
    const GridField u = solve(config);
    double init_lo = 0.0, init_hi = 0.0;
    for (double v : config.initial) {
        init_lo = std::min(init_lo, v);
        init_hi = std::max(init_hi, v);
    }
    CHECK(u.min_value() >= init_lo - 1e-12);
    CHECK(u.max_value() <= init_hi + 1e-12);
}

TEST_CASE("source term bounded by the horizon") {
    // g = 1, zero data: 0 <= u <= elapsed time
    const GridSpec spec = GridSpec::make(1, 32, 64);
    CoefficientParams params;
    params.matrix = MatrixKind::Identity;
    params.source = SourceKind::Constant;
    params.source_value = 1.0;
    const CoefficientField coeffs = build_coefficients(spec, params);
    SolveConfig config;
    config.coeffs = &coeffs;
    config.initial.assign(spec.space_cell_count(), 0.0);
    const GridField u = solve(config);
    CHECK(u.min_value() >= 0.0);
    CHECK(u.max_value() <= spec.domain.t_hi - spec.domain.t_lo);
}

TEST_CASE("determinism and implicit agreement") {
    const GridSpec spec = GridSpec::make(1, 16, 32);
    const CoefficientField coeffs = rough_coefficients(spec, 4);
    SolveConfig config;
    config.coeffs = &coeffs;
    config.initial = random_modes_profile(spec, 8);

    const GridField a = solve(config);
    const GridField b = solve(config);
    CHECK(a.values() == b.values());

    SolveConfig implicit = config;
    implicit.scheme = Scheme::ImplicitEuler;
    implicit.dt = 1e-3;
    const GridField c = solve(implicit);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        diff = std::max(diff, std::abs(a.values()[i] - c.values()[i]));
    CHECK(diff < 0.05);
}

TEST_CASE("solver error paths") {
    const GridSpec spec = GridSpec::make(1, 16, 32);
    const CoefficientField coeffs = heat_coefficients(spec);

    SolveConfig config;
    config.coeffs = &coeffs;
    config.initial.assign(spec.space_cell_count(), 0.0);
    config.dt = 10.0 * stability_limit(coeffs); // CFL violation
    CHECK_THROWS_AS(solve(config), ConfigError);

    SolveConfig short_init;
    short_init.coeffs = &coeffs;
    short_init.initial.assign(3, 0.0);
    CHECK_THROWS_AS(solve(short_init), ConfigError);

    SolveConfig none;
    CHECK_THROWS_AS(solve(none), ConfigError);

    // finite but extreme alternating data overflows the first diffusion
    // update; the march must name the offending step
    SolveConfig blow;
    blow.coeffs = &coeffs;
    blow.initial.resize(spec.space_cell_count());
    for (std::size_t j = 0; j < blow.initial.size(); ++j)
        blow.initial[j] = (j % 2 == 0 ? 1.0 : -1.0) * 1e308;
    try {
        solve(blow);
        CHECK(false);
    } catch (const DivergenceError& e) {
        CHECK(e.step() >= 1);
    }
}

TEST_CASE("rescaling to the Q_{3/2} sup") {
    const GridSpec spec = GridSpec::make(1, 64, 64);
    const CoefficientField coeffs = rough_coefficients(spec, 2);
    SolveConfig config;
    config.coeffs = &coeffs;
    config.initial = random_modes_profile(spec, 77);
    const GridField u = rescale_linf_q32(solve(config));
    const Cylinder q32 = Cylinder::standard(1.5);
    double m = 0.0;
    for (int it = 0; it < spec.nt; ++it)
        for (int j = 0; j < spec.nx[0]; ++j) {
            const Point p = spec.cell_point(j);
            const double t = spec.time_center(it);
            if (t > q32.t_lo && t <= q32.t_hi && std::abs(p[0]) < 1.5)
                m = std::max(m, std::abs(u.at(it, j)));
        }
    CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-dimensional solve stays bounded") {
    const GridSpec spec = GridSpec::make(2, 8, 24);
    const CoefficientField coeffs = rough_coefficients(spec, 6);
    SolveConfig config;
    config.coeffs = &coeffs;
    config.initial = random_modes_profile(spec, 91);
    const GridField u = solve(config);
    double init_lo = 0.0, init_hi = 0.0;
    for (double v : config.initial) {
        init_lo = std::min(init_lo, v);
        init_hi = std::max(init_hi, v);
    }
    CHECK(u.min_value() >= init_lo - 1e-12);
    CHECK(u.max_value() <= init_hi + 1e-12);
}
