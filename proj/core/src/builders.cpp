#include "dglab/builders.hpp"

#include <cmath>
#include <numbers>

#include "dglab/rng.hpp"

namespace dg {

GridField build_field(const GridSpec& spec, FieldKind kind, const FieldParams& params) {
    std::vector<double> values(spec.cell_count());
    const int n1 = spec.d > 1 ? spec.nx[1] : 1;
    for (int it = 0; it < spec.nt; ++it) {
        const double t = spec.time_center(it);
        for (int j0 = 0; j0 < spec.nx[0]; ++j0)
            for (int j1 = 0; j1 < n1; ++j1) {
                const Point p = spec.cell_point(j0, j1);
                double v = 0.0;
                switch (kind) {
                case FieldKind::JumpCounterexample:
                    v = t <= -1.0 ? 1.0 : 0.0;
                    break;
                case FieldKind::Constant:
                    v = params.constant_value;
                    break;
                case FieldKind::LinearX:
                    v = p[0];
                    break;
                case FieldKind::SmoothBump: {
                    double s = std::exp((t - spec.domain.t_hi) / 4.0);
                    for (int a = 0; a < spec.d; ++a) {
                        const double xh = (p[a] - spec.domain.center[a]) / spec.domain.radius;
                        s *= std::cos(0.5 * std::numbers::pi * xh);
                    }
                    v = s;
                    break;
                }
                }
                values[spec.index(it, j0, j1)] = v;
            }
    }
    return GridField(spec, std::move(values));
}

namespace {

std::uint64_t block_key(const GridSpec& spec, double cell_size, double t, const Point& p) {
    // Block indices are shifted to stay nonnegative for any domain placement.
    const auto idx = [&](double coord, double lo) {
        return static_cast<std::uint64_t>(std::floor((coord - lo) / cell_size)) + 1u;
    };
    std::uint64_t key = idx(t, spec.domain.t_lo);
    for (int a = 0; a < spec.d; ++a)
        key = Rng::mix(key, idx(p[a], spec.domain.center[a] - spec.domain.radius));
    return key;
}

} // namespace

CoefficientField build_coefficients(const GridSpec& spec, const CoefficientParams& params) {
    if (params.matrix == MatrixKind::Checkerboard && !(params.cell_size > 0.0))
        throw ParameterError("checkerboard cell_size must be positive");

    const std::size_t n = spec.cell_count();
    std::vector<SymMatrix> A(n);
    std::vector<std::array<double, kMaxDim>> B(n, {{0.0, 0.0}});
    std::vector<double> g(n, 0.0);

    const int n1 = spec.d > 1 ? spec.nx[1] : 1;
    for (int it = 0; it < spec.nt; ++it) {
        const double t = spec.time_center(it);
        for (int j0 = 0; j0 < spec.nx[0]; ++j0)
            for (int j1 = 0; j1 < n1; ++j1) {
                const Point p = spec.cell_point(j0, j1);
                const std::size_t i = spec.index(it, j0, j1);
                switch (params.matrix) {
                case MatrixKind::Identity:
                    A[i] = SymMatrix::scaled_identity(params.lambda);
                    break;
                case MatrixKind::Checkerboard: {
                    const std::uint64_t key =
                        Rng::mix(params.seed, block_key(spec, params.cell_size, t, p));
                    const bool high = (key & 1u) != 0;
                    A[i] = SymMatrix::scaled_identity(high ? params.Lambda : params.lambda);
                    break;
                }
                case MatrixKind::Smooth: {
                    const double mid = 0.5 * (params.lambda + params.Lambda);
                    const double amp = 0.5 * (params.Lambda - params.lambda);
                    const double xh = (p[0] - spec.domain.center[0]) / spec.domain.radius;
                    const double th = (t - spec.domain.t_lo) / (spec.domain.t_hi - spec.domain.t_lo);
                    A[i] = SymMatrix::scaled_identity(
                        mid + amp * std::sin(std::numbers::pi * xh) *
                                  std::cos(2.0 * std::numbers::pi * th));
                    break;
                }
                }
                if (params.drift == DriftKind::Constant) B[i] = params.drift_value;
                if (params.source == SourceKind::Constant) g[i] = params.source_value;
            }
    }
    return CoefficientField(spec, std::move(A), std::move(B), std::move(g), params.lambda,
                            std::max(params.Lambda, params.lambda), params.q);
}

std::vector<double> random_modes_profile(const GridSpec& spec, std::uint64_t seed,
                                         double amplitude, int n_modes) {
    Rng rng(seed);
    std::vector<double> coeff0(n_modes), coeff1(n_modes);
    for (int m = 0; m < n_modes; ++m) {
        coeff0[m] = rng.next_in(-1.0, 1.0) / (m + 1.0);
        coeff1[m] = rng.next_in(-1.0, 1.0) / (m + 1.0);
    }
    std::vector<double> out(spec.space_cell_count(), 0.0);
    const int n1 = spec.d > 1 ? spec.nx[1] : 1;
    for (int j0 = 0; j0 < spec.nx[0]; ++j0)
        for (int j1 = 0; j1 < n1; ++j1) {
            const Point p = spec.cell_point(j0, j1);
            const double x0h = (p[0] - spec.domain.center[0]) / spec.domain.radius; // (-1, 1)
            double v = 0.0;
            for (int m = 0; m < n_modes; ++m) {
                const double s0 = std::sin((m + 1) * std::numbers::pi * 0.5 * (x0h + 1.0));
                if (spec.d == 1) {
                    v += coeff0[m] * s0;
                } else {
                    const double x1h = (p[1] - spec.domain.center[1]) / spec.domain.radius;
                    const double s1 = std::sin((m + 1) * std::numbers::pi * 0.5 * (x1h + 1.0));
                    const double s1_low = std::sin(std::numbers::pi * 0.5 * (x1h + 1.0));
                    v += coeff0[m] * s0 * s1 + coeff1[m] * s0 * s1_low;
                }
            }
            std::size_t s = static_cast<std::size_t>(j0);
            if (spec.d > 1) s = s * static_cast<std::size_t>(spec.nx[1]) + j1;
            out[s] = amplitude * v;
        }
    return out;
}

std::vector<double> sine_mode_profile(const GridSpec& spec, int mode) {
    std::vector<double> out(spec.space_cell_count(), 0.0);
    const int n1 = spec.d > 1 ? spec.nx[1] : 1;
    for (int j0 = 0; j0 < spec.nx[0]; ++j0)
        for (int j1 = 0; j1 < n1; ++j1) {
            const Point p = spec.cell_point(j0, j1);
            const double x0h = (p[0] - spec.domain.center[0]) / spec.domain.radius;
            double v = std::sin(mode * std::numbers::pi * 0.5 * (x0h + 1.0));
            if (spec.d > 1) {
                const double x1h = (p[1] - spec.domain.center[1]) / spec.domain.radius;
                v *= std::sin(mode * std::numbers::pi * 0.5 * (x1h + 1.0));
            }
            std::size_t s = static_cast<std::size_t>(j0);
            if (spec.d > 1) s = s * static_cast<std::size_t>(spec.nx[1]) + j1;
            out[s] = v;
        }
    return out;
}

} // namespace dg
