#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dglab/coefficients.hpp"
#include "dglab/field.hpp"

namespace dg {

enum class Scheme { Explicit, ImplicitEuler };

/// Dirichlet boundary value, possibly time-dependent.
using BoundaryValue = std::function<double(double t, const Point& x)>;

struct SolveConfig {
    const CoefficientField* coeffs = nullptr;
    /// Spatial profile at t = t_lo, one value per spatial cell (row-major).
    std::vector<double> initial;
    BoundaryValue boundary = [](double, const Point&) { return 0.0; };
    Scheme scheme = Scheme::Explicit;
    double cfl_safety = 0.9;
    /// Requested marching step; when absent the solver picks the largest
    /// step that lands an even number of substeps on each output cell.
    std::optional<double> dt;
    /// Residual target for the implicit per-step Gauss-Seidel solve.
    double implicit_residual = 1e-10;
    int implicit_max_sweeps = 20000;
};

/// Explicit-scheme time-step bound dx^2 / (2 d Lambda + Lambda dx): diffusion
/// plus a reserved first-order upwind drift budget.
double stability_limit(const CoefficientField& coeffs);

/// Marches the divergence-form equation from t_lo to t_hi and samples the
/// state at the output cell centers. Deterministic for identical config.
GridField solve(const SolveConfig& config);

/// Peak-normalizes so that max |u| over Q_(3/2) equals `target` (default 1);
/// identity when the field vanishes there.
GridField rescale_linf_q32(const GridField& u, double target = 1.0);

} // namespace dg
