#include "dglab/solver.hpp"

#include <cmath>

#include "dglab/errors.hpp"

namespace dg {

double stability_limit(const CoefficientField& coeffs) {
    const GridSpec& spec = coeffs.spec();
    double dx = spec.dx(0);
    for (int a = 1; a < spec.d; ++a) dx = std::min(dx, spec.dx(a));
    const double L = coeffs.Lambda();
    return dx * dx / (2.0 * spec.d * L + L * dx);
}

namespace {

struct Stepper {
    const CoefficientField& coeffs;
    const GridSpec& spec;
    const SolveConfig& config;
    int n1;
    std::vector<char> evolved; // per spatial cell

    explicit Stepper(const SolveConfig& cfg)
        : coeffs(*cfg.coeffs), spec(cfg.coeffs->spec()), config(cfg),
          n1(spec.d > 1 ? spec.nx[1] : 1) {
        evolved.assign(spec.space_cell_count(), 0);
        for (int j0 = 0; j0 < spec.nx[0]; ++j0)
            for (int j1 = 0; j1 < n1; ++j1) {
                const bool border = j0 == 0 || j0 == spec.nx[0] - 1 ||
                                    (spec.d > 1 && (j1 == 0 || j1 == n1 - 1));
                evolved[sidx(j0, j1)] = (!border && spec.cell_in_domain_ball(j0, j1)) ? 1 : 0;
            }
    }

    std::size_t sidx(int j0, int j1) const {
        std::size_t s = static_cast<std::size_t>(j0);
        if (spec.d > 1) s = s * static_cast<std::size_t>(n1) + static_cast<std::size_t>(j1);
        return s;
    }

    int time_cell_of(double t) const {
        int it = static_cast<int>(std::floor((t - spec.domain.t_lo) / spec.dt()));
        return std::max(0, std::min(spec.nt - 1, it));
    }

    /// Centered tangential derivative used by the cross-diffusion flux.
    double tangential(const std::vector<double>& u, int j0, int j1, int axis) const {
        int lo0 = j0, lo1 = j1, hi0 = j0, hi1 = j1;
        if (axis == 0) { --lo0; ++hi0; } else { --lo1; ++hi1; }
        const bool has_lo = lo0 >= 0 && lo1 >= 0;
        const bool has_hi = hi0 < spec.nx[0] && hi1 < n1;
        const double h = spec.dx(axis);
        if (has_lo && has_hi) return (u[sidx(hi0, hi1)] - u[sidx(lo0, lo1)]) / (2.0 * h);
        if (has_hi) return (u[sidx(hi0, hi1)] - u[sidx(j0, j1)]) / h;
        if (has_lo) return (u[sidx(j0, j1)] - u[sidx(lo0, lo1)]) / h;
        return 0.0;
    }

    /// Spatial operator L u = div(A grad u) + B . grad u at one evolved cell,
    /// split into the neighbor part and the diagonal coefficient so the same
    /// code drives the explicit update and the implicit Gauss-Seidel sweep:
    /// (L u)(cell) = neighbor_sum - diag * u(cell) + cross terms.
    void operator_parts(const std::vector<double>& u, int it, int j0, int j1,
                        double& neighbor_sum, double& diag, double& cross) const {
        neighbor_sum = 0.0;
        diag = 0.0;
        cross = 0.0;
        const SymMatrix& a0 = coeffs.A(it, j0, j1);
        const auto& b = coeffs.B(it, j0, j1);
        for (int axis = 0; axis < spec.d; ++axis) {
            int lo0 = j0, lo1 = j1, hi0 = j0, hi1 = j1;
            if (axis == 0) { --lo0; ++hi0; } else { --lo1; ++hi1; }
            const double h = spec.dx(axis);
            const double a_lo = 0.5 * (a0.diag(axis) + coeffs.A(it, lo0, lo1).diag(axis));
            const double a_hi = 0.5 * (a0.diag(axis) + coeffs.A(it, hi0, hi1).diag(axis));
            neighbor_sum += (a_hi * u[sidx(hi0, hi1)] + a_lo * u[sidx(lo0, lo1)]) / (h * h);
            diag += (a_hi + a_lo) / (h * h);

            const double bv = b[axis];
            if (bv > 0.0) {
                neighbor_sum += bv * u[sidx(hi0, hi1)] / h;
                diag += bv / h;
            } else if (bv < 0.0) {
                neighbor_sum += -bv * u[sidx(lo0, lo1)] / h;
                diag += -bv / h;
            }
        }
        // Off-diagonal diffusion (d = 2 only, zero for the scalar builders):
        // d0(A01 d1 u) + d1(A01 d0 u) with face-averaged A01 and centered
        // tangential differences. Treated explicitly in the implicit sweep.
        if (spec.d > 1 && (a0.a01() != 0.0 ||
                           coeffs.A(it, j0 + 1, j1).a01() != 0.0 ||
                           coeffs.A(it, j0 - 1, j1).a01() != 0.0 ||
                           coeffs.A(it, j0, j1 + 1).a01() != 0.0 ||
                           coeffs.A(it, j0, j1 - 1).a01() != 0.0)) {
            const double h0 = spec.dx(0), h1 = spec.dx(1);
            const double a_hi0 = 0.5 * (a0.a01() + coeffs.A(it, j0 + 1, j1).a01());
            const double a_lo0 = 0.5 * (a0.a01() + coeffs.A(it, j0 - 1, j1).a01());
            const double d1_hi0 = 0.5 * (tangential(u, j0 + 1, j1, 1) + tangential(u, j0, j1, 1));
            const double d1_lo0 = 0.5 * (tangential(u, j0 - 1, j1, 1) + tangential(u, j0, j1, 1));
            cross += (a_hi0 * d1_hi0 - a_lo0 * d1_lo0) / h0;
            const double a_hi1 = 0.5 * (a0.a01() + coeffs.A(it, j0, j1 + 1).a01());
            const double a_lo1 = 0.5 * (a0.a01() + coeffs.A(it, j0, j1 - 1).a01());
            const double d0_hi1 = 0.5 * (tangential(u, j0, j1 + 1, 0) + tangential(u, j0, j1, 0));
            const double d0_lo1 = 0.5 * (tangential(u, j0, j1 - 1, 0) + tangential(u, j0, j1, 0));
            cross += (a_hi1 * d0_hi1 - a_lo1 * d0_lo1) / h1;
        }
    }

    void apply_boundary(std::vector<double>& u, double t) const {
        for (int j0 = 0; j0 < spec.nx[0]; ++j0)
            for (int j1 = 0; j1 < n1; ++j1)
                if (!evolved[sidx(j0, j1)]) u[sidx(j0, j1)] = config.boundary(t, spec.cell_point(j0, j1));
    }

    void explicit_step(const std::vector<double>& cur, std::vector<double>& next, double t_cur,
                       double dt, long step) const {
        const int it = time_cell_of(t_cur);
        for (int j0 = 0; j0 < spec.nx[0]; ++j0)
            for (int j1 = 0; j1 < n1; ++j1) {
                const std::size_t s = sidx(j0, j1);
                if (!evolved[s]) continue;
                double nb, diag, cross;
                operator_parts(cur, it, j0, j1, nb, diag, cross);
                const double v =
                    cur[s] + dt * (nb - diag * cur[s] + cross + coeffs.g(it, j0, j1));
                if (!std::isfinite(v))
                    throw DivergenceError("non-finite value during explicit march", step);
                next[s] = v;
            }
        apply_boundary(next, t_cur + dt);
    }

    void implicit_step(const std::vector<double>& cur, std::vector<double>& next, double t_cur,
                       double dt, long step) const {
        const double t_new = t_cur + dt;
        const int it = time_cell_of(t_new);
        next = cur;
        apply_boundary(next, t_new);
        double scale = 1.0;
        for (double v : cur) scale = std::max(scale, std::abs(v));

        for (int sweep = 0; sweep < config.implicit_max_sweeps; ++sweep) {
            for (int j0 = 0; j0 < spec.nx[0]; ++j0)
                for (int j1 = 0; j1 < n1; ++j1) {
                    const std::size_t s = sidx(j0, j1);
                    if (!evolved[s]) continue;
                    double nb, diag, cross;
                    operator_parts(next, it, j0, j1, nb, diag, cross);
                    next[s] = (cur[s] + dt * (nb + cross + coeffs.g(it, j0, j1))) /
                              (1.0 + dt * diag);
                }
            double res = 0.0;
            for (int j0 = 0; j0 < spec.nx[0]; ++j0)
                for (int j1 = 0; j1 < n1; ++j1) {
                    const std::size_t s = sidx(j0, j1);
                    if (!evolved[s]) continue;
                    double nb, diag, cross;
                    operator_parts(next, it, j0, j1, nb, diag, cross);
                    const double r = next[s] - cur[s] -
                                     dt * (nb - diag * next[s] + cross + coeffs.g(it, j0, j1));
                    res = std::max(res, std::abs(r));
                    if (!std::isfinite(next[s]))
                        throw DivergenceError("non-finite value during implicit march", step);
                }
            if (res <= config.implicit_residual * scale) return;
        }
        throw DivergenceError("implicit per-step solve did not reach the residual target", step);
    }
};

} // namespace

GridField solve(const SolveConfig& config) {
    if (config.coeffs == nullptr) throw ConfigError("solve needs a coefficient field");
    const GridSpec& spec = config.coeffs->spec();
    if (config.initial.size() != spec.space_cell_count())
        throw ConfigError("initial profile size does not match the grid");
    for (double v : config.initial)
        if (!std::isfinite(v)) throw ConfigError("initial profile must be finite");
    if (!(config.cfl_safety > 0.0 && config.cfl_safety <= 1.0))
        throw ConfigError("cfl_safety must lie in (0, 1]");

    const double dt_out = spec.dt();
    long m; // substeps per output cell, kept even so samples land on centers
    if (config.scheme == Scheme::Explicit) {
        const double dt_cap = config.cfl_safety * stability_limit(*config.coeffs);
        if (config.dt) {
            if (!(*config.dt > 0.0)) throw ConfigError("requested dt must be positive");
            if (*config.dt > dt_cap)
                throw ConfigError("explicit scheme requires dt <= cfl_safety * stability_limit");
            m = static_cast<long>(std::ceil(dt_out / *config.dt));
        } else {
            m = static_cast<long>(std::ceil(dt_out / dt_cap));
        }
    } else {
        if (config.dt) {
            if (!(*config.dt > 0.0)) throw ConfigError("requested dt must be positive");
            m = static_cast<long>(std::ceil(dt_out / *config.dt));
        } else {
            m = 2;
        }
    }
    if (m < 2) m = 2;
    if (m % 2 != 0) ++m;
    const double dt = dt_out / static_cast<double>(m);

    Stepper stepper(config);
    std::vector<double> cur(spec.space_cell_count());
    for (std::size_t s = 0; s < cur.size(); ++s) cur[s] = config.initial[s];
    stepper.apply_boundary(cur, spec.domain.t_lo);

    std::vector<double> next(cur.size());
    std::vector<double> values(spec.cell_count());

    long step = 0;
    for (int i = 0; i < spec.nt; ++i) {
        for (long sub = 0; sub < m; ++sub) {
            const double t_cur = spec.domain.t_lo + static_cast<double>(step) * dt;
            ++step;
            if (config.scheme == Scheme::Explicit)
                stepper.explicit_step(cur, next, t_cur, dt, step);
            else
                stepper.implicit_step(cur, next, t_cur, dt, step);
            cur.swap(next);
            if (sub + 1 == m / 2) {
                // state at t_lo + (i + 1/2) dt_out: the output cell center
                const std::size_t base = static_cast<std::size_t>(i) * spec.space_cell_count();
                for (std::size_t s = 0; s < cur.size(); ++s) values[base + s] = cur[s];
            }
        }
    }
    return GridField(spec, std::move(values));
}

GridField rescale_linf_q32(const GridField& u, double target) {
    const Cylinder q32 = Cylinder::standard(1.5);
    double m = 0.0;
    const GridSpec& spec = u.spec();
    const int n1 = spec.d > 1 ? spec.nx[1] : 1;
    const auto [t0, t1] = spec.time_index_range(q32.t_lo, q32.t_hi);
    for (int it = t0; it < t1; ++it)
        for (int j0 = 0; j0 < spec.nx[0]; ++j0)
            for (int j1 = 0; j1 < n1; ++j1)
                if (spec.point_in_ball(spec.cell_point(j0, j1), q32.center, q32.radius))
                    m = std::max(m, std::abs(u.at(it, j0, j1)));
    if (m == 0.0) return u;
    return u.scaled(target / m);
}

} // namespace dg
