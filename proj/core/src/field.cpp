#include "dglab/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dg {

GridField::GridField(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
    spec_.validate();
    if (values_.size() != spec_.cell_count())
        throw ParameterError("GridField value count does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw ParameterError("GridField values must be finite");
}

GridField GridField::constant(const GridSpec& spec, double value) {
    return GridField(spec, std::vector<double>(spec.cell_count(), value));
}

double GridField::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double GridField::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

GridField GridField::scaled(double s) const { return affine(s, 0.0); }
GridField GridField::shifted(double c) const { return affine(1.0, c); }

GridField GridField::affine(double a, double b) const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = a * values_[i] + b;
    return GridField(spec_, std::move(out));
}

namespace {

void require_contained(const GridSpec& spec, const Cylinder& cyl) {
    if (!cyl.contained_in(spec.domain, spec.d))
        throw GeometryError("cylinder not contained in the field domain");
}

/// Visits (it, j0, j1) for every cell whose center lies in cyl.
template <typename F>
void for_cells_in(const GridSpec& spec, const Cylinder& cyl, F&& f) {
    const auto [t0, t1] = spec.time_index_range(cyl.t_lo, cyl.t_hi);
    const int n1 = spec.d > 1 ? spec.nx[1] : 1;
    for (int it = t0; it < t1; ++it)
        for (int j0 = 0; j0 < spec.nx[0]; ++j0)
            for (int j1 = 0; j1 < n1; ++j1)
                if (spec.point_in_ball(spec.cell_point(j0, j1), cyl.center, cyl.radius))
                    f(it, j0, j1);
}

/// Visits spatial cells (j0, j1) with centers inside the ball B_r(x0).
template <typename F>
void for_space_cells_in(const GridSpec& spec, const Point& x0, double r, F&& f) {
    const int n1 = spec.d > 1 ? spec.nx[1] : 1;
    for (int j0 = 0; j0 < spec.nx[0]; ++j0)
        for (int j1 = 0; j1 < n1; ++j1)
            if (spec.point_in_ball(spec.cell_point(j0, j1), x0, r)) f(j0, j1);
}

} // namespace

double GridField::max_over(const Cylinder& cyl) const {
    require_contained(spec_, cyl);
    double m = -std::numeric_limits<double>::infinity();
    bool any = false;
    for_cells_in(spec_, cyl, [&](int it, int j0, int j1) {
        m = std::max(m, at(it, j0, j1));
        any = true;
    });
    if (!any) throw GeometryError("cylinder contains no cell center");
    return m;
}

double measure_level_set(const GridField& u, const Cylinder& cyl, const LevelSetKind& kind) {
    require_contained(u.spec(), cyl);
    const GridSpec& spec = u.spec();
    std::size_t count = 0;
    for_cells_in(spec, cyl, [&](int it, int j0, int j1) {
        if (kind.matches(u.at(it, j0, j1))) ++count;
    });
    return static_cast<double>(count) * spec.cell_volume();
}

double cylinder_measure(const GridSpec& spec, const Cylinder& cyl) {
    if (!cyl.contained_in(spec.domain, spec.d))
        throw GeometryError("cylinder not contained in the field domain");
    std::size_t count = 0;
    for_cells_in(spec, cyl, [&](int, int, int) { ++count; });
    return static_cast<double>(count) * spec.cell_volume();
}

GridField truncate(const GridField& u, double k, double l) {
    if (!(k < l)) throw ParameterError("truncate needs k < l");
    std::vector<double> out(u.values().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double v = u.values()[i];
        out[i] = v <= k ? 0.0 : (v >= l ? l - k : v - k);
    }
    return GridField(u.spec(), std::move(out));
}

double positive_part_gradient(const GridField& u, double k, int it, int j0, int j1, int axis) {
    const GridSpec& spec = u.spec();
    const auto w = [&](int a, int b) {
        return std::max(u.at(it, a, b) - k, 0.0);
    };
    int lo0 = j0, lo1 = j1, hi0 = j0, hi1 = j1;
    if (axis == 0) { --lo0; ++hi0; } else { --lo1; ++hi1; }

    const auto valid = [&](int a, int b) {
        if (a < 0 || a >= spec.nx[0]) return false;
        if (spec.d > 1 && (b < 0 || b >= spec.nx[1])) return false;
        return spec.cell_in_domain_ball(a, b);
    };
    const bool has_lo = valid(lo0, lo1);
    const bool has_hi = valid(hi0, hi1);
    const double h = spec.dx(axis);
    if (has_lo && has_hi) return (w(hi0, hi1) - w(lo0, lo1)) / (2.0 * h);
    if (has_hi) return (w(hi0, hi1) - w(j0, j1)) / h;
    if (has_lo) return (w(j0, j1) - w(lo0, lo1)) / h;
    return 0.0;
}

EnergyIntegrals energy_integrals(const GridField& u, const Cylinder& cyl, double k, double p) {
    if (!(p >= 1.0)) throw ParameterError("energy_integrals needs p >= 1");
    require_contained(u.spec(), cyl);
    const GridSpec& spec = u.spec();
    EnergyIntegrals out;
    for_cells_in(spec, cyl, [&](int it, int j0, int j1) {
        const double w = std::max(u.at(it, j0, j1) - k, 0.0);
        out.l2_plus += w * w;
        out.lp_plus += std::pow(w, p);
        double g2 = 0.0;
        for (int a = 0; a < spec.d; ++a) {
            const double g = positive_part_gradient(u, k, it, j0, j1, a);
            g2 += g * g;
        }
        out.grad_l2_plus += g2;
    });
    const double vol = spec.cell_volume();
    out.l2_plus *= vol;
    out.lp_plus *= vol;
    out.grad_l2_plus *= vol;
    return out;
}

double l2_plus_integral(const GridField& u, const Cylinder& cyl, double k) {
    require_contained(u.spec(), cyl);
    double sum = 0.0;
    for_cells_in(u.spec(), cyl, [&](int it, int j0, int j1) {
        const double w = std::max(u.at(it, j0, j1) - k, 0.0);
        sum += w * w;
    });
    return sum * u.spec().cell_volume();
}

double slice_energy(const GridField& u, int it, const Point& x0, double r, double k) {
    const GridSpec& spec = u.spec();
    double sum = 0.0;
    for_space_cells_in(spec, x0, r, [&](int j0, int j1) {
        const double w = std::max(u.at(it, j0, j1) - k, 0.0);
        sum += w * w;
    });
    return sum * spec.cell_area();
}

double slice_lp_energy(const GridField& u, int it, const Point& x0, double r, double k, double p) {
    const GridSpec& spec = u.spec();
    double sum = 0.0;
    for_space_cells_in(spec, x0, r, [&](int j0, int j1) {
        const double w = std::max(u.at(it, j0, j1) - k, 0.0);
        sum += std::pow(w, p);
    });
    return sum * spec.cell_area();
}

double slice_measure(const GridSpec& spec, const Point& x0, double r) {
    std::size_t count = 0;
    for_space_cells_in(spec, x0, r, [&](int, int) { ++count; });
    return static_cast<double>(count) * spec.cell_area();
}

double slice_grad_energy(const GridField& u, int it, const Point& x0, double r, double k) {
    const GridSpec& spec = u.spec();
    double sum = 0.0;
    for_space_cells_in(spec, x0, r, [&](int j0, int j1) {
        for (int a = 0; a < spec.d; ++a) {
            const double g = positive_part_gradient(u, k, it, j0, j1, a);
            sum += g * g;
        }
    });
    return sum * spec.cell_area();
}

double slice_level_measure(const GridField& u, int it, const Point& x0, double r,
                           const LevelSetKind& kind) {
    const GridSpec& spec = u.spec();
    std::size_t count = 0;
    for_space_cells_in(spec, x0, r, [&](int j0, int j1) {
        if (kind.matches(u.at(it, j0, j1))) ++count;
    });
    return static_cast<double>(count) * spec.cell_area();
}

double oscillation(const GridField& u, const Cylinder& cyl) {
    require_contained(u.spec(), cyl);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    bool any = false;
    for_cells_in(u.spec(), cyl, [&](int it, int j0, int j1) {
        const double v = u.at(it, j0, j1);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        any = true;
    });
    if (!any) throw GeometryError("oscillation over an empty cylinder");
    return hi - lo;
}

} // namespace dg
