#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "dglab/errors.hpp"

namespace dg {

inline constexpr int kMaxDim = 2;

using Point = std::array<double, kMaxDim>;

/// Space-time cylinder (t_lo, t_hi) x B_radius(center).
///
/// The standard parabolic cylinder Q_r(t0, x0) = (t0 - r^2, t0) x B_r(x0) and
/// the time-shifted unit cylinder Q1_bar = (-2, -1) x B_1 are both instances.
struct Cylinder {
    double t_lo = 0.0;
    double t_hi = 0.0;
    Point center{{0.0, 0.0}};
    double radius = 0.0;

    /// Q_r(t0, x0) = (t0 - r^2, t0) x B_r(x0).
    static Cylinder backward(double t0, const Point& x0, double r) {
        if (!(r > 0.0)) throw ParameterError("cylinder radius must be positive");
        return Cylinder{t0 - r * r, t0, x0, r};
    }

    /// Q_r centered at the space-time origin.
    static Cylinder standard(double r) { return backward(0.0, {0.0, 0.0}, r); }

    /// Q1_bar = (-2, -1) x B_1.
    static Cylinder shifted_unit() { return Cylinder{-2.0, -1.0, {0.0, 0.0}, 1.0}; }

    static Cylinder box(double t_lo, double t_hi, const Point& center, double radius) {
        if (!(t_lo < t_hi)) throw ParameterError("cylinder needs t_lo < t_hi");
        if (!(radius > 0.0)) throw ParameterError("cylinder radius must be positive");
        return Cylinder{t_lo, t_hi, center, radius};
    }

    double time_length() const { return t_hi - t_lo; }

    /// Containment up to a 1e-12 slack that absorbs roundoff in nested radii.
    bool contained_in(const Cylinder& outer, int d) const {
        constexpr double eps = 1e-12;
        if (t_lo < outer.t_lo - eps || t_hi > outer.t_hi + eps) return false;
        double dist2 = 0.0;
        for (int a = 0; a < d; ++a) {
            const double delta = center[a] - outer.center[a];
            dist2 += delta * delta;
        }
        return std::sqrt(dist2) + radius <= outer.radius + eps;
    }
};

/// Uniform space-time grid over a cylinder. Cells are indexed time-major;
/// values live at cell centers. For d = 2 the spatial grid covers the
/// bounding box of the ball; the Euclidean disk is realized as a mask.
struct GridSpec {
    int d = 1;
    int nt = 2;
    std::array<int, kMaxDim> nx{{2, 1}};
    Cylinder domain = Cylinder::standard(2.0); // Q_2 = (-4, 0) x B_2

    GridSpec() = default;
    GridSpec(int d_, int nt_, std::array<int, kMaxDim> nx_,
             Cylinder domain_ = Cylinder::standard(2.0))
        : d(d_), nt(nt_), nx(nx_), domain(domain_) {
        validate();
    }

    /// Square grid helper: nx cells per spatial axis.
    static GridSpec make(int d, int nt, int nx_per_axis,
                         Cylinder domain = Cylinder::standard(2.0)) {
        std::array<int, kMaxDim> nx{{nx_per_axis, d > 1 ? nx_per_axis : 1}};
        return GridSpec(d, nt, nx, domain);
    }

    void validate() const {
        if (d < 1 || d > kMaxDim) throw ParameterError("grid dimension must be 1 or 2");
        if (nt < 2) throw ParameterError("grid needs nt >= 2");
        for (int a = 0; a < d; ++a)
            if (nx[a] < 2) throw ParameterError("grid needs nx >= 2 per axis");
        if (!(domain.t_lo < domain.t_hi) || !(domain.radius > 0.0))
            throw ParameterError("invalid grid domain cylinder");
    }

    double dt() const { return (domain.t_hi - domain.t_lo) / nt; }
    double dx(int axis) const { return 2.0 * domain.radius / nx[axis]; }
    double max_dx() const {
        double h = dx(0);
        for (int a = 1; a < d; ++a) h = std::max(h, dx(a));
        return h;
    }

    /// Spatial volume of one cell (dx^d on this uniform grid).
    double cell_area() const {
        double v = 1.0;
        for (int a = 0; a < d; ++a) v *= dx(a);
        return v;
    }
    /// Space-time volume of one cell.
    double cell_volume() const { return dt() * cell_area(); }

    std::size_t space_cell_count() const {
        std::size_t n = 1;
        for (int a = 0; a < d; ++a) n *= static_cast<std::size_t>(nx[a]);
        return n;
    }
    std::size_t cell_count() const { return static_cast<std::size_t>(nt) * space_cell_count(); }

    double time_center(int it) const { return domain.t_lo + (it + 0.5) * dt(); }
    double space_center(int axis, int j) const {
        return domain.center[axis] - domain.radius + (j + 0.5) * dx(axis);
    }

    Point cell_point(int j0, int j1 = 0) const {
        Point p{{space_center(0, j0), 0.0}};
        if (d > 1) p[1] = space_center(1, j1);
        return p;
    }

    /// Time-major flat index.
    std::size_t index(int it, int j0, int j1 = 0) const {
        std::size_t s = static_cast<std::size_t>(j0);
        if (d > 1) s = s * static_cast<std::size_t>(nx[1]) + static_cast<std::size_t>(j1);
        return static_cast<std::size_t>(it) * space_cell_count() + s;
    }

    /// Cell-center membership in a ball: strict Euclidean inequality.
    bool point_in_ball(const Point& p, const Point& c, double r) const {
        double dist2 = 0.0;
        for (int a = 0; a < d; ++a) {
            const double delta = p[a] - c[a];
            dist2 += delta * delta;
        }
        return dist2 < r * r;
    }

    bool cell_in_domain_ball(int j0, int j1 = 0) const {
        return point_in_ball(cell_point(j0, j1), domain.center, domain.radius);
    }

    /// Cell-center membership in a cylinder: time in (t_lo, t_hi], space in
    /// the open ball. The half-open time convention makes adjacent cylinders
    /// such as (-2,-1) and (-1,0) partition the cells exactly.
    bool cell_in_cylinder(int it, int j0, int j1, const Cylinder& cyl) const {
        const double t = time_center(it);
        if (!(t > cyl.t_lo && t <= cyl.t_hi)) return false;
        return point_in_ball(cell_point(j0, j1), cyl.center, cyl.radius);
    }

    /// Range [first, last) of time indices whose centers lie in (t_lo, t_hi].
    std::pair<int, int> time_index_range(double t_lo_, double t_hi_) const {
        int first = nt, last = 0;
        for (int it = 0; it < nt; ++it) {
            const double t = time_center(it);
            if (t > t_lo_ && t <= t_hi_) {
                if (it < first) first = it;
                last = it + 1;
            }
        }
        if (first >= last) return {0, 0};
        return {first, last};
    }

    bool same_geometry(const GridSpec& other) const {
        return d == other.d && nt == other.nt && nx == other.nx &&
               domain.t_lo == other.domain.t_lo && domain.t_hi == other.domain.t_hi &&
               domain.center == other.domain.center && domain.radius == other.domain.radius;
    }
};

} // namespace dg
