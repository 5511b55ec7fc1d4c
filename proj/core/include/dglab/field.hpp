#pragma once

#include <vector>

#include "dglab/geometry.hpp"

namespace dg {

/// Level-set predicate for measures over a cylinder.
///
/// Ties follow the closed conditions of the level sets: u = k counts as
/// "below", u = l as "above", so for k < l the three kinds partition a
/// cylinder exactly.
struct LevelSetKind {
    enum class Tag { Below, Above, Between };
    Tag tag = Tag::Below;
    double k = 0.0; // Below: u <= k;  Between: k < u < l
    double l = 0.0; // Above: u >= l

    static LevelSetKind below(double k) { return {Tag::Below, k, 0.0}; }
    static LevelSetKind above(double l) { return {Tag::Above, 0.0, l}; }
    static LevelSetKind between(double k, double l) {
        if (!(k < l)) throw ParameterError("between needs k < l");
        return {Tag::Between, k, l};
    }

    bool matches(double u) const {
        switch (tag) {
        case Tag::Below: return u <= k;
        case Tag::Above: return u >= l;
        case Tag::Between: return u > k && u < l;
        }
        return false;
    }
};

/// Scalar function sampled at the cell centers of a uniform space-time grid.
/// Immutable by convention after construction; all operations are read-only.
class GridField {
public:
    GridField() = default;
    GridField(GridSpec spec, std::vector<double> values);

    /// Field filled with a single value.
    static GridField constant(const GridSpec& spec, double value);

    const GridSpec& spec() const { return spec_; }
    const std::vector<double>& values() const { return values_; }

    double at(int it, int j0, int j1 = 0) const { return values_[spec_.index(it, j0, j1)]; }
    double& at_mut(int it, int j0, int j1 = 0) { return values_[spec_.index(it, j0, j1)]; }

    double min_value() const;
    double max_value() const;
    /// Max over cells whose centers lie in cyl. Throws GeometryError when the
    /// cylinder is outside the domain or contains no cell center.
    double max_over(const Cylinder& cyl) const;

    /// Returns a field with every value multiplied by s.
    GridField scaled(double s) const;
    /// Returns a field with c added to every value.
    GridField shifted(double c) const;
    /// Pointwise affine map a*u + b.
    GridField affine(double a, double b) const;

private:
    GridSpec spec_;
    std::vector<double> values_;
};

/// Lebesgue measure (sum of cell volumes) of a level set inside a cylinder.
/// Cell-center membership decides inclusion; see GridSpec::cell_in_cylinder.
double measure_level_set(const GridField& u, const Cylinder& cyl, const LevelSetKind& kind);

/// Grid measure of a full cylinder (all cells, no predicate).
double cylinder_measure(const GridSpec& spec, const Cylinder& cyl);

/// Two-sided truncation from the H^1 intermediate value lemma proof:
/// v = 0 below k, u - k strictly between, l - k at or above l.
GridField truncate(const GridField& u, double k, double l);

struct EnergyIntegrals {
    double l2_plus = 0.0;      // integral of (u-k)_+^2
    double grad_l2_plus = 0.0; // integral of |D(u-k)_+|^2
    double lp_plus = 0.0;      // integral of (u-k)_+^p  (not yet ^(1/p))
};

/// Midpoint-rule space-time integrals of (u-k)_+^2, |D(u-k)_+|^2 and
/// (u-k)_+^p over a cylinder. D is the centered finite-difference spatial
/// gradient of the positive part, one-sided where a neighbor falls outside
/// the domain ball or the grid box.
EnergyIntegrals energy_integrals(const GridField& u, const Cylinder& cyl, double k, double p);

/// Space-time integral of (u-k)_+^2 alone (cheaper than energy_integrals).
double l2_plus_integral(const GridField& u, const Cylinder& cyl, double k);

/// Spatial integral of (u-k)_+^2 over {time cell it} x (ball r at x0).
double slice_energy(const GridField& u, int it, const Point& x0, double r, double k);

/// Spatial integral of (u-k)_+^p over {time cell it} x (ball r at x0).
double slice_lp_energy(const GridField& u, int it, const Point& x0, double r, double k, double p);

/// Spatial measure of the cells of one time slice inside a ball.
double slice_measure(const GridSpec& spec, const Point& x0, double r);

/// Spatial integral of |D(u-k)_+|^2 at one time cell over a ball.
double slice_grad_energy(const GridField& u, int it, const Point& x0, double r, double k);

/// Spatial measure (cell areas) of a level set at one time cell over a ball.
double slice_level_measure(const GridField& u, int it, const Point& x0, double r,
                           const LevelSetKind& kind);

/// max - min over cells in cyl. Throws GeometryError on an empty cylinder.
double oscillation(const GridField& u, const Cylinder& cyl);

/// Centered-difference spatial gradient component of w = (u-k)_+ at one cell;
/// axis-aligned, one-sided at masked boundaries.
double positive_part_gradient(const GridField& u, double k, int it, int j0, int j1, int axis);

} // namespace dg
