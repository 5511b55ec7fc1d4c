#pragma once

#include <array>
#include <vector>

#include "dglab/geometry.hpp"

namespace dg {

/// Symmetric d x d matrix stored as [a00, a01, a11] (a01 unused for d = 1).
struct SymMatrix {
    std::array<double, 3> m{{0.0, 0.0, 0.0}};

    static SymMatrix scaled_identity(double s) { return SymMatrix{{s, 0.0, s}}; }

    double a00() const { return m[0]; }
    double a01() const { return m[1]; }
    double a11() const { return m[2]; }

    double diag(int axis) const { return axis == 0 ? m[0] : m[2]; }

    /// Eigenvalue range of the symmetric matrix (for d = 1 just a00).
    std::pair<double, double> eigen_range(int d) const {
        if (d == 1) return {m[0], m[0]};
        const double tr = m[0] + m[2];
        const double det = m[0] * m[2] - m[1] * m[1];
        const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
        return {tr / 2.0 - disc, tr / 2.0 + disc};
    }
};

/// The data (A, B, g, lambda, Lambda, q) of the divergence-form equation,
/// sampled per cell on the same grid as the fields it produces.
class CoefficientField {
public:
    CoefficientField(GridSpec spec, std::vector<SymMatrix> A,
                     std::vector<std::array<double, kMaxDim>> B, std::vector<double> g,
                     double lambda, double Lambda, double q);

    const GridSpec& spec() const { return spec_; }
    double lambda() const { return lambda_; }
    double Lambda() const { return Lambda_; }
    double q() const { return q_; }

    const SymMatrix& A(int it, int j0, int j1 = 0) const { return A_[spec_.index(it, j0, j1)]; }
    const std::array<double, kMaxDim>& B(int it, int j0, int j1 = 0) const {
        return B_[spec_.index(it, j0, j1)];
    }
    double g(int it, int j0, int j1 = 0) const { return g_[spec_.index(it, j0, j1)]; }

    const std::vector<SymMatrix>& A_values() const { return A_; }
    const std::vector<std::array<double, kMaxDim>>& B_values() const { return B_; }
    const std::vector<double>& g_values() const { return g_; }

    /// Discrete L^q norm of g over the domain cells.
    double g_norm() const;

private:
    GridSpec spec_;
    std::vector<SymMatrix> A_;
    std::vector<std::array<double, kMaxDim>> B_;
    std::vector<double> g_;
    double lambda_ = 1.0;
    double Lambda_ = 1.0;
    double q_ = 4.0;
};

} // namespace dg
