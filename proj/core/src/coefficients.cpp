#include "dglab/coefficients.hpp"

#include <cmath>

namespace dg {

CoefficientField::CoefficientField(GridSpec spec, std::vector<SymMatrix> A,
                                   std::vector<std::array<double, kMaxDim>> B,
                                   std::vector<double> g, double lambda, double Lambda, double q)
    : spec_(spec), A_(std::move(A)), B_(std::move(B)), g_(std::move(g)),
      lambda_(lambda), Lambda_(Lambda), q_(q) {
    spec_.validate();
    const std::size_t n = spec_.cell_count();
    if (A_.size() != n || B_.size() != n || g_.size() != n)
        throw ParameterError("coefficient arrays do not match the grid");
    if (!(0.0 < lambda_ && lambda_ <= Lambda_))
        throw ParameterError("ellipticity bounds need 0 < lambda <= Lambda");
    if (!(q_ > 2.0))
        throw ParameterError("source exponent needs q > max(2, (d+2)/2)");

    constexpr double eps = 1e-12;
    for (const SymMatrix& a : A_) {
        const auto [lo, hi] = a.eigen_range(spec_.d);
        if (!(lo >= lambda_ - eps && hi <= Lambda_ + eps))
            throw ParameterError("coefficient matrix eigenvalues outside [lambda, Lambda]");
    }
    for (const auto& b : B_) {
        double n2 = 0.0;
        for (int a = 0; a < spec_.d; ++a) n2 += b[a] * b[a];
        if (!(std::sqrt(n2) <= Lambda_ + eps))
            throw ParameterError("drift magnitude exceeds Lambda");
    }
    for (double v : g_)
        if (!std::isfinite(v)) throw ParameterError("source values must be finite");
}

double CoefficientField::g_norm() const {
    double sum = 0.0;
    for (double v : g_) sum += std::pow(std::abs(v), q_);
    return std::pow(sum * spec_.cell_volume(), 1.0 / q_);
}

} // namespace dg
