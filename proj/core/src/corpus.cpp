#include "dglab/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "dglab/builders.hpp"
#include "dglab/rng.hpp"
#include "dglab/solver.hpp"

namespace dg {

GridField default_verification_field(int nx, std::uint64_t seed) {
    const GridSpec spec = GridSpec::make(1, nx, nx);
    CoefficientParams params;
    params.matrix = MatrixKind::Checkerboard;
    params.lambda = 1.0;
    params.Lambda = 2.0;
    params.cell_size = 0.25;
    params.seed = seed;
    const CoefficientField coeffs = build_coefficients(spec, params);
    SolveConfig config;
    config.coeffs = &coeffs;
    config.initial = random_modes_profile(spec, Rng::mix(seed, 1));
    return rescale_linf_q32(solve(config));
}

GridField lowering_max_input(const GridField& u) {
    const GridSpec& spec = u.spec();
    std::vector<double> q1bar_values;
    const int n1 = spec.d > 1 ? spec.nx[1] : 1;
    const Cylinder q1bar = Cylinder::shifted_unit();
    for (int it = 0; it < spec.nt; ++it)
        for (int j0 = 0; j0 < spec.nx[0]; ++j0)
            for (int j1 = 0; j1 < n1; ++j1)
                if (spec.cell_in_cylinder(it, j0, j1, q1bar))
                    q1bar_values.push_back(u.at(it, j0, j1));
    if (q1bar_values.empty()) throw GeometryError("field does not resolve Q1_bar");
    std::nth_element(q1bar_values.begin(), q1bar_values.begin() + q1bar_values.size() / 2,
                     q1bar_values.end());
    const double med = q1bar_values[q1bar_values.size() / 2];
    GridField v = u.shifted(-med);
    const double top = v.max_over(Cylinder::standard(1.5));
    if (top > 0.0) v = v.scaled((1.0 - std::exp2(-10.0)) / top);
    return v;
}

} // namespace dg
