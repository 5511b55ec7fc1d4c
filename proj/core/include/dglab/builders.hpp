#pragma once

#include <cstdint>

#include "dglab/coefficients.hpp"
#include "dglab/field.hpp"

namespace dg {

/// Built-in grid functions. `jump_counterexample` is the subsolution that is
/// 1 for cell centers with t <= -1 and 0 otherwise; it separates the two
/// orientations of the parabolic intermediate value inequality.
enum class FieldKind { JumpCounterexample, Constant, LinearX, SmoothBump };

struct FieldParams {
    double constant_value = 0.0; // Constant
};

GridField build_field(const GridSpec& spec, FieldKind kind, const FieldParams& params = {});

enum class MatrixKind { Identity, Checkerboard, Smooth };
enum class DriftKind { Zero, Constant };
enum class SourceKind { Zero, Constant };

struct CoefficientParams {
    MatrixKind matrix = MatrixKind::Identity;
    double lambda = 1.0;
    double Lambda = 1.0;
    double q = 4.0;
    // Checkerboard: coarse block edge length (same along every axis, time
    // included) and the seed that picks lambda*I or Lambda*I per block.
    double cell_size = 0.25;
    std::uint64_t seed = 0;
    DriftKind drift = DriftKind::Zero;
    std::array<double, kMaxDim> drift_value{{0.0, 0.0}};
    SourceKind source = SourceKind::Zero;
    double source_value = 0.0;
};

/// Deterministic for a given (params, seed); the checkerboard draw is keyed
/// on the block index, so it is independent of traversal order.
CoefficientField build_coefficients(const GridSpec& spec, const CoefficientParams& params);

/// Smooth seeded spatial profile (a few random Fourier modes vanishing at the
/// box boundary); used as rough-coefficient solver initial data.
std::vector<double> random_modes_profile(const GridSpec& spec, std::uint64_t seed,
                                         double amplitude = 1.0, int n_modes = 6);

/// Lowest Dirichlet sine mode of the spatial box, amplitude 1 at the center.
std::vector<double> sine_mode_profile(const GridSpec& spec, int mode = 1);

} // namespace dg
