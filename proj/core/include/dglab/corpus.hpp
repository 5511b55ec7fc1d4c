#pragma once

#include <cstdint>

#include "dglab/field.hpp"

namespace dg {

/// Default production of verification inputs: solve on Q_2 from seeded
/// smooth random initial data with checkerboard coefficients
/// (lambda = 1, Lambda = 2, block 1/4, B = 0, g = 0), then peak-normalize so
/// max |u| = 1 on Q_{3/2}.
GridField default_verification_field(int nx, std::uint64_t seed);

/// Turns a field into a lowering-max input: shift to the Q1_bar median so
/// half the mass sits at or below zero, then rescale to 1 - 2^-10 at the
/// Q_{3/2} peak so the iteration terminates within a handful of steps.
GridField lowering_max_input(const GridField& u);

} // namespace dg
