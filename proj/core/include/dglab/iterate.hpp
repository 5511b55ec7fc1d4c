#pragma once

#include <vector>

#include "dglab/errors.hpp"

namespace dg {

/// The nonlinear recurrence V_k <= C^k V_{k-1}^alpha with alpha > 1.
struct RecurrenceSpec {
    double C = 2.0;
    double alpha = 2.0;
    double V0 = 0.0;
    int kmax = 40;

    void validate() const {
        if (!(C > 0.0)) throw ParameterError("recurrence needs C > 0");
        if (!(alpha > 1.0)) throw NonContractiveError("recurrence needs alpha > 1");
        if (!(V0 >= 0.0)) throw ParameterError("recurrence needs V0 >= 0");
        if (kmax < 1) throw ParameterError("recurrence needs kmax >= 1");
    }
};

enum class RecurrenceVerdict { Converges, Inconclusive };

struct RecurrenceResult {
    // Worst-case equality dynamics V_k = C^k V_{k-1}^alpha and the proof's
    // envelope (C^{alpha^2/(alpha-1)^2} V0)^{alpha^k}. Doubles saturate to 0
    // or +inf outside the representable range; the log2 columns are exact.
    std::vector<double> sequence;
    std::vector<double> envelope;
    std::vector<double> log2_sequence;
    std::vector<double> log2_envelope;
    std::vector<double> s_k; // S_k = sum_{i=0..k} i alpha^{k-i}, direct summation
    RecurrenceVerdict verdict = RecurrenceVerdict::Inconclusive;
    bool overflowed = false;
    bool sk_bound_holds = true; // S_k <= alpha^2/(alpha-1)^2 alpha^{k-1} for 1 <= k <= kmax
};

/// V* = C^(-alpha^2/(alpha-1)^2): below it the sequence collapses to zero.
double recurrence_threshold(double C, double alpha);

/// Runs the equality dynamics in log space, computes the envelope and S_k,
/// and checks the S_k bound along the way. verdict = Converges iff
/// V0 < recurrence_threshold(C, alpha).
RecurrenceResult simulate_recurrence(const RecurrenceSpec& spec);

/// Closed form of sum_{i=0..k} i X^{i-1} from differentiating the geometric
/// series: (X^k (k X - (k+1)) + 1) / (1 - X)^2, X != 1.
double geometric_derivative_closed_form(double X, int k);

} // namespace dg
