#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dglab/constants.hpp"
#include "dglab/field.hpp"

namespace dg {

enum class Verdict { Pass, Fail, Skipped, Inconclusive };

std::string verdict_name(Verdict v);

/// One evaluated instance of an inequality: named parameters, both sides and
/// the margin rhs - lhs.
struct CheckSample {
    std::vector<std::pair<std::string, double>> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

/// Outcome of one lemma-level check. verdict == Pass iff the minimum margin
/// is >= -tolerance (and no definitive violation was flagged).
struct CheckReport {
    std::string name;
    std::vector<CheckSample> samples;
    double tolerance = 0.0;
    Verdict verdict = Verdict::Pass;
    int worst = -1; // index of the minimum-margin sample, -1 when empty
    std::size_t skipped_samples = 0;
    bool definitive_violation = false;
    std::vector<std::string> notes;

    double min_margin() const;
    /// Sets worst and verdict from the collected samples.
    void finalize();
};

/// Discretization tolerance rule: coeff * (dx + dt) * scale. The continuum
/// inequalities hold up to quadrature error, so absolute comparisons would
/// flake; the applied coefficient and scale are recorded in the report.
double grid_tolerance(const GridSpec& spec, double scale, double coeff = 10.0);

enum class DgSign { Plus, Minus };

/// One quantifier tuple of the energy inequality.
struct DgSample {
    double k = 0.0;
    int it_s = 0; // time cell of s
    int it_t = 1; // time cell of t, > it_s
    Point x0{{0.0, 0.0}};
    double r = 0.5;
    double R = 1.0;
};

/// LHS and RHS of the energy inequality for one sample.
std::pair<double, double> evaluate_dg_sample(const GridField& u, const DgParams& dg,
                                             const DgSample& sample, DgSign sign);

/// Membership check on directed samples.
CheckReport check_dg_membership_on(const GridField& u, const DgParams& dg,
                                   const std::vector<DgSample>& samples,
                                   DgSign sign = DgSign::Plus, double tol_coeff = 10.0);

/// Membership check on n_samples seeded random tuples (k, s, t, r, R, x0).
/// r is drawn in [1/4, R - dx], R in [r + 2 dx, radius - |x0|], k from the
/// empirical value range +- 0.5; degenerate draws are skipped and counted.
CheckReport check_dg_membership(const GridField& u, const DgParams& dg, std::uint64_t seed,
                                int n_samples, DgSign sign = DgSign::Plus,
                                double tol_coeff = 10.0);

struct FirstLemmaResult {
    CheckReport report;
    std::vector<double> u_k; // truncation energies U_0..U_K
    bool hypothesis_met = false;
};

/// Truncation-energy iteration U_k over Q_{r_k} at levels c_k. When
/// U_0 <= chain.delta the conclusion max u <= 1/2 on Q_{1/2} is asserted;
/// otherwise the check is reported as skipped. U_k monotonicity and the
/// two-step recurrence margins are recorded either way.
FirstLemmaResult check_first_lemma_iteration(const GridField& u, const ConstantChain& chain,
                                             int K = 20, double tol_coeff = 10.0);

/// Spatial intermediate value inequality on one time slice over B_R(x0):
/// (l-k) |{u<=k}| |{u>=l}| <= R |B_R| |{k<u<l}|^(1/2) (int |grad v|^2)^(1/2)
/// with v the (k,l)-truncation of the slice.
CheckReport check_ivl_h1(const GridField& u, double time, double k, double l, double R,
                         const Point& x0 = {{0.0, 0.0}}, double tol_coeff = 10.0);

/// Close-times inequality: the {u>=l} mass lives on the LATER interval
/// (tau,t2), the {u<=k} mass on the EARLIER one (t1,tau).
CheckReport check_close_times(const GridField& u, const DgParams& dg, double k, double l,
                              double t1, double tau, double t2, double tol_coeff = 10.0);

/// Placement of the two level-set factors of the parabolic intermediate
/// value inequality. The canonical orientation follows the proof: {u<=k} on
/// the early cylinder Q1_bar, {u>=l} on the late cylinder Q1. The printed
/// statement has them the other way around; both are exposed.
struct IvlOrientation {
    Cylinder low_cylinder;  // where |{u<=k}| is measured
    Cylinder high_cylinder; // where |{u>=l}| is measured

    static IvlOrientation canonical() {
        return {Cylinder::shifted_unit(), Cylinder::standard(1.0)};
    }
    static IvlOrientation as_printed() {
        return {Cylinder::standard(1.0), Cylinder::shifted_unit()};
    }
};

/// The proof's time-pigeonhole bookkeeping over t_j = -2 + j/n.
struct PigeonholeTrace {
    int n = 0;
    int i = 0;     // in [1, n]: |{u<=k}, (t_{i-1},t_i) x B_1| >= |{u<=k}, Q1_bar| / n
    int j = 0;     // in [n, 2n-1]: |{u>=l}, (t_j,t_{j+1}) x B_1| >= |{u>=l}, Q1| / n
    int pivot = 0; // adjacent-interval index selected by the case analysis
    bool pivot_from_first_case = false;
    std::vector<double> below_l_interval; // |{u<l}, (t_{m-1},t_m) x B_1|, m = 1..2n
    std::vector<double> above_l_interval; // |{u>=l}, (t_m,t_{m+1}) x B_1|, m = 0..2n-1
};

struct IvlResult {
    CheckReport report;
    std::optional<PigeonholeTrace> trace;
};

/// Parabolic intermediate value inequality
/// (l-k)^2 |{u<=k} cap low| |{u>=l} cap high| <= C |{k<u<l} cap Q2|^(1/(4p+2)).
/// An empty middle set with both factors positive is a definitive violation.
IvlResult check_ivl_parabolic(const GridField& u, const DgParams& dg, double k, double l,
                              const IvlOrientation& orientation, const ConstantChain& chain,
                              bool want_trace = false, double tol_coeff = 10.0);

struct LoweringMaxResult {
    int k_found = -1;
    double bound = 1.0; // certified 1 - 2^-(k_found+1)
    CheckReport report;
};

/// Lowering the maximum: iterates v_k = 2^k (v - (1 - 2^-k)), finds the
/// first k <= chain.k0_max with the Q_1 truncation energy below delta and
/// asserts v <= 1 - 2^-(k+1) on Q_{1/2}. Preconditions (v <= 1 on Q_{3/2}
/// and half mass below zero on Q1_bar) throw ParameterError.
LoweringMaxResult run_lowering_max(const GridField& v, const DgParams& dg,
                                   const ConstantChain& chain, double tol_coeff = 10.0);

struct HolderResult {
    double theta_hat = 0.0;
    double alpha_hat = 0.0; // -log2(theta_hat); +inf when every osc vanishes
    double log2_alpha_hat = 0.0;
    CheckReport report;
};

/// Oscillation decay across the dyadic cylinders Q_{2^-n}(t0, x0). Ratios are
/// only formed at scales where both oscillations exceed the grid noise floor
/// 10 dx; with no usable ratio the verdict is Inconclusive.
HolderResult estimate_holder(const GridField& u, double t0, const Point& x0, int n_scales,
                             const ConstantChain& chain, double tol_coeff = 10.0);

} // namespace dg
