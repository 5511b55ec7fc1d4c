#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dglab/errors.hpp"

namespace dg {

/// Parameters of the divergence-form parabolic equation.
struct PdeParams {
    double lambda = 1.0; // ellipticity lower bound
    double Lambda = 1.0; // ellipticity upper bound, also bounds |B|
    double q = 4.0;      // source integrability exponent
    double g_norm = 0.0; // L^q norm of the source
    int d = 1;           // spatial dimension

    void validate() const;
};

/// The quadruple (gamma1, gamma2, gamma3, p) of the energy inequality.
struct DgParams {
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double gamma3 = 1.0;
    double p = 1.0;

    void validate() const;
};

/// One step of the constant chain: name, the formula actually evaluated, the
/// source citation and the value (log2_value when the magnitude forces a
/// log-space representation).
struct LedgerEntry {
    std::string name;
    std::string formula;
    std::string citation;
    std::optional<double> value;
    std::optional<double> log2_value;
};

/// Every derived constant from the DG-class parameters down to the Hoelder
/// exponent lower bound. mu and beta are stored only through their base-2
/// logarithms: 2^{-k0_max} underflows for every realistic chain, so theta
/// and alpha_holder additionally carry exact log-space companions.
struct ConstantChain {
    int d = 1;
    DgParams dg;
    double sobolev_constant = 2.0;

    double rho = 0.0;        // +inf representable (d = 1)
    double alpha_iter = 0.0; // (1/p)(2 - 2/rho) > 1
    double c_iter = 0.0;     // one-step constant of the two-step recurrence
    double delta = 0.0;      // first-lemma smallness threshold (0 if underflowed)
    double log2_delta = 0.0; // always finite
    double c_bar = 0.0;      // gradient energy bound at k = 0
    double c_ivl = 0.0;      // intermediate-value constant (k = 0, l = 1/2 form)
    double k0_max = 0.0;     // lowering-max iteration cap (+inf on overflow)
    double log2_k0_max = 0.0;// always finite; symbolic value when k0_max overflows
    double log2_mu = 0.0;    // -(k0_max + 2); -inf when k0_max overflows
    double log2_beta = 0.0;  // log2_mu + 1
    double theta = 1.0;      // 1 - 2^(log2_mu - 1); saturates to 1 in double
    double log2_one_minus_theta = 0.0; // exact: log2_mu - 1
    double alpha_holder = 0.0;         // -log2(theta); saturates to 0 in double
    double log2_alpha_holder = 0.0;    // always finite unless k0_max overflowed

    std::vector<LedgerEntry> ledger;

    /// True when x <= delta, honoring the log-space representation when the
    /// double value of delta has underflowed.
    bool below_delta(double x) const;
};

struct ChainOptions {
    /// Sobolev embedding constant C(d); NaN means the per-dimension default
    /// (d=1: 2, d=2: 10, d>=3: 10).
    double sobolev_constant = std::numeric_limits<double>::quiet_NaN();
    /// Sobolev exponent choice for d = 2 (must lie in (4, inf)).
    double q2 = 5.0;
    /// Sensitivity hook: replace the tracked intermediate-value constant.
    std::optional<double> c_ivl_override;
};

double default_sobolev_constant(int d);

/// Lebesgue measure of the radius-r ball in dimension d (length 2r when d=1).
double ball_volume(int d, double r);

/// 2d/(d-2) for d > 2, q2 for d = 2 (requires q2 in (4, inf)), +inf for d = 1.
double sobolev_exponent(int d, std::optional<double> q2 = std::nullopt);

/// (1/p)(2 - 2/rho); 2/p when rho = +inf. Throws NonContractiveError when
/// the value is <= 1 (the iteration cannot close; happens at p = (d+2)/d).
double iteration_exponent(double p, double rho);

/// The quadruple a subsolution of the equation lands in:
/// (lambda/2, 5 Lambda^2 / lambda, ||g||_{L^q}, q/(q-1)).
DgParams dg_constants_from_pde(const PdeParams& params);

/// Universal bound on the truncation-gradient energy over (s,t) x B_{5/4}:
/// (1-k)^2/g1 |B_{3/2}| + 32 g2/g1 |B_{3/2}| (1-k)^2 + 2^{1/p} g3/g1 |B_{3/2}|^{1/p} (1-k).
double gradient_bound(int d, double k, const DgParams& dg);

/// Constants of the close-times inequality at levels (k, l):
/// LHS <= c * |mid|^{1/2} + c * (t2-t1)^{2+1/p} with c = close_times_constant.
struct CloseTimesConstants {
    double c_mid = 0.0; // coefficient of the |{k<u<l}|^{1/2} term
    double c_err = 0.0; // coefficient of the (t2-t1)^{2+1/p} term
};
CloseTimesConstants close_times_constants(int d, const DgParams& dg, double k, double l);
double close_times_constant(int d, const DgParams& dg, double k, double l);

/// Constant of the intermediate value inequality in the form
/// (l-k)^2 |{u<=k} cap Q1_bar| |{u>=l} cap Q1| <= C |{k<u<l} cap Q2|^{1/(4p+2)}.
double ivl_constant(int d, const DgParams& dg, double k, double l);

/// theta = 1 - 2^(log2_mu - 1); saturates to 1.0 when the subtrahend
/// underflows (the exact complement is kept in log space by the chain).
double theta_from_log2_mu(double log2_mu);

/// alpha = -log2(1 - 2^(log2_mu - 1)), evaluated through log1p while the
/// subtrahend is representable and continued in log space below that.
/// Returns {alpha (possibly 0 after underflow), log2(alpha) (finite)}.
std::pair<double, double> alpha_from_log2_mu(double log2_mu);

/// The full quantitative chain for dimension d and DG parameters dg.
ConstantChain full_chain(int d, const DgParams& dg, const ChainOptions& options = {});

} // namespace dg
