#include "dglab/constants.hpp"

#include <cmath>
#include <numbers>

namespace dg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

void PdeParams::validate() const {
    if (!(0.0 < lambda && lambda <= Lambda))
        throw ParameterError("PdeParams needs 0 < lambda <= Lambda");
    if (d < 1) throw ParameterError("PdeParams needs d >= 1");
    if (!(q > std::max(2.0, (d + 2.0) / 2.0)))
        throw ParameterError("PdeParams needs q > max(2, (d+2)/2)");
    if (!(g_norm >= 0.0)) throw ParameterError("PdeParams needs g_norm >= 0");
}

void DgParams::validate() const {
    if (!(gamma1 > 0.0 && gamma2 > 0.0))
        throw ParameterError("DgParams needs gamma1, gamma2 > 0");
    if (!(gamma3 >= 0.0)) throw ParameterError("DgParams needs gamma3 >= 0");
    if (!(p >= 1.0)) throw ParameterError("DgParams needs p >= 1");
}

double default_sobolev_constant(int d) {
    return d == 1 ? 2.0 : 10.0;
}

double ball_volume(int d, double r) {
    if (d < 1) throw ParameterError("ball_volume needs d >= 1");
    if (d == 1) return 2.0 * r;
    if (d == 2) return std::numbers::pi * r * r;
    return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0) * std::pow(r, d);
}

double sobolev_exponent(int d, std::optional<double> q2) {
    if (d < 1) throw ParameterError("sobolev_exponent needs d >= 1");
    if (d == 1) return kInf;
    if (d == 2) {
        if (!q2 || !(*q2 > 4.0) || !std::isfinite(*q2))
            throw ParameterError("sobolev_exponent needs q2 in (4, inf) when d = 2");
        return *q2;
    }
    return 2.0 * d / (d - 2.0);
}

double iteration_exponent(double p, double rho) {
    if (!(p >= 1.0)) throw ParameterError("iteration_exponent needs p >= 1");
    if (!(rho > 2.0)) throw ParameterError("iteration_exponent needs rho > 2");
    const double alpha = std::isinf(rho) ? 2.0 / p : (2.0 - 2.0 / rho) / p;
    if (!(alpha > 1.0))
        throw NonContractiveError("iteration exponent alpha <= 1: the truncation-energy "
                                  "recurrence cannot contract at this (p, rho)");
    return alpha;
}

DgParams dg_constants_from_pde(const PdeParams& params) {
    params.validate();
    return DgParams{params.lambda / 2.0, 5.0 * params.Lambda * params.Lambda / params.lambda,
                    params.g_norm, params.q / (params.q - 1.0)};
}

double gradient_bound(int d, double k, const DgParams& dg) {
    dg.validate();
    if (!(k <= 1.0)) throw ParameterError("gradient_bound needs k <= 1");
    const double m = ball_volume(d, 1.5);
    const double om = 1.0 - k;
    return om * om / dg.gamma1 * m + 32.0 * dg.gamma2 / dg.gamma1 * m * om * om +
           std::pow(2.0, 1.0 / dg.p) * dg.gamma3 / dg.gamma1 * std::pow(m, 1.0 / dg.p) * om;
}

CloseTimesConstants close_times_constants(int d, const DgParams& dg, double k, double l) {
    dg.validate();
    if (!(k < l && l <= 1.0)) throw ParameterError("close-times constants need k < l <= 1");
    const double b1 = ball_volume(d, 1.0);
    const double b54 = ball_volume(d, 1.25);
    const double om = 1.0 - k;
    const double cbar = gradient_bound(d, k, dg);
    CloseTimesConstants c;
    // Per-slice bound multiplied by |{u(s) < l} cap B_1|, integrated over
    // s in (t1,tau), t in (tau,t2); the H^1 intermediate value inequality at
    // radius 5/4 converts the |{u>=l}| |{u<=k}| product into |mid|^{1/2}.
    c.c_mid = 2.0 * om * om * (b1 + b54) * std::sqrt(2.0 * b54) +
              2.5 * om * om * (b54 / (l - k)) * std::sqrt(cbar);
    c.c_err = 32.0 * dg.gamma2 * om * om * b54 * b1 +
              dg.gamma3 * om * std::pow(b54, 1.0 / dg.p) * b1;
    return c;
}

double close_times_constant(int d, const DgParams& dg, double k, double l) {
    const CloseTimesConstants c = close_times_constants(d, dg, k, l);
    return std::max(c.c_mid, c.c_err);
}

double ivl_constant(int d, const DgParams& dg, double k, double l) {
    const CloseTimesConstants c = close_times_constants(d, dg, k, l);
    const double q2_measure = 4.0 * ball_volume(d, 2.0);
    // n = floor(2 m^{-p/(4p+2)}) + 1 <= K_n m^{-p/(4p+2)} with m <= |Q_2|.
    const double kn = 2.0 + std::pow(q2_measure, dg.p / (4.0 * dg.p + 2.0));
    return 4.0 * kn * kn * c.c_mid + 16.0 * c.c_err;
}

double theta_from_log2_mu(double log2_mu) {
    return 1.0 - std::exp2(log2_mu - 1.0);
}

std::pair<double, double> alpha_from_log2_mu(double log2_mu) {
    const double log2_ln2 = std::log2(std::numbers::ln2);
    if (std::isinf(log2_mu)) return {0.0, -kInf};
    const double x = std::exp2(log2_mu - 1.0); // mu/2 = 1 - theta
    if (x >= std::numeric_limits<double>::min()) {
        // -log2(1-x) through log1p keeps full precision for small x.
        const double alpha = -std::log1p(-x) / std::numbers::ln2;
        return {alpha, std::log2(alpha)};
    }
    // Below the representable range -log2(1-x) = x/ln2 to within a relative
    // error of x/2, which is far beyond double resolution here.
    const double log2_alpha = (log2_mu - 1.0) - log2_ln2;
    return {std::exp2(log2_alpha), log2_alpha};
}

ConstantChain full_chain(int d, const DgParams& dg, const ChainOptions& options) {
    dg.validate();
    if (d < 1) throw ParameterError("full_chain needs d >= 1");

    ConstantChain chain;
    chain.d = d;
    chain.dg = dg;
    chain.sobolev_constant = std::isnan(options.sobolev_constant)
                                 ? default_sobolev_constant(d)
                                 : options.sobolev_constant;
    if (!(chain.sobolev_constant > 0.0))
        throw ParameterError("Sobolev constant must be positive");

    auto cite = [&](const std::string& name, const std::string& formula,
                    const std::string& citation, double value, bool log_space = false) {
        LedgerEntry e;
        e.name = name;
        e.formula = formula;
        e.citation = citation;
        if (log_space)
            e.log2_value = value;
        else
            e.value = value;
        chain.ledger.push_back(std::move(e));
    };

    // Stage 1: Sobolev exponent.
    chain.rho = sobolev_exponent(d, d == 2 ? std::optional<double>(options.q2) : std::nullopt);
    cite("rho", d == 1 ? "+inf (d = 1)" : (d == 2 ? "q2 (d = 2)" : "2d/(d-2)"),
         "L2-Linfty estimate, Sobolev exponent", chain.rho);

    // Stage 2: iteration exponent (throws NonContractiveError at the endpoint).
    chain.alpha_iter = iteration_exponent(dg.p, chain.rho);
    cite("alpha_iter", "(1/p)(2 - 2/rho)", "L2-Linfty estimate, recurrence exponent",
         chain.alpha_iter);

    // Stage 3: one-step recurrence constant C with U_k <= C^k U_{k-2}^alpha.
    // The geometric base 64 collects the per-step factors 4^k (Chebyshev at
    // level c_k), 4^k (time-slice supremum via the first energy inequality)
    // and 4^k (gradient term via the second); G = 2 + 4 g2 + 2 g3 bounds the
    // coefficient sums and C(d)^2 is the Sobolev embedding squared.
    const double g_sum = 2.0 + 4.0 * dg.gamma2 + 2.0 * dg.gamma3;
    const double prefactor =
        16.0 * g_sum * chain.sobolev_constant * chain.sobolev_constant * (1.0 + g_sum / dg.gamma1);
    chain.c_iter = 64.0 * std::max(prefactor, 1.0);
    cite("C_iter", "64 * max(1, 16 G C(d)^2 (1 + G/gamma1)), G = 2 + 4 gamma2 + 2 gamma3",
         "L2-Linfty estimate, assembled one-step constant", chain.c_iter);

    // Stage 4: first-lemma threshold. The two-step recurrence reindexed as
    // V_k = U_{2k} obeys V_k <= (C^2)^k V_{k-1}^alpha, so the convergence
    // threshold uses C^2; the extra 1/2 keeps the inequality strict.
    const double a = chain.alpha_iter;
    const double exponent = a * a / ((a - 1.0) * (a - 1.0));
    chain.log2_delta = -1.0 - 2.0 * std::log2(chain.c_iter) * exponent;
    chain.delta = std::exp2(chain.log2_delta);
    cite("delta", "(1/2) (C_iter^2)^(-alpha^2/(alpha-1)^2)",
         "sequence convergence threshold, reindexed two-step recurrence", chain.delta);

    // Stage 5: gradient energy bound at the chain levels (k = 0).
    chain.c_bar = gradient_bound(d, 0.0, dg);
    cite("C_bar", "(1-k)^2/g1 |B_3/2| + 32 g2/g1 |B_3/2| (1-k)^2 + 2^(1/p) g3/g1 |B_3/2|^(1/p) (1-k), k = 0",
         "universal gradient bound", chain.c_bar);

    // Stage 6: intermediate-value constant in the k = 0, l = 1/2 form used by
    // the lowering-max counting argument ((l-k)^-2 = 4 folded in).
    chain.c_ivl = options.c_ivl_override ? *options.c_ivl_override
                                         : 4.0 * ivl_constant(d, dg, 0.0, 0.5);
    cite("C_ivl", "4 * C_thm(k=0, l=1/2)", "intermediate value inequality at k=0, l=1/2",
         chain.c_ivl);
    if (!(chain.c_ivl > 0.0)) throw ParameterError("C_ivl must be positive");

    // Stage 7: lowering-max iteration cap, computed in log space because
    // delta can be far below the representable range.
    const double pexp = 4.0 * dg.p + 2.0;
    const double q1bar_measure = ball_volume(d, 1.0); // |Q1_bar| = 1 x |B_1|
    const double q2_measure = 4.0 * ball_volume(d, 2.0);
    chain.log2_k0_max = pexp * (1.0 + std::log2(chain.c_ivl) - chain.log2_delta -
                                std::log2(q1bar_measure)) +
                        std::log2(q2_measure);
    const double k0_raw = std::exp2(chain.log2_k0_max);
    chain.k0_max = std::isfinite(k0_raw) ? std::ceil(k0_raw) + 1.0 : kInf;
    cite("k0_max", "ceil((2 C_ivl / (delta |Q1_bar|))^(4p+2) |Q2|) + 1",
         "lowering the maximum, iteration bound",
         std::isfinite(chain.k0_max) ? chain.k0_max : chain.log2_k0_max,
         !std::isfinite(chain.k0_max));

    // Stages 8-9: mu and beta in log2 form.
    chain.log2_mu = std::isfinite(chain.k0_max) ? -(chain.k0_max + 1.0) - 1.0 : -kInf;
    chain.log2_beta = chain.log2_mu + 1.0;
    cite("mu", "2^(-(k0_max + 2))", "lowering the maximum, conclusion", chain.log2_mu, true);
    cite("beta", "2 mu", "scaling constant for the inhomogeneous term", chain.log2_beta, true);

    // Stage 10: oscillation contraction factor.
    chain.theta = theta_from_log2_mu(chain.log2_mu);
    chain.log2_one_minus_theta = chain.log2_mu - 1.0;
    cite("theta", "1 - mu/2 (1 - theta kept as log2_mu - 1)",
         "local decrease of the oscillation", chain.log2_one_minus_theta, true);

    // Stage 11: Hoelder exponent lower bound.
    const auto [alpha_holder, log2_alpha] = alpha_from_log2_mu(chain.log2_mu);
    chain.alpha_holder = alpha_holder;
    chain.log2_alpha_holder = log2_alpha;
    cite("alpha_holder", "-log2(theta)", "oscillation decay across dyadic cylinders",
         chain.log2_alpha_holder, true);

    return chain;
}

bool ConstantChain::below_delta(double x) const {
    if (!(x >= 0.0)) throw ParameterError("below_delta needs x >= 0");
    if (x == 0.0) return true;
    if (delta > 0.0) return x <= delta;
    return std::log2(x) <= log2_delta;
}

} // namespace dg
