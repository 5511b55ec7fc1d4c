#include "dglab/iterate.hpp"

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace dg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using rational = boost::multiprecision::cpp_rational;

rational rational_from_double(double v) {
    int e = 0;
    const double m = std::frexp(v, &e); // v = m 2^e, |m| in [1/2, 1)
    const long long num = static_cast<long long>(std::ldexp(m, 53));
    rational r(num);
    const int shift = 53 - e;
    if (shift >= 0)
        r /= rational(boost::multiprecision::cpp_int(1) << shift);
    else
        r *= rational(boost::multiprecision::cpp_int(1) << -shift);
    return r;
}

/// S_k <= alpha^2/(alpha-1)^2 alpha^(k-1), checked in exact rational
/// arithmetic: the bound is attained in the k -> inf limit, so the gap falls
/// below double resolution long before k = 60 and a floating comparison
/// would flip on rounding noise.
bool sk_bound_exact(double alpha_d, int kmax) {
    const rational alpha = rational_from_double(alpha_d);
    const rational gap = (alpha - 1) * (alpha - 1);
    rational s = 0;         // S_0
    rational alpha_pow = alpha; // alpha^(k+1) at k = 0
    for (int k = 1; k <= kmax; ++k) {
        s = alpha * s + k; // S_k = alpha S_{k-1} + k
        alpha_pow *= alpha;
        if (s * gap > alpha_pow) return false;
    }
    return true;
}

} // namespace

double recurrence_threshold(double C, double alpha) {
    if (!(C > 0.0)) throw ParameterError("recurrence_threshold needs C > 0");
    if (!(alpha > 1.0)) throw NonContractiveError("recurrence_threshold needs alpha > 1");
    const double e = alpha * alpha / ((alpha - 1.0) * (alpha - 1.0));
    return std::pow(C, -e);
}

RecurrenceResult simulate_recurrence(const RecurrenceSpec& spec) {
    spec.validate();
    RecurrenceResult out;
    const int n = spec.kmax + 1;
    out.sequence.resize(n);
    out.envelope.resize(n);
    out.log2_sequence.resize(n);
    out.log2_envelope.resize(n);
    out.s_k.resize(n);

    const double log2C = std::log2(spec.C);
    const double exponent = spec.alpha * spec.alpha /
                            ((spec.alpha - 1.0) * (spec.alpha - 1.0));
    const double log2V0 = spec.V0 > 0.0 ? std::log2(spec.V0) : -kInf;
    // log2 E_k = alpha^k (exponent log2C + log2 V0)
    const double env_base = exponent * log2C + log2V0;

    out.verdict = spec.V0 < recurrence_threshold(spec.C, spec.alpha)
                      ? RecurrenceVerdict::Converges
                      : RecurrenceVerdict::Inconclusive;

    double log2V = log2V0;
    double alpha_pow = 1.0; // alpha^k
    for (int k = 0; k < n; ++k) {
        if (k > 0) {
            log2V = k * log2C + spec.alpha * log2V;
            alpha_pow *= spec.alpha;
        }
        out.log2_sequence[k] = log2V;
        out.log2_envelope[k] = alpha_pow * env_base;
        out.sequence[k] = std::exp2(log2V);
        out.envelope[k] = std::exp2(out.log2_envelope[k]);
        if (out.sequence[k] == kInf) out.overflowed = true;

        // S_k by direct summation (reported); the bound itself is decided in
        // exact arithmetic below.
        double s = 0.0;
        for (int i = 0; i <= k; ++i) s += i * std::pow(spec.alpha, k - i);
        out.s_k[k] = s;
    }
    out.sk_bound_holds = sk_bound_exact(spec.alpha, spec.kmax);
    if (out.overflowed) out.verdict = RecurrenceVerdict::Inconclusive;
    return out;
}

double geometric_derivative_closed_form(double X, int k) {
    if (X == 1.0) throw ParameterError("closed form requires X != 1");
    const double xk = std::pow(X, k);
    const double denom = (1.0 - X) * (1.0 - X);
    return (xk * (k * X - (k + 1.0)) + 1.0) / denom;
}

} // namespace dg
