#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"

#include "dglab/builders.hpp"
#include "dglab/corpus.hpp"
#include "dglab/report_io.hpp"
#include "dglab/rng.hpp"
#include "dglab/solver.hpp"
#include "dglab/verify.hpp"

using namespace dg;

namespace {

const DgParams kUnitGammas{1.0, 1.0, 0.0, 1.0};

GridField jump_field(int n = 256) {
    return build_field(GridSpec::make(1, n, n), FieldKind::JumpCounterexample);
}

ConstantChain baseline_chain() { return full_chain(1, DgParams{1.0, 1.0, 1.0, 1.0}); }

GridField solver_field(std::uint64_t seed, int n = 128) {
    return default_verification_field(n, seed);
}

} // namespace

TEST_CASE("dg membership: zero field passes every sample") {
    const GridField zero = GridField::constant(GridSpec::make(1, 64, 64), 0.0);
    const CheckReport r = check_dg_membership(zero, DgParams{0.5, 20.0, 0.0, 4.0 / 3.0}, 1, 200);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.min_margin() >= 0.0);
    CHECK(r.samples.size() + r.skipped_samples == 200);
}

TEST_CASE("dg membership is reproducible bit-exactly") {
    const GridField u = solver_field(3, 64);
    const CheckReport a = check_dg_membership(u, DgParams{0.5, 20.0, 0.0, 4.0 / 3.0}, 99, 50);
    const CheckReport b = check_dg_membership(u, DgParams{0.5, 20.0, 0.0, 4.0 / 3.0}, 99, 50);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].lhs == b.samples[i].lhs);
        CHECK(a.samples[i].rhs == b.samples[i].rhs);
    }
    CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("downward jump is a subsolution: dg+ passes") {
    const GridField f = jump_field();
    // random battery
    const CheckReport r = check_dg_membership(f, kUnitGammas, 7, 200);
    CHECK(r.verdict == Verdict::Pass);
    // directed samples around the jump time, k = 0.5
    std::vector<DgSample> samples;
    const GridSpec& spec = f.spec();
    for (int it_t : {130, 190, 200, 224}) { // both sides of t = -1
        DgSample s;
        s.k = 0.5;
        s.it_s = 100;
        s.it_t = it_t;
        s.r = 1.0;
        s.R = 1.5;
        samples.push_back(s);
    }
    CHECK(spec.time_center(100) < -1.0);
    CHECK(spec.time_center(190) < -1.0);
    CHECK(spec.time_center(200) > -1.0);
    const CheckReport d = check_dg_membership_on(f, kUnitGammas, samples);
    CHECK(d.verdict == Verdict::Pass);
    CHECK(d.min_margin() >= 0.0);
    // after the downward jump the (f - 1/2)_+ slice at t vanishes entirely
    CHECK(d.samples[2].lhs == 0.0);
    CHECK(d.samples[3].lhs == 0.0);
    // before the jump both sides are flat: lhs = (1/2)^2 |B_r| slice
    CHECK(d.samples[0].lhs == doctest::Approx(0.25 * 2.0).epsilon(1e-12));
}

TEST_CASE("upward jump violates dg+ beyond tolerance") {
    const GridField f = jump_field();
    const GridField neg = f.scaled(-1.0);
    const GridSpec& spec = f.spec();
    // first time cell past the jump
    int it_after = 0;
    while (spec.time_center(it_after) <= -1.0) ++it_after;
    DgSample s;
    s.k = -0.5;
    s.it_s = it_after - 8;
    s.it_t = it_after;
    s.r = 1.0;
    s.R = 1.9;
    const CheckReport r = check_dg_membership_on(neg, kUnitGammas, {s});
    CHECK(r.verdict == Verdict::Fail);
    // hand evaluation: lhs = 0.25 * 2 = 0.5, rhs = gamma2-term only
    CHECK(r.samples[0].lhs == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.samples[0].margin < -r.tolerance);

    // the same configuration through the (-) sign of the original field
    DgSample s2 = s;
    s2.k = 0.5; // (u-k)_- with k = +0.5 is (0.5 - u)_+
    const CheckReport r2 = check_dg_membership_on(f, kUnitGammas, {s2}, DgSign::Minus);
    CHECK(r2.verdict == Verdict::Fail);
}

TEST_CASE("first lemma: zero field meets the hypothesis trivially") {
    const GridField zero = GridField::constant(GridSpec::make(1, 64, 64), 0.0);
    const FirstLemmaResult r = check_first_lemma_iteration(zero, baseline_chain());
    CHECK(r.hypothesis_met);
    CHECK(r.report.verdict == Verdict::Pass);
    for (double u : r.u_k) CHECK(u == 0.0);
}

TEST_CASE("first lemma: large field is reported as skipped") {
    const GridField u = GridField::constant(GridSpec::make(1, 64, 64), 0.6);
    const FirstLemmaResult r = check_first_lemma_iteration(u, baseline_chain());
    CHECK(!r.hypothesis_met);
    CHECK(r.report.verdict == Verdict::Skipped);
    // U_0 = 0.36 |Q_1| far above delta
    CHECK(r.u_k[0] == doctest::Approx(0.72).epsilon(1e-12));
}

TEST_CASE("first lemma: U_k nonincreasing on solver output") {
    const GridField u = solver_field(11);
    const FirstLemmaResult r = check_first_lemma_iteration(u, baseline_chain());
    for (std::size_t k = 1; k < r.u_k.size(); ++k) CHECK(r.u_k[k] <= r.u_k[k - 1]);
}

TEST_CASE("first lemma: tiny-amplitude solution satisfies the conclusion") {
    const ConstantChain chain = baseline_chain();
    GridField u = solver_field(13);
    // scale far enough below sqrt(delta) that U_0 <= delta
    const double scale = std::exp2(0.5 * chain.log2_delta - 4.0);
    u = u.scaled(scale / std::max(u.max_value(), 1e-300));
    const FirstLemmaResult r = check_first_lemma_iteration(u, chain);
    CHECK(r.hypothesis_met);
    CHECK(r.report.verdict == Verdict::Pass);
}

TEST_CASE("H1 intermediate value inequality on the linear slice") {
    const GridSpec spec(1, 64, {256, 1}, Cylinder::box(-1.0, 0.0, {0.0, 0.0}, 1.0));
    const GridField lin = build_field(spec, FieldKind::LinearX);
    const CheckReport r = check_ivl_h1(lin, -0.5, -0.5, 0.5, 1.0);
    CHECK(r.verdict == Verdict::Pass);
    // exact measures: (l-k) |{u<=k}| |{u>=l}| = 1 * 1/2 * 1/2
    CHECK(r.samples[0].lhs == doctest::Approx(0.25).epsilon(1e-14));
    // RHS -> R |B_R| |mid|^(1/2) * 1 = 2 with the truncated gradient
    CHECK(std::abs(r.samples[0].rhs - 2.0) <= 8.0 * spec.dx(0));

    // constant slice: one factor vanishes
    const GridField c = GridField::constant(spec, 0.2);
    const CheckReport rc = check_ivl_h1(c, -0.5, -0.5, 0.5, 1.0);
    CHECK(rc.samples[0].lhs == 0.0);
    CHECK(rc.verdict == Verdict::Pass);

    CHECK_THROWS_AS(check_ivl_h1(lin, -0.5, 0.5, 0.5, 1.0), ParameterError);
    CHECK_THROWS_AS(check_ivl_h1(lin, -0.5, -0.5, 0.5, 3.0), GeometryError);
}

TEST_CASE("H1 intermediate value inequality on a spatial step") {
    // step resolved over one transition cell: |mid| ~ dx while the discrete
    // gradient ~ 1/dx, so RHS ~ dx^(1/2) dx^(-1/2) = O(1) stays above LHS
    for (int nx : {64, 128, 256}) {
        const GridSpec spec(1, 8, {nx, 1}, Cylinder::box(-1.0, 0.0, {0.0, 0.0}, 1.0));
        std::vector<double> values(spec.cell_count());
        for (int it = 0; it < spec.nt; ++it)
            for (int j = 0; j < nx; ++j) {
                const double x = spec.space_center(0, j);
                values[spec.index(it, j)] = x < -spec.dx(0) / 2.0   ? 0.0
                                            : x > spec.dx(0) / 2.0 ? 1.0
                                                                    : 0.5;
            }
        const GridField step(spec, values);
        const CheckReport r = check_ivl_h1(step, -0.5, 0.25, 0.75, 1.0);
        CHECK(r.verdict == Verdict::Pass);
        CHECK(r.samples[0].margin >= 0.0);
        // the RHS stays bounded: the O(1) balance of the two dx powers
        CHECK(r.samples[0].rhs < 2.0);
    }

    // a raw two-valued step has an empty strict band: the discrete
    // inequality genuinely fails, reflecting that the step is not H^1
    const GridSpec spec(1, 8, {128, 1}, Cylinder::box(-1.0, 0.0, {0.0, 0.0}, 1.0));
    std::vector<double> values(spec.cell_count());
    for (int it = 0; it < spec.nt; ++it)
        for (int j = 0; j < 128; ++j)
            values[spec.index(it, j)] = spec.space_center(0, j) > 0.0 ? 1.0 : 0.0;
    const CheckReport raw = check_ivl_h1(GridField(spec, values), -0.5, 0.25, 0.75, 1.0);
    CHECK(raw.verdict == Verdict::Fail);
    CHECK(raw.samples[0].rhs == 0.0);
}

TEST_CASE("close times: constant field and the jump lattice") {
    const GridField c = GridField::constant(GridSpec::make(1, 128, 128), 0.4);
    const CheckReport rc = check_close_times(c, kUnitGammas, 0.0, 0.5, -1.5, -1.0, -0.5);
    CHECK(rc.samples[0].lhs == 0.0);
    CHECK(rc.verdict == Verdict::Pass);

    // 10 x 10 x 10 lattice of admissible (t1, tau, t2) triples, jump field
    const GridField f = jump_field();
    int checked = 0;
    for (int a = 0; a < 10; ++a)
        for (int b = 0; b < 10; ++b)
            for (int cc = 0; cc < 10; ++cc) {
                const double t1 = -2.0 + 0.19 * (a + 0.5);
                const double tau = -2.0 + 0.19 * (b + 0.5);
                const double t2 = -2.0 + 0.19 * (cc + 0.5);
                if (!(t1 < tau && tau < t2)) continue;
                const CheckReport r = check_close_times(f, kUnitGammas, 0.0, 1.0, t1, tau, t2);
                CHECK(r.verdict == Verdict::Pass);
                CHECK(r.samples[0].lhs == 0.0);
                ++checked;
            }
    CHECK(checked == 120); // C(10,3) ordered triples
}

TEST_CASE("close times rejects bad arguments") {
    const GridField f = jump_field(128);
    CHECK_THROWS_AS(check_close_times(f, kUnitGammas, 0.0, 1.0, -2.5, -1.0, -0.5),
                    ParameterError);
    CHECK_THROWS_AS(check_close_times(f, kUnitGammas, 1.0, 0.0, -1.5, -1.0, -0.5),
                    ParameterError);
    const GridField big = GridField::constant(GridSpec::make(1, 64, 64), 2.0);
    CHECK_THROWS_AS(check_close_times(big, kUnitGammas, 0.0, 1.0, -1.5, -1.0, -0.5),
                    ParameterError);
}

TEST_CASE("parabolic IVL separates the two orientations on the jump field") {
    const ConstantChain chain = baseline_chain();
    for (int n : {128, 256, 512}) {
        const GridField f = jump_field(n);
        const IvlResult canonical =
            check_ivl_parabolic(f, kUnitGammas, 0.0, 1.0, IvlOrientation::canonical(), chain);
        CHECK(canonical.report.verdict == Verdict::Pass);
        CHECK(canonical.report.samples[0].lhs == 0.0);
        CHECK(canonical.report.samples[0].rhs == 0.0);

        const IvlResult swapped =
            check_ivl_parabolic(f, kUnitGammas, 0.0, 1.0, IvlOrientation::as_printed(), chain);
        CHECK(swapped.report.verdict == Verdict::Fail);
        CHECK(swapped.report.definitive_violation);
        CHECK(swapped.report.samples[0].lhs == 4.0);
        CHECK(swapped.report.samples[0].rhs == 0.0);
    }
}

TEST_CASE("parabolic IVL: constant half field passes both orientations") {
    const GridField half = GridField::constant(GridSpec::make(1, 64, 64), 0.5);
    const ConstantChain chain = baseline_chain();
    for (const IvlOrientation& o : {IvlOrientation::canonical(), IvlOrientation::as_printed()}) {
        const IvlResult r = check_ivl_parabolic(half, kUnitGammas, 0.0, 1.0, o, chain);
        CHECK(r.report.verdict == Verdict::Pass);
        CHECK(r.report.samples[0].lhs == 0.0);
    }
}

TEST_CASE("parabolic IVL pigeonhole trace") {
    const GridSpec spec = GridSpec::make(1, 256, 256);
    const GridField u = build_field(spec, FieldKind::LinearX).scaled(0.5);
    const ConstantChain chain = baseline_chain();
    const IvlResult r = check_ivl_parabolic(u, kUnitGammas, 0.0, 0.5,
                                            IvlOrientation::canonical(), chain, true);
    CHECK(r.report.verdict == Verdict::Pass);
    REQUIRE(r.trace.has_value());
    const PigeonholeTrace& t = *r.trace;
    // mid = |{0 < x/2 < 1/2} cap Q2| = |{0<x<1}| * 4 = 4, so n = floor(2/4^(1/6)) + 1 = 2
    CHECK(t.n == 2);
    CHECK(t.i >= 1);
    CHECK(t.i <= t.n);
    CHECK(t.j >= t.n);
    CHECK(t.j <= 2 * t.n - 1);
    CHECK(static_cast<int>(t.below_l_interval.size()) == 2 * t.n);
    // every band of Q1 keeps the full below-l mass for this field
    for (double m : t.below_l_interval) CHECK(m > 0.0);
    CHECK(!t.pivot_from_first_case);
    CHECK(t.pivot == t.j);

    // trace serializes
    const std::string json = ivl_result_to_json(r);
    CHECK(json.find("pigeonhole_trace") != std::string::npos);
}

TEST_CASE("lowering the maximum on synthetic fields") {
    const ConstantChain chain = baseline_chain();
    const DgParams dg{1.0, 1.0, 1.0, 1.0};
    const GridSpec spec = GridSpec::make(1, 128, 128);

    // v = 0: k = 0 works immediately
    const LoweringMaxResult r0 = run_lowering_max(GridField::constant(spec, 0.0), dg, chain);
    CHECK(r0.k_found == 0);
    CHECK(r0.bound == 0.5);
    CHECK(r0.report.verdict == Verdict::Pass);

    // v = 1 everywhere: the half-mass hypothesis fails
    CHECK_THROWS_AS(run_lowering_max(GridField::constant(spec, 1.0), dg, chain), ParameterError);

    // two-level field: 0.9 after t = -1, -0.5 before; first k with
    // 2^k * 0.1 >= 1 is k = 4
    std::vector<double> values(spec.cell_count());
    for (int it = 0; it < spec.nt; ++it)
        for (int j = 0; j < spec.nx[0]; ++j)
            values[spec.index(it, j)] = spec.time_center(it) <= -1.0 ? -0.5 : 0.9;
    const GridField two(spec, values);
    const LoweringMaxResult r = run_lowering_max(two, dg, chain);
    CHECK(r.k_found == 4);
    CHECK(r.bound == 1.0 - std::exp2(-5.0));
    CHECK(r.report.verdict == Verdict::Pass);
}

TEST_CASE("lowering the maximum on a solver field") {
    const ConstantChain chain = baseline_chain();
    const GridField v = lowering_max_input(solver_field(17));
    // the construction guarantees the hypothesis
    CHECK(measure_level_set(v, Cylinder::shifted_unit(), LevelSetKind::below(0.0)) >=
          cylinder_measure(v.spec(), Cylinder::shifted_unit()) / 2.0);

    const LoweringMaxResult r = run_lowering_max(v, DgParams{0.5, 20.0, 0.0, 4.0 / 3.0}, chain);
    CHECK(r.k_found >= 0);
    CHECK(r.k_found <= 11);
    CHECK(r.report.verdict == Verdict::Pass);
}

TEST_CASE("holder estimate") {
    const ConstantChain chain = baseline_chain();
    const GridSpec spec = GridSpec::make(1, 512, 512);

    // constant field: all oscillations vanish
    const HolderResult rc =
        estimate_holder(GridField::constant(spec, 1.0), 0.0, {0.0, 0.0}, 3, chain);
    CHECK(rc.report.verdict == Verdict::Pass);
    CHECK(std::isinf(rc.alpha_hat));

    // linear field: osc(Q_r) = 2r, theta_hat ~ 1/2, alpha_hat ~ 1
    const GridField lin = build_field(spec, FieldKind::LinearX);
    const HolderResult rl = estimate_holder(lin, 0.0, {0.0, 0.0}, 3, chain);
    CHECK(rl.report.verdict == Verdict::Pass);
    CHECK(std::abs(rl.theta_hat - 0.5) < 0.05);
    CHECK(std::abs(rl.alpha_hat - 1.0) < 0.15);

    // a field with no decay at all fails against the chain bound
    std::vector<double> values(spec.cell_count());
    for (int it = 0; it < spec.nt; ++it)
        for (int j = 0; j < spec.nx[0]; ++j)
            values[spec.index(it, j)] = spec.space_center(0, j) > 0.0 ? 1.0 : -1.0;
    const GridField step(spec, values);
    const HolderResult rs = estimate_holder(step, 0.0, {0.0, 0.0}, 3, chain);
    CHECK(rs.report.verdict == Verdict::Fail);
    CHECK(rs.theta_hat == doctest::Approx(1.0));

    // domain violation
    CHECK_THROWS_AS(estimate_holder(lin, 10.0, {0.0, 0.0}, 2, chain), GeometryError);
}

TEST_CASE("dg membership with a nonzero lower-order coefficient") {
    // gamma3 > 0 only adds to the right side; the zero field and a solver
    // field keep passing, and the lp-term branch is exercised
    const DgParams with_g3{0.5, 20.0, 1.0, 4.0 / 3.0};
    const GridField zero = GridField::constant(GridSpec::make(1, 64, 64), 0.0);
    CHECK(check_dg_membership(zero, with_g3, 2, 100).verdict == Verdict::Pass);
    const GridField u = solver_field(23, 64);
    const CheckReport r = check_dg_membership(u, with_g3, 3, 100);
    CHECK(r.verdict == Verdict::Pass);
    // same samples with gamma3 = 0 have uniformly smaller margins
    DgParams no_g3 = with_g3;
    no_g3.gamma3 = 0.0;
    const CheckReport r0 = check_dg_membership(u, no_g3, 3, 100);
    REQUIRE(r.samples.size() == r0.samples.size());
    for (std::size_t i = 0; i < r.samples.size(); ++i)
        CHECK(r.samples[i].margin >= r0.samples[i].margin - 1e-12);
}

TEST_CASE("two-dimensional fields run through the battery") {
    const GridSpec spec = GridSpec::make(2, 24, 48);
    const GridField f = build_field(spec, FieldKind::JumpCounterexample);
    const DgParams dgp{1.0, 1.0, 0.0, 1.0};
    const ConstantChain chain = full_chain(2, dgp);

    // the time-jump counterexample separates the orientations in d = 2 too
    const IvlResult canonical =
        check_ivl_parabolic(f, dgp, 0.0, 1.0, IvlOrientation::canonical(), chain);
    CHECK(canonical.report.verdict == Verdict::Pass);
    CHECK(canonical.report.samples[0].lhs == 0.0);
    const IvlResult swapped =
        check_ivl_parabolic(f, dgp, 0.0, 1.0, IvlOrientation::as_printed(), chain);
    CHECK(swapped.report.verdict == Verdict::Fail);
    CHECK(swapped.report.definitive_violation);
    // LHS = |Q1|_grid * |Q1_bar|_grid, both near pi
    CHECK(swapped.report.samples[0].lhs > 8.0);

    CHECK(check_dg_membership(f, dgp, 5, 50).verdict == Verdict::Pass);
    CHECK(check_close_times(f, dgp, 0.0, 1.0, -1.6, -1.1, -0.4).verdict == Verdict::Pass);
    const CheckReport h1 = check_ivl_h1(f, -1.5, 0.25, 0.75, 1.5);
    CHECK(h1.verdict == Verdict::Pass); // constant slice: below-measure = 0
}

TEST_CASE("nontrivial level-set masses on an exact increasing solution") {
    // u(t,x) = -sin(pi (x+2)/4) exp(-(pi/4)^2 (t+4)) solves the heat
    // equation and increases in time toward 0, so with slightly negative
    // levels BOTH factors of the intermediate value inequalities are
    // positive: the checks must pass with nonzero content
    const GridSpec spec = GridSpec::make(1, 256, 256);
    std::vector<double> values(spec.cell_count());
    const double rate = std::pow(std::numbers::pi / 4.0, 2);
    for (int it = 0; it < spec.nt; ++it) {
        const double amp = std::exp(-rate * (spec.time_center(it) + 4.0));
        for (int j = 0; j < spec.nx[0]; ++j)
            values[spec.index(it, j)] =
                -amp * std::sin(std::numbers::pi * (spec.space_center(0, j) + 2.0) / 4.0);
    }
    const GridField u(spec, values);
    const DgParams dgp = dg_constants_from_pde({1.0, 1.0, 4.0, 0.0, 1});
    const ConstantChain chain = full_chain(1, dgp);
    const double k = -0.2, l = -0.1;

    // sanity: this choice genuinely populates both level sets
    const double low_mass =
        measure_level_set(u, Cylinder::shifted_unit(), LevelSetKind::below(k));
    const double high_mass =
        measure_level_set(u, Cylinder::standard(1.0), LevelSetKind::above(l));
    REQUIRE(low_mass > 0.0);
    REQUIRE(high_mass > 0.0);

    const IvlResult ivl =
        check_ivl_parabolic(u, dgp, k, l, IvlOrientation::canonical(), chain, true);
    CHECK(ivl.report.verdict == Verdict::Pass);
    CHECK(ivl.report.samples[0].lhs > 0.0);
    CHECK(ivl.report.samples[0].rhs > 0.0);

    // the pigeonhole trace realizes its defining inequalities
    REQUIRE(ivl.trace.has_value());
    const PigeonholeTrace& t = *ivl.trace;
    REQUIRE(t.n >= 1);
    const auto t_of = [&](int j) { return -2.0 + static_cast<double>(j) / t.n; };
    const Cylinder band_i = Cylinder::box(t_of(t.i - 1), t_of(t.i), {0.0, 0.0}, 1.0);
    CHECK(measure_level_set(u, band_i, LevelSetKind::below(k)) * t.n >= low_mass);
    const Cylinder band_j = Cylinder::box(t_of(t.j), t_of(t.j + 1), {0.0, 0.0}, 1.0);
    CHECK(measure_level_set(u, band_j, LevelSetKind::above(l)) * t.n >= high_mass);
    CHECK(t.pivot >= 1);
    CHECK(t.pivot <= 2 * t.n - 1);
    // the selected adjacent pair keeps the relaxed masses of the proof
    CHECK(t.below_l_interval[t.pivot - 1] * 2.0 * t.n >= low_mass);
    CHECK(t.above_l_interval[t.pivot] * 2.0 * t.n >= high_mass);

    // close-times on admissible triples spanning the transition
    for (double tau : {-1.4, -1.0, -0.6}) {
        const CheckReport ct = check_close_times(u, dgp, k, l, -1.9, tau, -0.1);
        CHECK(ct.verdict == Verdict::Pass);
    }

    // membership in both signs (it is an exact solution)
    CHECK(check_dg_membership(u, dgp, 31, 200).verdict == Verdict::Pass);
    CHECK(check_dg_membership(u, dgp, 32, 200, DgSign::Minus).verdict == Verdict::Pass);
}

TEST_CASE("two-dimensional solver field runs the whole battery") {
    // small rough-coefficient disk solve; every check must run without a
    // genuine failure (holder may be inconclusive at this resolution)
    const GridSpec spec = GridSpec::make(2, 32, 32);
    CoefficientParams params;
    params.matrix = MatrixKind::Checkerboard;
    params.lambda = 1.0;
    params.Lambda = 2.0;
    params.cell_size = 0.5;
    params.seed = 77;
    const CoefficientField coeffs = build_coefficients(spec, params);
    SolveConfig config;
    config.coeffs = &coeffs;
    config.initial = random_modes_profile(spec, 78);
    const GridField u = rescale_linf_q32(solve(config));

    const DgParams dgp = dg_constants_from_pde({1.0, 2.0, 4.0, 0.0, 2});
    ChainOptions opts;
    opts.q2 = 5.0;
    const ConstantChain chain = full_chain(2, dgp, opts);

    CHECK(check_dg_membership(u, dgp, 11, 100).verdict == Verdict::Pass);
    CHECK(check_dg_membership(u, dgp, 12, 100, DgSign::Minus).verdict == Verdict::Pass);
    CHECK(check_ivl_parabolic(u, dgp, 0.0, 0.5, IvlOrientation::canonical(), chain)
              .report.verdict == Verdict::Pass);
    CHECK(check_close_times(u, dgp, 0.0, 0.5, -1.5, -1.0, -0.5).verdict == Verdict::Pass);
    CHECK(check_first_lemma_iteration(u, chain).report.verdict != Verdict::Fail);
    const LoweringMaxResult lm = run_lowering_max(lowering_max_input(u), dgp, chain);
    CHECK(lm.report.verdict == Verdict::Pass);
    CHECK(lm.k_found >= 0);
    CHECK(estimate_holder(u, -2.0, {0.0, 0.0}, 2, chain).report.verdict != Verdict::Fail);
}

TEST_CASE("reports serialize to JSON and CSV") {
    const GridField zero = GridField::constant(GridSpec::make(1, 32, 32), 0.0);
    const CheckReport r = check_dg_membership(zero, DgParams{1.0, 1.0, 1.0, 1.0}, 5, 20);
    const std::string json = report_to_json(r, "{\"seed\":5}");
    CHECK(json.find("\"verdict\": \"pass\"") != std::string::npos);
    CHECK(json.find("\"config\"") != std::string::npos);
    const std::string csv = report_to_csv(r);
    CHECK(csv.rfind("params,lhs,rhs,margin\n", 0) == 0);
    // one row per sample plus header
    std::size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == r.samples.size() + 1);
}
