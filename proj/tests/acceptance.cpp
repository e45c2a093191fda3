// Acceptance suite: one check per numbered criterion, each printing a
// single PASS/FAIL line. Run all of them or a single one with
// --criterion <k>.
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "levelea/analysis.hpp"
#include "levelea/kernel.hpp"
#include "levelea/optima.hpp"
#include "levelea/problem.hpp"
#include "levelea/simulate.hpp"
#include "levelea/transition.hpp"
#include "test_oracles.hpp"

using namespace levelea;

namespace {

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

double max_entry_gap(const TransitionMatrix& a, const TransitionMatrix& b) {
    double worst = 0.0;
    for (int i = 0; i <= a.L(); ++i)
        for (int j = 0; j <= a.L(); ++j)
            worst = std::fmax(worst, std::fabs(a.at(i, j) - b.at(i, j)));
    return worst;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. kernel oracle: exhaustive operator enumeration vs the closed forms
// ---------------------------------------------------------------------------
CriterionResult criterion_1() {
    double worst_p2 = 0.0, worst_p1 = 0.0;
    for (int n = 3; n <= 5; ++n) {
        for (int qi = 1; qi <= 9; ++qi) {
            const double pm = qi / 10.0;
            const auto mut = test::enumerate_mutation_patterns(n, pm);
            for (std::uint64_t pat = 0; pat < (1ull << n); ++pat)
                worst_p1 = std::fmax(
                    worst_p1, std::fabs(mut[pat] - p1_flip(std::popcount(pat), n, pm)));
            for (int ci = 1; ci <= 9; ++ci) {
                const double cr = ci / 10.0;
                const auto oracle = test::enumerate_crossover_patterns(n, pm, cr);
                for (std::uint64_t pat = 0; pat < (1ull << n); ++pat)
                    worst_p2 = std::fmax(
                        worst_p2,
                        std::fabs(oracle[pat] - p2_flip(std::popcount(pat), n, pm, cr)));
            }
        }
    }
    const bool pass = worst_p1 <= 1e-12 && worst_p2 <= 1e-12;
    return {pass, fmt("max |closed form - enumeration|: p1 %.2e, p2 %.2e (limit 1e-12)",
                      worst_p1, worst_p2)};
}

// ---------------------------------------------------------------------------
// 2. matrix oracle: builders vs brute-force outcome enumeration
// ---------------------------------------------------------------------------
CriterionResult criterion_2() {
    double worst = 0.0;
    for (int n = 4; n <= 8; ++n) {
        const auto one = LevelProblem::onemax(n);
        const auto dec = LevelProblem::deceptive(n);
        for (double pm : {0.1, 0.25, 0.5, 1.0 / n}) {
            const auto k = FlipKernel::mutation(n, pm);
            worst = std::fmax(worst, max_entry_gap(build_onemax(n, k),
                                                   bruteforce_transition(n, one, k)));
            worst = std::fmax(worst, max_entry_gap(build_deceptive(n, k),
                                                   bruteforce_transition(n, dec, k)));
        }
    }
    for (int n = 4; n <= 5; ++n) {
        const auto one = LevelProblem::onemax(n);
        const auto dec = LevelProblem::deceptive(n);
        for (double qm : {0.2, 0.5, 0.8}) {
            for (double cr : {0.25, 0.5, 0.75, 1.0}) {
                const auto k = FlipKernel::crossover(n, qm, cr);
                worst = std::fmax(worst, max_entry_gap(build_onemax(n, k),
                                                       bruteforce_transition(n, one, k)));
                worst = std::fmax(worst, max_entry_gap(build_deceptive(n, k),
                                                       bruteforce_transition(n, dec, k)));
            }
        }
    }
    return {worst <= 1e-12, fmt("max entry gap %.2e (limit 1e-12)", worst)};
}

// ---------------------------------------------------------------------------
// 3. theorem 1: p1(l) <= p2(l) over the whole coupled grid
// ---------------------------------------------------------------------------
CriterionResult criterion_3() {
    long long checks = 0;
    for (int n = 3; n <= 50; ++n) {
        for (double p : {1.0 / (double(n) * n), 0.5 / n, 1.0 / n}) {
            for (int ci = 1; ci <= 9; ++ci) {
                const double cr = ci / 10.0;
                for (int l = 1; l <= n; ++l) {
                    ++checks;
                    if (p1_flip(l, n, p) > p2_flip_coupled(l, n, p, cr) + 1e-14)
                        return {false, fmt("violated at n=%d p=%.6g cr=%.1f l=%d", n, p,
                                           cr, l)};
                }
            }
        }
    }
    return {true, fmt("%lld inequalities hold with slack 1e-14", checks)};
}

// ---------------------------------------------------------------------------
// 4. theorem 2: matrix dominance over the same grid
// ---------------------------------------------------------------------------
CriterionResult criterion_4() {
    long long cases = 0, skipped = 0;
    for (int n = 3; n <= 50; ++n) {
        const auto one = LevelProblem::onemax(n);
        const auto dec = LevelProblem::deceptive(n);
        (void)one;
        (void)dec;
        for (double p : {1.0 / (double(n) * n), 0.5 / n, 1.0 / n}) {
            const auto ea_one = build_onemax(n, FlipKernel::mutation(n, p));
            const auto ea_dec = build_deceptive(n, FlipKernel::mutation(n, p));
            for (int ci = 1; ci <= 9; ++ci) {
                const double cr = ci / 10.0;
                if (p / cr >= 1.0) {
                    ++skipped;  // q_m = p/cr is not a probability here
                    continue;
                }
                const auto k = FlipKernel::coupled_crossover(n, p, cr);
                ++cases;
                if (!dominates(build_onemax(n, k), ea_one).dominates)
                    return {false, fmt("onemax dominance fails at n=%d p=%.6g cr=%.1f",
                                       n, p, cr)};
                if (!dominates(build_deceptive(n, k), ea_dec).dominates)
                    return {false, fmt("deceptive dominance fails at n=%d p=%.6g cr=%.1f",
                                       n, p, cr)};
            }
        }
    }
    return {true, fmt("%lld cases dominate (%lld infeasible q_m >= 1 combos skipped)",
                      cases, skipped)};
}

// ---------------------------------------------------------------------------
// 5. theorem 4 reproduction on onemax over full horizons
// ---------------------------------------------------------------------------
CriterionResult criterion_5() {
    double worst = -1.0;
    for (int n : {10, 20}) {
        const double p = 1.0 / n;
        const auto problem = LevelProblem::onemax(n);
        const auto q0 = initial_distribution(problem);
        std::vector<int> tails;
        for (int i = 1; i <= n; ++i) tails.push_back(i);
        const int T = 10 * n * n;
        const auto ea = metrics(iterate(build_onemax(n, FlipKernel::mutation(n, p)), q0, T),
                                problem.error_vector(), tails);
        for (double cr : {0.25, 0.5, 0.75}) {
            const auto eac = metrics(
                iterate(build_onemax(n, FlipKernel::coupled_crossover(n, p, cr)), q0, T),
                problem.error_vector(), tails);
            for (int t = 0; t <= T; ++t) {
                worst = std::fmax(worst, eac.eae[t] - ea.eae[t]);
                for (int i : tails)
                    worst = std::fmax(worst, eac.tails.at(i)[t] - ea.tails.at(i)[t]);
            }
        }
    }
    return {worst <= 1e-12,
            fmt("max (crossover - mutation) over all t, all tails: %.2e (slack 1e-12)",
                worst)};
}

// ---------------------------------------------------------------------------
// 6. lemma 2 / theorem 3 asymptotics over the criterion-4 grid
// ---------------------------------------------------------------------------
CriterionResult criterion_6() {
    long long cases = 0, rho_fail = 0, order_fail = 0;
    std::string first_rho_fail, first_order_fail;
    for (int n = 3; n <= 50; ++n) {
        for (int prob = 0; prob < 2; ++prob) {
            const auto problem =
                prob == 0 ? LevelProblem::onemax(n) : LevelProblem::deceptive(n);
            const auto q0 = initial_distribution(problem);
            for (double p : {1.0 / (double(n) * n), 0.5 / n, 1.0 / n}) {
                const auto mk = FlipKernel::mutation(n, p);
                const auto ea =
                    prob == 0 ? build_onemax(n, mk) : build_deceptive(n, mk);
                for (int ci = 1; ci <= 9; ++ci) {
                    const double cr = ci / 10.0;
                    if (p / cr >= 1.0) continue;
                    const auto ck = FlipKernel::coupled_crossover(n, p, cr);
                    const auto eac =
                        prob == 0 ? build_onemax(n, ck) : build_deceptive(n, ck);
                    ++cases;
                    const auto probe = asymptotic_order_probe(
                        eac, ea, q0, problem.error_vector(), 1);
                    if (!(probe.rho_a < probe.rho_b)) {
                        if (rho_fail == 0)
                            first_rho_fail = fmt("%s n=%d p=%.6g cr=%.1f (rho gap %.1e)",
                                                 prob == 0 ? "onemax" : "deceptive", n, p,
                                                 cr, probe.rho_b - probe.rho_a);
                        ++rho_fail;
                    }
                    if (!probe.found) {
                        if (order_fail == 0)
                            first_order_fail =
                                fmt("%s n=%d p=%.6g cr=%.1f",
                                    prob == 0 ? "onemax" : "deceptive", n, p, cr);
                        ++order_fail;
                    }
                }
            }
        }
    }
    std::string detail = fmt("%lld cases: strict-rho failures %lld, T*-probe failures %lld",
                             cases, rho_fail, order_fail);
    if (rho_fail)
        detail += "; first rho failure: " + first_rho_fail +
                  " [rho ties exactly where the trap-escape gap is below one ulp of "
                  "1.0, and analytically at p=1/n on onemax where P2(1)=P1(1)]";
    if (order_fail) detail += "; first probe failure: " + first_order_fail;
    return {rho_fail == 0 && order_fail == 0, detail};
}

// ---------------------------------------------------------------------------
// 7. fig 1 qualitative: artificial pair tail difference changes sign
// ---------------------------------------------------------------------------
CriterionResult criterion_7() {
    const int n = 10, T = 2000;
    auto [r, s] = counterexample_pair(n);
    std::vector<double> errs(n + 1);
    for (int i = 0; i <= n; ++i) errs[i] = i;
    const auto q0 = uniform_distribution(n);
    const auto mr = metrics(iterate(r, q0, T), errs, {1});
    const auto ms = metrics(iterate(s, q0, T), errs, {1});
    int first_neg = -1, first_pos = -1;
    for (int t = 0; t <= T; ++t) {
        const double d = ms.tails.at(1)[t] - mr.tails.at(1)[t];
        if (d < -1e-12 && first_neg < 0) first_neg = t;
        if (d > 1e-12 && first_pos < 0) first_pos = t;
    }
    const bool pass = first_neg >= 0 && first_pos > first_neg;
    return {pass, fmt("S-minus-R tail difference: negative from t=%d, positive from t=%d",
                      first_neg, first_pos)};
}

// ---------------------------------------------------------------------------
// 8. fig 2 qualitative: exact deceptive trajectories at n=12
// ---------------------------------------------------------------------------
CriterionResult criterion_8() {
    const int n = 12, T = 10000;
    const auto problem = LevelProblem::deceptive(n);
    const auto ea_m = build_deceptive(n, FlipKernel::mutation(n, 1.0 / n));
    const auto eac_m = build_deceptive(n, FlipKernel::crossover(n, 0.5, 2.0 / n));
    const auto q0 = initial_distribution(problem);
    const auto ea = metrics(iterate(ea_m, q0, T), problem.error_vector(), {1});
    const auto eac = metrics(iterate(eac_m, q0, T), problem.error_vector(), {1});

    bool ea_beats_eae = false, ea_beats_tp = false;
    double min_eae = 1e300, min_tp = 1e300;
    for (int t = 1; t <= T; ++t) {
        const double de = ea.eae[t] - eac.eae[t];
        const double dt = ea.tails.at(1)[t] - eac.tails.at(1)[t];
        if (de < -1e-12) ea_beats_eae = true;
        if (dt < -1e-12) ea_beats_tp = true;
        min_eae = std::fmin(min_eae, de);
        min_tp = std::fmin(min_tp, dt);
    }
    const auto probe = asymptotic_order_probe(eac_m, ea_m, q0, problem.error_vector(), 1);
    const bool asym = probe.found && probe.rho_a < probe.rho_b;
    const bool pass = ea_beats_eae && ea_beats_tp && asym;
    return {pass,
            fmt("ea-beats-eac epochs: eae %s, tp %s (min gaps %.2e, %.2e); asymptotics "
                "favor crossover: %s [exact trajectories keep the crossover chain "
                "weakly ahead at every t; the figure's crossings match Monte Carlo "
                "noise, not the exact law]",
                ea_beats_eae ? "yes" : "none", ea_beats_tp ? "yes" : "none", min_eae,
                min_tp, asym ? "yes" : "no")};
}

// ---------------------------------------------------------------------------
// 9. ACR converges to 1 - rho
// ---------------------------------------------------------------------------
CriterionResult criterion_9() {
    const int n = 10;
    const auto problem = LevelProblem::onemax(n);
    const auto m = build_onemax(n, FlipKernel::mutation(n, 0.1));
    const auto series = metrics(iterate(m, initial_distribution(problem), 10000),
                                problem.error_vector(), {1});
    const double gap = std::fabs(acr(series.eae, 10000) - (1.0 - spectral_radius(m)));
    return {gap <= 0.01, fmt("|acr(1e4) - (1 - rho)| = %.3g (limit 0.01)", gap)};
}

// ---------------------------------------------------------------------------
// 10. Monte Carlo consistency against the exact chain
// ---------------------------------------------------------------------------
CriterionResult criterion_10() {
    const int n = 12, T = 10000;
    const auto problem = LevelProblem::deceptive(n);
    const auto q0 = initial_distribution(problem);
    std::ostringstream detail;
    bool pass = true;

    const auto check = [&](const char* name, const TransitionMatrix& m, SimConfig cfg) {
        const auto exact = metrics(iterate(m, q0, T), problem.error_vector(), {1});
        const auto s = monte_carlo(cfg);
        double worst_z = 0.0;
        for (int t : {100, 1000, 10000}) {
            const double z_e = std::fabs(s.mean_err[t] - exact.eae[t]) /
                               std::max(s.se_err[t], 1e-12);
            const double z_t = std::fabs(s.tail_freq[0][t] - exact.tails.at(1)[t]) /
                               std::max(s.tail_se[0][t], 1e-12);
            worst_z = std::fmax(worst_z, std::fmax(z_e, z_t));
        }
        detail << name << " worst |z| " << fmt("%.2f", worst_z) << "; ";
        if (worst_z > 3.0) pass = false;
    };

    SimConfig ea{problem};
    ea.algorithm = Algorithm::EA;
    ea.p_m = 1.0 / n;
    ea.horizon = T;
    ea.runs = 100000;
    ea.base_seed = 1001;
    check("ea", build_deceptive(n, FlipKernel::mutation(n, 1.0 / n)), ea);

    SimConfig eac{problem};
    eac.algorithm = Algorithm::EAC;
    eac.q_m = 0.5;
    eac.c_r = 2.0 / n;
    eac.horizon = T;
    eac.runs = 100000;
    eac.base_seed = 1002;
    check("eac", build_deceptive(n, FlipKernel::crossover(n, 0.5, 2.0 / n)), eac);

    detail << "(10^5 runs, checkpoints 1e2/1e3/1e4, limit 3 standard errors)";
    return {pass, detail.str()};
}

// ---------------------------------------------------------------------------
// 11. fig 3 qualitative: adaptive strategies at full scale
// ---------------------------------------------------------------------------
CriterionResult criterion_11() {
    const int T = 20000;
    const std::int64_t runs = 10000;
    std::ostringstream detail;
    bool adaptive_below_fixed = true, eac_below_ea = true;
    std::uint64_t stream = 3000;

    for (int n : {12, 16, 20}) {
        const auto problem = LevelProblem::deceptive(n);
        const double p = 1.0 / n;
        const double root = std::sqrt(double(n));

        const auto run_tp = [&](Algorithm alg, double qm, bool adaptive) {
            SimConfig cfg{problem};
            cfg.algorithm = alg;
            if (alg == Algorithm::EA) cfg.p_m = p;
            else {
                cfg.q_m = qm;
                cfg.c_r = p / qm;
            }
            cfg.adaptive = adaptive;
            cfg.horizon = T;
            cfg.runs = runs;
            cfg.base_seed = stream++;
            const auto s = monte_carlo(cfg);
            return std::pair<double, double>(s.tail_freq[0][T], s.tail_se[0][T]);
        };

        const auto ea_fx = run_tp(Algorithm::EA, 0, false);
        const auto ea_ad = run_tp(Algorithm::EA, 0, true);
        if (!(ea_ad.first < ea_fx.first - 3.0 * std::hypot(ea_ad.second, ea_fx.second)))
            adaptive_below_fixed = false;
        detail << fmt("n=%d ea fx %.3f ad %.3f | eac ad", n, ea_fx.first, ea_ad.first);
        for (double qm : {1.0 / root, 1.5 / root, 2.0 / root}) {
            const auto fx = run_tp(Algorithm::EAC, qm, false);
            const auto ad = run_tp(Algorithm::EAC, qm, true);
            if (!(ad.first < fx.first - 3.0 * std::hypot(ad.second, fx.second)))
                adaptive_below_fixed = false;
            if (!(ad.first < ea_ad.first - 3.0 * std::hypot(ad.second, ea_ad.second)))
                eac_below_ea = false;
            detail << fmt(" %.3f", ad.first);
        }
        detail << "; ";
    }
    detail << (adaptive_below_fixed ? "adaptive<fixed holds everywhere"
                                    : "adaptive<fixed FAILS somewhere");
    detail << (eac_below_ea
                   ? "; adaptive eac<ea holds everywhere"
                   : "; adaptive eac sits ABOVE adaptive ea at every n (the pinned "
                     "update rule leaves c_r below 1, taxing the trap escape by "
                     "c_r^(n-1))");
    return {adaptive_below_fixed && eac_below_ea, detail.str()};
}

// ---------------------------------------------------------------------------
// 12. closed-form optima vs independent maximization
// ---------------------------------------------------------------------------
CriterionResult criterion_12() {
    double worst8 = 0.0;
    long long points = 0;
    for (int n = 5; n <= 20; ++n) {
        for (int j = 1; j <= n; ++j) {
            const auto mo = optimal_mutation_rate(n, j);
            const auto [x, v] =
                test::scan_maximize([&](double pm) { return p0j(n, j, pm); }, 1e-9, 1.0);
            (void)x;
            worst8 = std::fmax(worst8, std::fabs(v - mo.p0j_max));
            for (int qi = 1; qi <= 9; ++qi) {
                const double q = qi / 10.0;
                ++points;
                const auto verdict = theorem9_verdict(n, j, q);
                if (!verdict.consistent)
                    return {false, fmt("verdict inconsistent at n=%d j=%d q=%.1f", n, j, q)};
                const auto [cx, cv] = test::scan_maximize(
                    [&](double c) { return s0j(n, j, c, q); }, 0.0, 1.0);
                (void)cx;
                if (verdict.s_max < cv - 1e-10)
                    return {false,
                            fmt("library maximum %.6g below scan %.6g at n=%d j=%d q=%.1f",
                                verdict.s_max, cv, n, j, q)};
                const bool scan_strict = cv > verdict.p + 1e-12;
                if (scan_strict != verdict.strict_numeric)
                    return {false, fmt("strictness mismatch at n=%d j=%d q=%.1f", n, j, q)};
            }
        }
    }
    const bool pass = worst8 <= 1e-8;
    return {pass, fmt("max |closed-form max - scan max| = %.2e (limit 1e-8); "
                      "%lld verdict points consistent",
                      worst8, points)};
}

struct Criterion {
    int id;
    const char* name;
    CriterionResult (*fn)();
};

const Criterion kCriteria[] = {
    {1, "kernel oracle (exhaustive operator enumeration)", criterion_1},
    {2, "matrix oracle (brute-force transitions)", criterion_2},
    {3, "flip-probability ordering over the coupled grid", criterion_3},
    {4, "matrix dominance over the coupled grid", criterion_4},
    {5, "onemax outperformance at every generation", criterion_5},
    {6, "asymptotic ordering (spectral radius and T* probe)", criterion_6},
    {7, "artificial-pair tail difference changes sign", criterion_7},
    {8, "deceptive exact-trajectory crossings at n=12", criterion_8},
    {9, "average convergence rate limit", criterion_9},
    {10, "Monte Carlo consistency with the exact chain", criterion_10},
    {11, "adaptive-strategy comparison at full scale", criterion_11},
    {12, "escape-probability optima vs independent search", criterion_12},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
    }
    int failures = 0;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        const CriterionResult r = c.fn();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("[%s] criterion %2d: %s — %s (%.1fs)\n", r.pass ? "PASS" : "FAIL",
                    c.id, c.name, r.detail.c_str(), secs);
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
