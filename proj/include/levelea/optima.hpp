#pragma once

#include <functional>
#include <string>

namespace levelea {

// Probability of jumping from level j straight to the optimum of the
// deceptive problem under mutation only: p_m^(n-j+1) (1-p_m)^(j-1).
double p0j(int n, int j, double p_m);

// Same jump probability with binomial crossover. The j=1 case (all n bits
// must flip) is handled by its direct derivation q_m^n c_r^(n-1); the
// general form applies for j >= 2.
double s0j(int n, int j, double c_r, double q_m);

struct MutationOptimum {
    double p_star = 0;    // (n-j+1)/n
    double p0j_max = 0;   // with the 0^0 = 1 convention at j = 1
    bool boundary = false;  // j = 1: supremum sits at the open boundary p_m -> 1
};

MutationOptimum optimal_mutation_rate(int n, int j);

enum class CrossoverRegime {
    AllBitsBoundary,   // j = 1: increasing in c_r, maximum at c_r = 1
    IncreasingToOne,   // monotone increasing, maximum at c_r = 1
    InteriorJ2,        // j = 2 with q_m > (n-1)/n: c* = (n-2)/(n q_m - 1)
    InteriorBracketed, // 3 <= j <= n-1, q_m above threshold: numeric maximizer
    InteriorJN,        // j = n, 1/n < q_m <= 1/2: c* = (1-2q_m)/(q_m(n-1-n q_m))
    DecreasingToZero   // j = n, q_m > 1/2: maximum at c_r = 0
};

const char* to_string(CrossoverRegime r);

struct CrossoverOptimum {
    double cr_star = 0;
    double s0j_max = 0;
    CrossoverRegime regime = CrossoverRegime::IncreasingToOne;
};

// Maximizes s0j over c_r in [0,1]. Closed-form candidates, the bracket
// endpoints and golden-section refinements are all evaluated and the best
// point wins, so sub-case boundaries cannot mislead the search.
CrossoverOptimum optimal_crossover_rate(int n, int j, double q_m);

struct Theorem9Verdict {
    double p = 0;           // p0j at p_m = q_m
    double s_max = 0;       // maximum of s0j over c_r
    double cr_star = 0;
    bool strict_numeric = false;    // s_max > p beyond tolerance
    bool equality_predicted = false;  // threshold classification predicts s_max = p
    bool strict_predicted = false;    // classification predicts strict improvement
    bool consistent = false;          // numeric outcome compatible with the prediction
};

// Compares the best crossover escape probability against the mutation-only
// one at p_m = q_m and checks the outcome against the threshold
// classification: j=1 always ties; j=2 improves strictly iff
// q_m > (n-1)/n; 3 <= j <= n-1 ties iff q_m <= (n-j)/(n-1) and may improve
// above it; j=n improves strictly iff q_m > 1/n.
Theorem9Verdict theorem9_verdict(int n, int j, double q_m, double tol = 1e-12);

// Golden-section maximization over [lo, hi] to x-tolerance `tol`.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-10);

}  // namespace levelea
