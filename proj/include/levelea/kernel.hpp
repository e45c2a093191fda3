#pragma once

#include <variant>
#include <vector>

namespace levelea {

// Bitwise mutation with rate p_m (each bit flips independently).
struct MutationOnly {
    double p_m;
};

// Bitwise mutation with rate q_m followed by binomial crossover with rate
// c_r: one uniformly chosen component is always taken from the mutant, the
// others are taken from the mutant independently with probability c_r.
struct MutationCrossover {
    double q_m;
    double c_r;
};

// Probability of flipping one exact l-bit pattern under mutation only:
// p_m^l (1-p_m)^(n-l).
double p1_flip(int l, int n, double p_m);

// Probability of flipping one exact l-bit pattern under mutation plus
// binomial crossover. l=n and l=0 are handled by their direct derivations;
// the general formula's (1-q_m*c_r)^(n-l-1) factor would be singular there.
double p2_flip(int l, int n, double q_m, double c_r);

// p2_flip under the coupled setting p_m = c_r*q_m = p, written so that only
// p and c_r enter. Defined for every c_r in (0,1] even when p/c_r >= 1 and
// the crossover operator itself would be infeasible.
double p2_flip_coupled(int l, int n, double p, double c_r);

// Closed form of p2_flip_coupled(l) - p1_flip(l) for 1 <= l <= n-1:
// (1/c_r - 1)(l/n - p) p^l (1-p)^(n-l-1). Vanishes exactly at l = n*p.
double flip_difference(int l, int n, double p, double c_r);

// One l-bit flip probability operator of either family.
class FlipKernel {
public:
    static FlipKernel mutation(int n, double p_m);
    static FlipKernel crossover(int n, double q_m, double c_r);
    // Coupled construction: p_m = c_r * q_m = p, so q_m = p / c_r.
    static FlipKernel coupled_crossover(int n, double p, double c_r);

    int n() const { return n_; }
    bool has_crossover() const;
    const MutationOnly* mutation_params() const;
    const MutationCrossover* crossover_params() const;

    // P(l): probability of flipping one exact l-bit pattern.
    double flip_probability(int l) const;

private:
    FlipKernel(int n, std::variant<MutationOnly, MutationCrossover> op);

    int n_;
    std::variant<MutationOnly, MutationCrossover> op_;
};

// Per-l comparison of the two kernels under the coupled setting.
struct Theorem1Report {
    int n = 0;
    double p = 0.0;
    double c_r = 0.0;
    bool in_scope = false;    // premise 0 < p <= 1/n and 0 < c_r < 1
    bool holds_for_all = false;
    std::vector<int> violations;  // l values where p1 > p2 + slack
    std::vector<double> p1;       // indexed by l = 0..n (entry 0 unused)
    std::vector<double> p2;
};

Theorem1Report theorem1_check(int n, double p, double c_r, double slack = 1e-14);

}  // namespace levelea
