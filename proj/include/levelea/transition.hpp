#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levelea/kernel.hpp"
#include "levelea/problem.hpp"

namespace levelea {

// Column-stochastic upper-triangular level-transition matrix of an elitist
// (1+1) chain. at(i,j) = Pr{next level = i | current level = j}.
class TransitionMatrix {
public:
    explicit TransitionMatrix(int L);

    int L() const { return L_; }
    int dim() const { return L_ + 1; }

    double at(int i, int j) const { return r_[static_cast<std::size_t>(i) * dim() + j]; }
    double& at(int i, int j) { return r_[static_cast<std::size_t>(i) * dim() + j]; }

    // Sets each diagonal entry to 1 minus its column's off-diagonal sum.
    // Residues in [-1e-12, 0) clamp to 0; anything more negative throws.
    void complete_diagonal();

    // Snaps accumulation round-off just outside [0,1] back onto the range;
    // genuine violations beyond the tolerances throw.
    void clamp_rounding(double neg_tol = 1e-15, double pos_tol = 1e-12);

    // Checks upper-triangularity, entries in [0,1] and column sums of 1.
    void validate(double tol = 1e-12) const;

    double column_sum(int j) const;

private:
    int L_;
    std::vector<double> r_;
};

// Exact transition matrices from the flip kernel.
TransitionMatrix build_onemax(int n, const FlipKernel& kernel);
TransitionMatrix build_deceptive(int n, const FlipKernel& kernel);

// Exact matrix for any problem of the form f(|x|) with an injective level
// map and strictly increasing errors, built over ones-count space.
TransitionMatrix build_levelwise(const LevelProblem& problem, const FlipKernel& kernel);

// Independent oracle: enumerates every operator outcome from one
// representative bitstring per level and accumulates accepted transitions.
// `representative` 0 places the one-bits lowest, 1 places them highest.
// Limits: n <= 8 for mutation-only kernels, n <= 5 with crossover.
TransitionMatrix bruteforce_transition(int n, const LevelProblem& problem,
                                       const FlipKernel& kernel,
                                       int representative = 0);

// The pair of artificial (n+1)-state chains used to show that dominance
// alone does not order tail probabilities at every generation. S dominates R.
std::pair<TransitionMatrix, TransitionMatrix> counterexample_pair(int n);

struct DominanceResult {
    bool dominates = false;       // every improving entry >= and one strictly >
    bool weakly_geq = false;      // the >= part alone
    std::optional<std::pair<int, int>> violation;    // first (i,j) with a < b - tol
    std::optional<std::pair<int, int>> strict_site;  // first (i,j) with a > b + tol
};

// Definition of matrix dominance over the improving entries i < j.
// Comparisons use `tol` to absorb floating-point noise; strictness requires
// a margin greater than `tol`.
DominanceResult dominates(const TransitionMatrix& a, const TransitionMatrix& b,
                          double tol = 1e-12);

struct Lemma3Report {
    bool c1 = false;  // s[j][j] >= r[j][j] for all j
    bool c2 = false;  // prefix sums of r - s over rows 0..i-1 are >= 0, i < j
    bool c3 = false;  // prefix sums of s column j-1 minus column j are >= 0, i < j-1
    std::optional<int> c1_violation;                  // j
    std::optional<std::pair<int, int>> c2_violation;  // (i, j)
    std::optional<std::pair<int, int>> c3_violation;  // (i, j)
    bool all() const { return c1 && c2 && c3; }
};

// Sufficient conditions under which the R-chain's weighted error never
// exceeds the S-chain's at any generation.
Lemma3Report lemma3_conditions(const TransitionMatrix& r, const TransitionMatrix& s,
                               double tol = 1e-12);

// Matrix CSV: first line "L=<value>", then dim rows of dim comma-separated
// values with 17 significant digits (row i = destination level i).
void save_matrix_csv(const TransitionMatrix& m, const std::string& path);
TransitionMatrix load_matrix_csv(const std::string& path);

}  // namespace levelea
