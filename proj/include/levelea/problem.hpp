#pragma once

#include <string>
#include <vector>

namespace levelea {

enum class ProblemKind { OneMax, Deceptive, Custom };

// Error level of an n-bit string with `ones_count` one-bits.
int onemax_error(int ones_count, int n);
int deceptive_error(int ones_count, int n);

// A pseudo-Boolean problem whose fitness depends only on the number of
// one-bits. The engine never needs the fitness function itself: the level
// map and the error vector carry everything the analysis uses.
class LevelProblem {
public:
    static LevelProblem onemax(int n);
    static LevelProblem deceptive(int n);
    static LevelProblem custom(int n, std::vector<double> error_vector,
                               std::vector<int> level_of_ones);
    static LevelProblem from_json_file(const std::string& path);

    ProblemKind kind() const { return kind_; }
    int n() const { return n_; }
    int L() const { return static_cast<int>(error_vector_.size()) - 1; }

    const std::vector<double>& error_vector() const { return error_vector_; }
    double error_at(int level) const;

    int level_of_ones(int ones_count) const;
    double error_of_ones(int ones_count) const;

    // True when level_of_ones is injective, i.e. every level corresponds to
    // exactly one ones-count class. Holds for both built-ins.
    bool level_map_injective() const;

    // True when the error vector is strictly increasing across levels.
    bool errors_strictly_increasing() const;

private:
    LevelProblem(ProblemKind kind, int n, std::vector<double> errors,
                 std::vector<int> level_map);

    ProblemKind kind_;
    int n_;
    std::vector<double> error_vector_;
    std::vector<int> level_of_ones_;
};

// Probability vector over levels 0..L.
struct LevelDistribution {
    std::vector<double> q;

    int dim() const { return static_cast<int>(q.size()); }
    double sum() const;
    // Checks entries in [0,1] and total mass 1 within `tol`.
    void validate(double tol = 1e-12) const;
};

// Exact level distribution of a uniformly random n-bit string:
// q[i] = sum over ones-counts c at level i of C(n,c) / 2^n.
LevelDistribution initial_distribution(const LevelProblem& problem);

// Uniform distribution over all L+1 levels.
LevelDistribution uniform_distribution(int L);

}  // namespace levelea
