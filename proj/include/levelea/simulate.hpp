#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "levelea/problem.hpp"

namespace levelea {

enum class Algorithm { EA, EAC };

struct SimConfig {
    LevelProblem problem;
    Algorithm algorithm = Algorithm::EA;
    double p_m = 0.0;               // EA mutation rate
    double q_m = 0.0, c_r = 0.0;    // EAC rates
    bool adaptive = false;
    int horizon = 1000;
    std::int64_t runs = 1;
    std::uint64_t base_seed = 1;
    std::vector<int> tail_indices = {1};
    int threads = 1;  // 0 picks the hardware concurrency

    void validate() const;
    std::string to_json() const;  // effective-config echo
};

SimConfig sim_config_from_json_file(const std::string& path);

struct StepOutcome {
    bool accepted = false;
    int hamming = 0;  // distance between the incumbent and the candidate
};

// One generation of the mutation-only algorithm: flip each bit with p_m,
// accept when the error does not increase. x is updated in place.
StepOutcome step_ea(std::uint64_t& x, const LevelProblem& problem, double p_m,
                    std::mt19937_64& rng);

// One generation with binomial crossover: mutate with q_m, then take the
// forced component and every component passing the c_r draw from the mutant.
StepOutcome step_ea_c(std::uint64_t& x, const LevelProblem& problem, double q_m,
                      double c_r, std::mt19937_64& rng);

struct AdaptiveRates {
    double mutation = 0.0;   // p_m or q_m
    double crossover = 0.0;  // c_r, ignored for EA
};

// Hamming-driven update applied after strictly improving steps. Mutation
// rates clamp to [1/n^2, 1-1/n^2], the crossover rate to (0,1].
AdaptiveRates adapt_parameters(AdaptiveRates rates, int hamming, int n,
                               Algorithm algorithm);

struct EmpiricalSeries {
    int horizon = 0;
    std::int64_t runs = 0;
    std::vector<double> mean_err, se_err;
    std::vector<int> tail_indices;
    std::vector<std::vector<double>> tail_freq;  // [tail][t]
    std::vector<std::vector<double>> tail_se;
    std::vector<std::vector<std::uint64_t>> level_counts;  // [t][level]
};

// Runs independent trajectories with per-run seeds derived from
// (base_seed, run index) and aggregates integer level histograms, so the
// result does not depend on scheduling or thread count.
EmpiricalSeries monte_carlo(const SimConfig& config);

// Empirical CSV: header "t,mean_err,se_err,tp_<i>,se_tp_<i>,...".
void write_empirical_csv(const EmpiricalSeries& series, const std::string& path);

}  // namespace levelea
