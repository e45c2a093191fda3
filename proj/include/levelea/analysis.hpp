#pragma once

#include <map>
#include <string>
#include <vector>

#include "levelea/problem.hpp"
#include "levelea/transition.hpp"

namespace levelea {

struct Trajectory {
    std::vector<LevelDistribution> states;  // q^[0..T]
    int renormalization_events = 0;

    int horizon() const { return static_cast<int>(states.size()) - 1; }
};

// q^[t+1] = R q^[t] for t = 0..T-1. Long horizons renormalize every 10^4
// steps when the accumulated mass drift exceeds 1e-9; events are counted.
Trajectory iterate(const TransitionMatrix& matrix, const LevelDistribution& q0, int T);

// Per-generation expected approximation error and tail probabilities.
struct MetricSeries {
    int horizon = 0;
    std::vector<double> eae;                   // e^[0..T]
    std::map<int, std::vector<double>> tails;  // tail index -> p^[0..T](e_i)
};

MetricSeries metrics(const Trajectory& trajectory, const std::vector<double>& error_vector,
                     const std::vector<int>& tail_indices);

// Spectral radius of the non-optimal submatrix. The submatrix is upper
// triangular, so this is its largest diagonal entry.
double spectral_radius(const TransitionMatrix& matrix);

// Average convergence rate 1 - (e^[t]/e^[0])^(1/t).
double acr(const std::vector<double>& eae_series, int t);

// Pairwise series comparison per the outperformance definition.
struct SignComparison {
    // Maximal runs of generations where one side is strictly below the other.
    std::vector<std::pair<int, int>> a_below;  // [first,last] with a < b - tol
    std::vector<std::pair<int, int>> b_below;
    std::vector<int> sign_change_epochs;  // t where the strict sign flips
    int first_a_strictly_below = -1;
    int final_sign = 0;  // -1: a below at T, +1: b below, 0: tied
    bool a_never_above = true;  // a <= b + tol at every t
};

struct OutperformanceReport {
    bool outperforms = false;  // EAE and every tail satisfy a <= b + tol at all t
    SignComparison eae;
    std::map<int, SignComparison> tails;
};

OutperformanceReport outperformance_report(const MetricSeries& a, const MetricSeries& b,
                                           double tol = 1e-12);

// Asymptotic ordering probe by repeated squaring of the non-optimal
// submatrices, with per-square rescaling so that probes up to 2^20 stay in
// range regardless of how fast the chains converge. Log-domain EAE and
// TP(e_tail) are compared at t = 2^0, 2^1, ..., 2^max_exponent.
struct ProbePoint {
    long long t = 0;
    double log_eae_a = 0, log_eae_b = 0;
    double log_tp_a = 0, log_tp_b = 0;
};

struct AsymptoticProbe {
    double rho_a = 0, rho_b = 0;
    bool found = false;      // some probe starts an all-strict suffix
    long long t_star = -1;   // first such probe time
    std::vector<ProbePoint> points;
};

AsymptoticProbe asymptotic_order_probe(const TransitionMatrix& a,
                                       const TransitionMatrix& b,
                                       const LevelDistribution& q0,
                                       const std::vector<double>& error_vector,
                                       int tail_index, int max_exponent = 20);

// Trajectory CSV: header "t,eae,tp_<i>,...", 17 significant digits.
void write_trajectory_csv(const MetricSeries& series, const std::string& path);

}  // namespace levelea
