#include "levelea/optima.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace levelea {

namespace {

void check_level(int n, int j) {
    if (n < 2) throw std::domain_error("escape probability: n must be at least 2");
    if (j < 1 || j > n) throw std::domain_error("escape probability: j out of [1,n]");
}

}  // namespace

double p0j(int n, int j, double p_m) {
    check_level(n, j);
    if (!(p_m > 0.0 && p_m <= 1.0))
        throw std::domain_error("p0j: p_m must lie in (0,1]");
    return std::pow(p_m, n - j + 1) * std::pow(1.0 - p_m, j - 1);
}

double s0j(int n, int j, double c_r, double q_m) {
    check_level(n, j);
    if (!(q_m > 0.0 && q_m < 1.0))
        throw std::domain_error("s0j: q_m must lie in (0,1)");
    if (!(c_r >= 0.0 && c_r <= 1.0))
        throw std::domain_error("s0j: c_r must lie in [0,1]");
    if (j == 1) {
        // All n bits flip: forced component with q_m, the rest with c_r*q_m.
        return std::pow(q_m, n) * std::pow(c_r, n - 1);
    }
    const double bracket =
        (n - j + 1) * (1.0 - q_m * c_r) + (j - 1) * (1.0 - q_m) * c_r;
    return bracket / n * std::pow(c_r, n - j) * std::pow(q_m, n - j + 1) *
           std::pow(1.0 - q_m * c_r, j - 2);
}

MutationOptimum optimal_mutation_rate(int n, int j) {
    check_level(n, j);
    MutationOptimum opt;
    opt.p_star = static_cast<double>(n - j + 1) / n;
    // 0^0 = 1 at j = 1; the supremum there sits at the boundary p_m = 1.
    opt.p0j_max = std::pow(opt.p_star, n - j + 1) *
                  std::pow(static_cast<double>(j - 1) / n, j - 1);
    opt.boundary = (j == 1);
    return opt;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    if (!(hi >= lo)) throw std::invalid_argument("golden_section_max: empty interval");
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

const char* to_string(CrossoverRegime r) {
    switch (r) {
        case CrossoverRegime::AllBitsBoundary: return "all-bits-boundary";
        case CrossoverRegime::IncreasingToOne: return "increasing-to-one";
        case CrossoverRegime::InteriorJ2: return "interior-j2";
        case CrossoverRegime::InteriorBracketed: return "interior-bracketed";
        case CrossoverRegime::InteriorJN: return "interior-jn";
        case CrossoverRegime::DecreasingToZero: return "decreasing-to-zero";
    }
    return "unknown";
}

CrossoverOptimum optimal_crossover_rate(int n, int j, double q_m) {
    check_level(n, j);
    if (!(q_m > 0.0 && q_m < 1.0))
        throw std::domain_error("optimal_crossover_rate: q_m must lie in (0,1)");

    auto f = [&](double c) { return s0j(n, j, c, q_m); };

    CrossoverOptimum opt;
    std::vector<double> candidates = {0.0, 1.0};

    if (j == 1) {
        opt.regime = CrossoverRegime::AllBitsBoundary;
    } else if (j == 2) {
        if (q_m > (n - 1.0) / n) {
            opt.regime = CrossoverRegime::InteriorJ2;
            candidates.push_back((n - 2.0) / (n * q_m - 1.0));
        } else {
            opt.regime = CrossoverRegime::IncreasingToOne;
        }
    } else if (j < n) {
        if (q_m > (n - j) / (n - 1.0)) {
            opt.regime = CrossoverRegime::InteriorBracketed;
        } else {
            opt.regime = CrossoverRegime::IncreasingToOne;
        }
        // Bracket endpoints for the two product terms' own maximizers.
        candidates.push_back(std::clamp((n - j) / ((n - 1.0) * q_m), 0.0, 1.0));
        candidates.push_back(std::clamp((n - j + 1) / ((n - 1.0) * q_m), 0.0, 1.0));
    } else {  // j == n
        if (q_m <= 1.0 / n) {
            opt.regime = CrossoverRegime::IncreasingToOne;
        } else if (q_m <= 0.5) {
            opt.regime = CrossoverRegime::InteriorJN;
            candidates.push_back(
                std::clamp((1.0 - 2.0 * q_m) / (q_m * (n - 1.0 - n * q_m)), 0.0, 1.0));
        } else {
            opt.regime = CrossoverRegime::DecreasingToZero;
        }
    }

    // Golden-section over the whole range and over the analytic bracket,
    // then a final sweep over every candidate.
    candidates.push_back(golden_section_max(f, 0.0, 1.0));
    if (j >= 3 && j < n) {
        const double lo = std::clamp((n - j) / ((n - 1.0) * q_m), 0.0, 1.0);
        const double hi = std::clamp((n - j + 1) / ((n - 1.0) * q_m), 0.0, 1.0);
        if (hi > lo) candidates.push_back(golden_section_max(f, lo, hi));
    }

    double best_x = 0.0, best_v = -1.0;
    for (double c : candidates) {
        const double v = f(c);
        if (v > best_v) {
            best_v = v;
            best_x = c;
        }
    }
    // Prefer exact endpoints when they are not genuinely beaten.
    for (double c : {1.0, 0.0}) {
        if (f(c) >= best_v - 1e-15) {
            best_x = c;
            best_v = f(c);
            break;
        }
    }
    opt.cr_star = best_x;
    opt.s0j_max = best_v;
    return opt;
}

Theorem9Verdict theorem9_verdict(int n, int j, double q_m, double tol) {
    check_level(n, j);
    Theorem9Verdict v;
    v.p = p0j(n, j, q_m);
    const CrossoverOptimum opt = optimal_crossover_rate(n, j, q_m);
    v.s_max = opt.s0j_max;
    v.cr_star = opt.cr_star;
    v.strict_numeric = v.s_max > v.p + tol;

    if (j == 1) {
        v.equality_predicted = true;
    } else if (j == 2) {
        if (q_m > (n - 1.0) / n) v.strict_predicted = true;
        else v.equality_predicted = true;
    } else if (j < n) {
        // The classification only pins the equality side here; above the
        // threshold it asserts the weak inequality, which both outcomes obey.
        if (q_m <= (n - j) / (n - 1.0)) v.equality_predicted = true;
    } else {
        if (q_m > 1.0 / n) v.strict_predicted = true;
        else v.equality_predicted = true;
    }

    if (v.equality_predicted) v.consistent = !v.strict_numeric;
    else if (v.strict_predicted) v.consistent = v.strict_numeric;
    else v.consistent = v.s_max >= v.p - tol;
    return v;
}

}  // namespace levelea
