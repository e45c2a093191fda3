#include "levelea/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace levelea {

namespace {

void check_l(int l, int n) {
    if (n < 1) throw std::domain_error("flip probability: n must be positive");
    if (l < 0 || l > n) throw std::domain_error("flip probability: l out of [0,n]");
}

}  // namespace

double p1_flip(int l, int n, double p_m) {
    check_l(l, n);
    if (!(p_m > 0.0 && p_m < 1.0))
        throw std::domain_error("p1_flip: p_m must lie in (0,1)");
    return std::pow(p_m, l) * std::pow(1.0 - p_m, n - l);
}

double p2_flip(int l, int n, double q_m, double c_r) {
    check_l(l, n);
    if (!(q_m > 0.0 && q_m < 1.0))
        throw std::domain_error("p2_flip: q_m must lie in (0,1)");
    if (!(c_r > 0.0 && c_r <= 1.0))
        throw std::domain_error("p2_flip: c_r must lie in (0,1]");
    const double qc = q_m * c_r;
    if (l == n) {
        // All n bits flip: the forced component flips with q_m, each other
        // component flips with c_r*q_m.
        return std::pow(c_r, n - 1) * std::pow(q_m, n);
    }
    if (qc >= 1.0)
        throw std::domain_error("p2_flip: q_m*c_r = 1 is singular for l < n");
    if (l == 0) {
        // No bit flips: forced component keeps its value with 1-q_m, each
        // other with 1-q_m*c_r.
        return (1.0 - q_m) * std::pow(1.0 - qc, n - 1);
    }
    const double bracket = l + (n - l) * c_r - n * qc;
    return bracket / n * std::pow(c_r, l - 1) * std::pow(q_m, l) *
           std::pow(1.0 - qc, n - l - 1);
}

double p2_flip_coupled(int l, int n, double p, double c_r) {
    check_l(l, n);
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("p2_flip_coupled: p must lie in (0,1)");
    if (!(c_r > 0.0 && c_r <= 1.0))
        throw std::domain_error("p2_flip_coupled: c_r must lie in (0,1]");
    if (l == n) return std::pow(p, n) / c_r;
    if (l == 0) return (1.0 - p / c_r) * std::pow(1.0 - p, n - 1);
    const double bracket = (n - l) + (l - n * p) / c_r;
    return bracket / n * std::pow(p, l) * std::pow(1.0 - p, n - l - 1);
}

double flip_difference(int l, int n, double p, double c_r) {
    if (l < 1 || l > n - 1)
        throw std::domain_error("flip_difference: l must lie in [1,n-1]");
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("flip_difference: p must lie in (0,1)");
    if (!(c_r > 0.0 && c_r < 1.0))
        throw std::domain_error("flip_difference: c_r must lie in (0,1)");
    return (1.0 / c_r - 1.0) * (static_cast<double>(l) / n - p) *
           std::pow(p, l) * std::pow(1.0 - p, n - l - 1);
}

FlipKernel::FlipKernel(int n, std::variant<MutationOnly, MutationCrossover> op)
    : n_(n), op_(std::move(op)) {
    if (n_ < 1) throw std::invalid_argument("FlipKernel: n must be positive");
    if (const auto* m = std::get_if<MutationOnly>(&op_)) {
        if (!(m->p_m > 0.0 && m->p_m < 1.0))
            throw std::invalid_argument("FlipKernel: p_m must lie in (0,1)");
    } else {
        const auto& c = std::get<MutationCrossover>(op_);
        if (!(c.q_m > 0.0 && c.q_m < 1.0))
            throw std::invalid_argument("FlipKernel: q_m must lie in (0,1)");
        if (!(c.c_r > 0.0 && c.c_r <= 1.0))
            throw std::invalid_argument("FlipKernel: c_r must lie in (0,1]");
    }
}

FlipKernel FlipKernel::mutation(int n, double p_m) {
    return FlipKernel(n, MutationOnly{p_m});
}

FlipKernel FlipKernel::crossover(int n, double q_m, double c_r) {
    return FlipKernel(n, MutationCrossover{q_m, c_r});
}

FlipKernel FlipKernel::coupled_crossover(int n, double p, double c_r) {
    if (!(c_r > 0.0 && c_r <= 1.0))
        throw std::invalid_argument("FlipKernel: c_r must lie in (0,1]");
    return crossover(n, p / c_r, c_r);
}

bool FlipKernel::has_crossover() const {
    return std::holds_alternative<MutationCrossover>(op_);
}

const MutationOnly* FlipKernel::mutation_params() const {
    return std::get_if<MutationOnly>(&op_);
}

const MutationCrossover* FlipKernel::crossover_params() const {
    return std::get_if<MutationCrossover>(&op_);
}

double FlipKernel::flip_probability(int l) const {
    if (const auto* m = std::get_if<MutationOnly>(&op_)) {
        return p1_flip(l, n_, m->p_m);
    }
    const auto& c = std::get<MutationCrossover>(op_);
    return p2_flip(l, n_, c.q_m, c.c_r);
}

Theorem1Report theorem1_check(int n, double p, double c_r, double slack) {
    if (n < 1) throw std::domain_error("theorem1_check: n must be positive");
    if (!(p > 0.0 && p < 1.0) || !(c_r > 0.0 && c_r <= 1.0))
        throw std::domain_error("theorem1_check: parameters out of domain");
    Theorem1Report rep;
    rep.n = n;
    rep.p = p;
    rep.c_r = c_r;
    // c_r = 1 degenerates both operators into one another; the comparison
    // still runs but is flagged as sitting on the boundary of the claim.
    rep.in_scope = (p <= 1.0 / n) && c_r < 1.0;
    rep.p1.assign(n + 1, 0.0);
    rep.p2.assign(n + 1, 0.0);
    rep.holds_for_all = true;
    for (int l = 1; l <= n; ++l) {
        rep.p1[l] = p1_flip(l, n, p);
        rep.p2[l] = p2_flip_coupled(l, n, p, c_r);
        if (rep.p1[l] > rep.p2[l] + slack) {
            rep.holds_for_all = false;
            rep.violations.push_back(l);
        }
    }
    return rep;
}

}  // namespace levelea
