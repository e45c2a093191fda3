#include "levelea/transition.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "levelea/combinatorics.hpp"

namespace levelea {

TransitionMatrix::TransitionMatrix(int L) : L_(L) {
    if (L_ < 0) throw std::invalid_argument("TransitionMatrix: negative L");
    r_.assign(static_cast<std::size_t>(dim()) * dim(), 0.0);
}

void TransitionMatrix::complete_diagonal() {
    for (int j = 0; j <= L_; ++j) {
        double off = 0.0;
        for (int i = 0; i < j; ++i) off += at(i, j);
        double diag = 1.0 - off;
        if (diag < 0.0) {
            if (diag < -1e-12)
                throw std::runtime_error("TransitionMatrix: column exceeds unit mass");
            diag = 0.0;
        }
        at(j, j) = diag;
    }
}

void TransitionMatrix::clamp_rounding(double neg_tol, double pos_tol) {
    for (double& v : r_) {
        if (v < 0.0) {
            if (v < -neg_tol)
                throw std::runtime_error("TransitionMatrix: negative entry");
            v = 0.0;
        } else if (v > 1.0) {
            if (v > 1.0 + pos_tol)
                throw std::runtime_error("TransitionMatrix: entry exceeds 1");
            v = 1.0;
        }
    }
}

double TransitionMatrix::column_sum(int j) const {
    double s = 0.0;
    for (int i = 0; i <= L_; ++i) s += at(i, j);
    return s;
}

void TransitionMatrix::validate(double tol) const {
    for (int j = 0; j <= L_; ++j) {
        for (int i = 0; i <= L_; ++i) {
            const double v = at(i, j);
            if (i > j && v != 0.0)
                throw std::runtime_error("TransitionMatrix: lower-triangular entry");
            if (!(v >= 0.0 && v <= 1.0))
                throw std::runtime_error("TransitionMatrix: entry outside [0,1]");
        }
        if (std::fabs(column_sum(j) - 1.0) > tol)
            throw std::runtime_error("TransitionMatrix: column sum differs from 1");
    }
}

namespace {

void check_kernel_dim(int n, const FlipKernel& kernel) {
    if (kernel.n() != n)
        throw std::invalid_argument("transition builder: kernel dimension mismatch");
}

}  // namespace

TransitionMatrix build_onemax(int n, const FlipKernel& kernel) {
    if (n < 1) throw std::invalid_argument("build_onemax: n must be positive");
    check_kernel_dim(n, kernel);
    std::vector<double> P(n + 1);
    for (int l = 0; l <= n; ++l) P[l] = kernel.flip_probability(l);

    TransitionMatrix m(n);
    // Level j has j zero-bits. Reaching level i < j flips j-i+k zeros and k
    // ones, for every feasible k.
    for (int j = 1; j <= n; ++j) {
        for (int i = 0; i < j; ++i) {
            const int kmax = std::min(n - j, i);
            double sum = 0.0;
            for (int k = 0; k <= kmax; ++k) {
                sum += binom(n - j, k) * binom(j, k + (j - i)) * P[2 * k + j - i];
            }
            m.at(i, j) = sum;
        }
    }
    m.complete_diagonal();
    m.validate();
    return m;
}

TransitionMatrix build_deceptive(int n, const FlipKernel& kernel) {
    if (n < 2) throw std::invalid_argument("build_deceptive: n must be at least 2");
    check_kernel_dim(n, kernel);
    std::vector<double> P(n + 1);
    for (int l = 0; l <= n; ++l) P[l] = kernel.flip_probability(l);

    TransitionMatrix m(n);
    // Level j >= 1 has j-1 one-bits. Reaching level i in [1,j) flips j-i+k
    // ones and k zeros; reaching the optimum flips all n-j+1 zeros exactly.
    for (int j = 1; j <= n; ++j) {
        m.at(0, j) = P[n - j + 1];
        for (int i = 1; i < j; ++i) {
            const int kmax = std::min(n - j + 1, i - 1);
            double sum = 0.0;
            for (int k = 0; k <= kmax; ++k) {
                sum += binom(n - j + 1, k) * binom(j - 1, k + (j - i)) * P[2 * k + j - i];
            }
            m.at(i, j) = sum;
        }
    }
    m.complete_diagonal();
    m.validate();
    return m;
}

TransitionMatrix build_levelwise(const LevelProblem& problem, const FlipKernel& kernel) {
    const int n = problem.n();
    check_kernel_dim(n, kernel);
    if (!problem.level_map_injective())
        throw std::invalid_argument("build_levelwise: level map must be injective");
    if (!problem.errors_strictly_increasing())
        throw std::invalid_argument(
            "build_levelwise: errors must be strictly increasing for an "
            "upper-triangular level chain");

    std::vector<double> P(n + 1);
    for (int l = 0; l <= n; ++l) P[l] = kernel.flip_probability(l);

    TransitionMatrix m(problem.L());
    for (int c = 0; c <= n; ++c) {
        const int j = problem.level_of_ones(c);
        const double ej = problem.error_at(j);
        // Flip a of the n-c zeros and b of the c ones; the candidate has
        // c+a-b ones. Rejected mass stays at level j.
        for (int a = 0; a <= n - c; ++a) {
            for (int b = 0; b <= c; ++b) {
                const double mass = binom(n - c, a) * binom(c, b) * P[a + b];
                const int c2 = c + a - b;
                const int i = problem.level_of_ones(c2);
                if (problem.error_at(i) <= ej) {
                    m.at(i, j) += mass;
                } else {
                    m.at(j, j) += mass;
                }
            }
        }
    }
    m.clamp_rounding();
    m.validate(1e-10);
    return m;
}

TransitionMatrix bruteforce_transition(int n, const LevelProblem& problem,
                                       const FlipKernel& kernel, int representative) {
    check_kernel_dim(n, kernel);
    if (problem.n() != n)
        throw std::invalid_argument("bruteforce_transition: problem dimension mismatch");
    if (!problem.level_map_injective())
        throw std::invalid_argument("bruteforce_transition: level map must be injective");
    const bool crossover = kernel.has_crossover();
    if (crossover && n > 5)
        throw std::invalid_argument(
            "bruteforce_transition: crossover enumeration is limited to n <= 5");
    if (!crossover && n > 8)
        throw std::invalid_argument(
            "bruteforce_transition: mutation enumeration is limited to n <= 8");

    // Unique ones-count per level (injective map).
    const int L = problem.L();
    std::vector<int> ones_of_level(L + 1, -1);
    for (int c = 0; c <= n; ++c) ones_of_level[problem.level_of_ones(c)] = c;

    const std::uint64_t space = 1ull << n;
    TransitionMatrix m(L);

    auto representative_mask = [&](int c) -> std::uint64_t {
        if (c == 0) return 0;
        const std::uint64_t low = (1ull << c) - 1;
        return representative == 0 ? low : (low << (n - c));
    };

    for (int j = 0; j <= L; ++j) {
        const int c = ones_of_level[j];
        if (c < 0) throw std::invalid_argument("bruteforce_transition: unused level");
        const std::uint64_t x = representative_mask(c);
        const double ej = problem.error_of_ones(c);

        auto account = [&](std::uint64_t y, double prob) {
            const int cy = std::popcount(y);
            const double ey = problem.error_of_ones(cy);
            if (ey <= ej) {
                m.at(problem.level_of_ones(cy), j) += prob;
            } else {
                m.at(j, j) += prob;
            }
        };

        if (!crossover) {
            const double p = kernel.mutation_params()->p_m;
            std::vector<double> pf(n + 1), pk(n + 1);
            for (int k = 0; k <= n; ++k) {
                pf[k] = std::pow(p, k);
                pk[k] = std::pow(1.0 - p, k);
            }
            for (std::uint64_t mask = 0; mask < space; ++mask) {
                const int f = std::popcount(mask);
                account(x ^ mask, pf[f] * pk[n - f]);
            }
        } else {
            const auto& cp = *kernel.crossover_params();
            std::vector<double> qf(n + 1), qk(n + 1), cf(n + 1), ck(n + 1);
            for (int k = 0; k <= n; ++k) {
                qf[k] = std::pow(cp.q_m, k);
                qk[k] = std::pow(1.0 - cp.q_m, k);
                cf[k] = std::pow(cp.c_r, k);
                ck[k] = std::pow(1.0 - cp.c_r, k);
            }
            const double inv_n = 1.0 / n;
            for (std::uint64_t mut = 0; mut < space; ++mut) {
                const int fm = std::popcount(mut);
                const double pmut = qf[fm] * qk[n - fm];
                for (std::uint64_t cross = 0; cross < space; ++cross) {
                    const int fc = std::popcount(cross);
                    const double pboth = pmut * cf[fc] * ck[n - fc] * inv_n;
                    for (int forced = 0; forced < n; ++forced) {
                        const std::uint64_t taken = cross | (1ull << forced);
                        account(x ^ (mut & taken), pboth);
                    }
                }
            }
        }
    }
    m.clamp_rounding();
    m.validate(1e-9);
    return m;
}

std::pair<TransitionMatrix, TransitionMatrix> counterexample_pair(int n) {
    if (n < 3) throw std::invalid_argument("counterexample_pair: n must be at least 3");
    const double n2 = static_cast<double>(n) * n;
    const double n3 = n2 * n;

    TransitionMatrix r(n);
    TransitionMatrix s(n);
    for (int j = 1; j <= n; ++j) {
        r.at(0, j) = j / n3;
        s.at(0, j) = 2.0 * j / n3;
        if (j >= 2) {
            r.at(j - 1, j) = (j - 1) / n2;
            s.at(j - 1, j) = (j - 1) * (1.0 / n2 + 1.0 / (2.0 * n));
        }
    }
    r.complete_diagonal();
    s.complete_diagonal();
    r.validate();
    s.validate();
    return {std::move(r), std::move(s)};
}

DominanceResult dominates(const TransitionMatrix& a, const TransitionMatrix& b,
                          double tol) {
    if (a.L() != b.L())
        throw std::invalid_argument("dominates: dimension mismatch");
    DominanceResult res;
    res.weakly_geq = true;
    for (int j = 1; j <= a.L(); ++j) {
        for (int i = 0; i < j; ++i) {
            const double av = a.at(i, j);
            const double bv = b.at(i, j);
            if (av < bv - tol) {
                res.weakly_geq = false;
                if (!res.violation) res.violation = {i, j};
            } else if (av > bv + tol && !res.strict_site) {
                res.strict_site = {i, j};
            }
        }
    }
    res.dominates = res.weakly_geq && res.strict_site.has_value();
    return res;
}

Lemma3Report lemma3_conditions(const TransitionMatrix& r, const TransitionMatrix& s,
                               double tol) {
    if (r.L() != s.L())
        throw std::invalid_argument("lemma3_conditions: dimension mismatch");
    const int L = r.L();
    Lemma3Report rep;

    rep.c1 = true;
    for (int j = 0; j <= L; ++j) {
        if (s.at(j, j) < r.at(j, j) - tol) {
            rep.c1 = false;
            rep.c1_violation = j;
            break;
        }
    }

    rep.c2 = true;
    for (int j = 1; j <= L && rep.c2; ++j) {
        double prefix = 0.0;  // sum over rows 0..i-1 of r - s
        for (int i = 1; i < j; ++i) {
            prefix += r.at(i - 1, j) - s.at(i - 1, j);
            if (prefix < -tol) {
                rep.c2 = false;
                rep.c2_violation = {i, j};
                break;
            }
        }
    }

    rep.c3 = true;
    for (int j = 2; j <= L && rep.c3; ++j) {
        double prefix = 0.0;  // sum over rows 0..i of s column j-1 minus column j
        for (int i = 0; i < j - 1; ++i) {
            prefix += s.at(i, j - 1) - s.at(i, j);
            if (prefix < -tol) {
                rep.c3 = false;
                rep.c3_violation = {i, j};
                break;
            }
        }
    }
    return rep;
}

void save_matrix_csv(const TransitionMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "L=" << m.L() << "\n";
    char buf[64];
    for (int i = 0; i <= m.L(); ++i) {
        for (int j = 0; j <= m.L(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m.at(i, j));
            out << buf << (j == m.L() ? '\n' : ',');
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

TransitionMatrix load_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    std::string header;
    if (!std::getline(in, header) || header.rfind("L=", 0) != 0)
        throw std::runtime_error("matrix file: missing L= header");
    const int L = std::stoi(header.substr(2));
    TransitionMatrix m(L);
    std::string line;
    for (int i = 0; i <= L; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("matrix file: truncated");
        std::stringstream ss(line);
        std::string cell;
        for (int j = 0; j <= L; ++j) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error("matrix file: short row");
            m.at(i, j) = std::strtod(cell.c_str(), nullptr);
        }
    }
    return m;
}

}  // namespace levelea
