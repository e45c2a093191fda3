#include "levelea/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "levelea/combinatorics.hpp"

namespace levelea {

int onemax_error(int ones_count, int n) {
    if (n < 1) throw std::domain_error("onemax_error: n must be positive");
    if (ones_count < 0 || ones_count > n)
        throw std::domain_error("onemax_error: ones_count out of [0,n]");
    return n - ones_count;
}

int deceptive_error(int ones_count, int n) {
    if (n < 2) throw std::domain_error("deceptive_error: n must be at least 2");
    if (ones_count < 0 || ones_count > n)
        throw std::domain_error("deceptive_error: ones_count out of [0,n]");
    return ones_count == n ? 0 : ones_count + 1;
}

LevelProblem::LevelProblem(ProblemKind kind, int n, std::vector<double> errors,
                           std::vector<int> level_map)
    : kind_(kind), n_(n), error_vector_(std::move(errors)),
      level_of_ones_(std::move(level_map)) {
    if (n_ < 1) throw std::invalid_argument("LevelProblem: n must be positive");
    if (error_vector_.empty())
        throw std::invalid_argument("LevelProblem: empty error vector");
    if (static_cast<int>(level_of_ones_.size()) != n_ + 1)
        throw std::invalid_argument("LevelProblem: level map must have n+1 entries");
    if (error_vector_[0] != 0.0)
        throw std::invalid_argument("LevelProblem: error_vector[0] must be 0");
    for (std::size_t i = 1; i < error_vector_.size(); ++i) {
        if (!(error_vector_[i] >= error_vector_[i - 1]))
            throw std::invalid_argument("LevelProblem: error vector must be non-decreasing");
    }
    const int L = this->L();
    for (int c = 0; c <= n_; ++c) {
        if (level_of_ones_[c] < 0 || level_of_ones_[c] > L)
            throw std::invalid_argument("LevelProblem: level index out of range");
    }
}

LevelProblem LevelProblem::onemax(int n) {
    std::vector<double> errors(n + 1);
    std::vector<int> level_map(n + 1);
    for (int i = 0; i <= n; ++i) errors[i] = static_cast<double>(i);
    for (int c = 0; c <= n; ++c) level_map[c] = onemax_error(c, n);
    return LevelProblem(ProblemKind::OneMax, n, std::move(errors), std::move(level_map));
}

LevelProblem LevelProblem::deceptive(int n) {
    if (n < 2) throw std::invalid_argument("LevelProblem::deceptive: n must be at least 2");
    std::vector<double> errors(n + 1);
    std::vector<int> level_map(n + 1);
    for (int i = 0; i <= n; ++i) errors[i] = static_cast<double>(i);
    for (int c = 0; c <= n; ++c) level_map[c] = deceptive_error(c, n);
    return LevelProblem(ProblemKind::Deceptive, n, std::move(errors), std::move(level_map));
}

LevelProblem LevelProblem::custom(int n, std::vector<double> error_vector,
                                  std::vector<int> level_of_ones) {
    return LevelProblem(ProblemKind::Custom, n, std::move(error_vector),
                        std::move(level_of_ones));
}

LevelProblem LevelProblem::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open problem file: " + path);
    nlohmann::json j;
    in >> j;
    const int n = j.at("n").get<int>();
    auto errors = j.at("error_vector").get<std::vector<double>>();
    auto levels = j.at("level_of_ones").get<std::vector<int>>();
    if (static_cast<int>(errors.size()) != n + 1)
        throw std::runtime_error("problem file: error_vector must have n+1 entries");
    if (static_cast<int>(levels.size()) != n + 1)
        throw std::runtime_error("problem file: level_of_ones must have n+1 entries");
    return custom(n, std::move(errors), std::move(levels));
}

double LevelProblem::error_at(int level) const {
    if (level < 0 || level > L())
        throw std::domain_error("LevelProblem::error_at: level out of range");
    return error_vector_[level];
}

int LevelProblem::level_of_ones(int ones_count) const {
    if (ones_count < 0 || ones_count > n_)
        throw std::domain_error("LevelProblem::level_of_ones: ones_count out of range");
    return level_of_ones_[ones_count];
}

double LevelProblem::error_of_ones(int ones_count) const {
    return error_vector_[level_of_ones(ones_count)];
}

bool LevelProblem::level_map_injective() const {
    std::vector<char> seen(L() + 1, 0);
    for (int c = 0; c <= n_; ++c) {
        if (seen[level_of_ones_[c]]) return false;
        seen[level_of_ones_[c]] = 1;
    }
    return true;
}

bool LevelProblem::errors_strictly_increasing() const {
    for (std::size_t i = 1; i < error_vector_.size(); ++i) {
        if (!(error_vector_[i] > error_vector_[i - 1])) return false;
    }
    return true;
}

double LevelDistribution::sum() const {
    return std::accumulate(q.begin(), q.end(), 0.0);
}

void LevelDistribution::validate(double tol) const {
    if (q.empty()) throw std::invalid_argument("LevelDistribution: empty");
    for (double v : q) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("LevelDistribution: entry outside [0,1]");
    }
    if (std::fabs(sum() - 1.0) > tol)
        throw std::invalid_argument("LevelDistribution: mass does not sum to 1");
}

LevelDistribution initial_distribution(const LevelProblem& problem) {
    const int n = problem.n();
    LevelDistribution d;
    d.q.assign(problem.L() + 1, 0.0);
    const double denom = std::ldexp(1.0, n);  // 2^n, exact
    for (int c = 0; c <= n; ++c) {
        d.q[problem.level_of_ones(c)] += binom(n, c) / denom;
    }
    return d;
}

LevelDistribution uniform_distribution(int L) {
    if (L < 0) throw std::invalid_argument("uniform_distribution: negative L");
    LevelDistribution d;
    d.q.assign(L + 1, 1.0 / static_cast<double>(L + 1));
    return d;
}

}  // namespace levelea
