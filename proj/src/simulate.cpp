#include "levelea/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "levelea/rng.hpp"

namespace levelea {

void BinomialSampler::reset(int n, double p) {
    if (n < 1 || n > 63) throw std::invalid_argument("BinomialSampler: n out of [1,63]");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("BinomialSampler: p must lie in (0,1)");
    n_ = n;
    p_ = p;
    const double ratio = p / (1.0 - p);
    double pmf = std::pow(1.0 - p, n);
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        acc += pmf;
        cdf_[k] = acc;
        pmf *= ratio * (n - k) / (k + 1.0);
    }
    cdf_[n] = 1.0;
}

void SimConfig::validate() const {
    if (problem.n() > 63)
        throw std::invalid_argument("SimConfig: bitstrings limited to n <= 63");
    if (horizon < 0) throw std::invalid_argument("SimConfig: negative horizon");
    if (runs < 1) throw std::invalid_argument("SimConfig: runs must be at least 1");
    if (algorithm == Algorithm::EA) {
        if (!(p_m > 0.0 && p_m < 1.0))
            throw std::invalid_argument("SimConfig: p_m must lie in (0,1)");
    } else {
        if (!(q_m > 0.0 && q_m < 1.0))
            throw std::invalid_argument("SimConfig: q_m must lie in (0,1)");
        if (!(c_r > 0.0 && c_r <= 1.0))
            throw std::invalid_argument("SimConfig: c_r must lie in (0,1]");
    }
    for (int idx : tail_indices) {
        if (idx < 1 || idx > problem.L())
            throw std::invalid_argument("SimConfig: tail index out of [1,L]");
    }
}

namespace {

const char* kind_name(ProblemKind k) {
    switch (k) {
        case ProblemKind::OneMax: return "onemax";
        case ProblemKind::Deceptive: return "deceptive";
        case ProblemKind::Custom: return "custom";
    }
    return "unknown";
}

}  // namespace

std::string SimConfig::to_json() const {
    nlohmann::json j;
    j["problem"] = {{"kind", kind_name(problem.kind())}, {"n", problem.n()}};
    j["algorithm"] = algorithm == Algorithm::EA ? "ea" : "eac";
    if (algorithm == Algorithm::EA) j["p_m"] = p_m;
    else {
        j["q_m"] = q_m;
        j["c_r"] = c_r;
    }
    j["adaptive"] = adaptive;
    j["horizon"] = horizon;
    j["runs"] = runs;
    j["base_seed"] = base_seed;
    j["tail_indices"] = tail_indices;
    j["threads"] = threads;
    return j.dump(2);
}

SimConfig sim_config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;

    const auto& pj = j.at("problem");
    const std::string kind = pj.at("kind").get<std::string>();
    LevelProblem problem = [&]() {
        if (kind == "onemax") return LevelProblem::onemax(pj.at("n").get<int>());
        if (kind == "deceptive") return LevelProblem::deceptive(pj.at("n").get<int>());
        if (kind == "custom")
            return LevelProblem::from_json_file(pj.at("file").get<std::string>());
        throw std::runtime_error("config: unknown problem kind " + kind);
    }();

    SimConfig cfg{std::move(problem)};
    const std::string algo = j.value("algorithm", std::string("ea"));
    if (algo == "ea") cfg.algorithm = Algorithm::EA;
    else if (algo == "eac") cfg.algorithm = Algorithm::EAC;
    else throw std::runtime_error("config: unknown algorithm " + algo);
    cfg.p_m = j.value("p_m", 0.0);
    cfg.q_m = j.value("q_m", 0.0);
    cfg.c_r = j.value("c_r", 0.0);
    cfg.adaptive = j.value("adaptive", false);
    cfg.horizon = j.value("horizon", 1000);
    cfg.runs = j.value("runs", std::int64_t{1});
    cfg.base_seed = j.value("base_seed", std::uint64_t{1});
    cfg.tail_indices = j.value("tail_indices", std::vector<int>{1});
    cfg.threads = j.value("threads", 1);
    return cfg;
}

namespace {

struct StepCore {
    // Cached per-rate samplers; rebuilt when adaptive updates change a rate.
    BinomialSampler mutation;
    BinomialSampler crossmask;
    bool crossover = false;

    std::uint64_t sample_flips(std::mt19937_64& rng, int n) const {
        const std::uint64_t mut = random_bernoulli_mask(rng, mutation);
        if (!crossover) return mut;
        const int forced = uniform_int(rng, n);
        const std::uint64_t taken =
            random_bernoulli_mask(rng, crossmask) | (1ull << forced);
        return mut & taken;
    }
};

StepOutcome apply_step(std::uint64_t& x, const LevelProblem& problem,
                       const StepCore& core, std::mt19937_64& rng) {
    const int n = problem.n();
    const std::uint64_t flips = core.sample_flips(rng, n);
    const std::uint64_t y = x ^ flips;
    StepOutcome out;
    out.hamming = std::popcount(flips);
    if (problem.error_of_ones(std::popcount(y)) <=
        problem.error_of_ones(std::popcount(x))) {
        x = y;
        out.accepted = true;
    }
    return out;
}

// Number of Bernoulli(r) trials up to and including the first success.
double geometric_steps(std::mt19937_64& rng, double r) {
    const double u = uniform01(rng);
    if (r >= 1.0) return 1.0;
    return 1.0 + std::floor(std::log1p(-u) / std::log1p(-r));
}

}  // namespace

StepOutcome step_ea(std::uint64_t& x, const LevelProblem& problem, double p_m,
                    std::mt19937_64& rng) {
    StepCore core;
    core.mutation.reset(problem.n(), p_m);
    core.crossover = false;
    return apply_step(x, problem, core, rng);
}

StepOutcome step_ea_c(std::uint64_t& x, const LevelProblem& problem, double q_m,
                      double c_r, std::mt19937_64& rng) {
    StepCore core;
    core.mutation.reset(problem.n(), q_m);
    core.crossover = true;
    if (c_r >= 1.0) {
        // Degenerate crossover: every component comes from the mutant.
        core.crossover = false;
        core.mutation.reset(problem.n(), q_m);
    } else {
        core.crossmask.reset(problem.n(), c_r);
    }
    return apply_step(x, problem, core, rng);
}

namespace {

struct RunContext {
    const SimConfig* cfg = nullptr;
    int n = 0;
    int L = 0;
    std::vector<int> level_of_ones;
    std::vector<double> error_of_level;
    bool absorbing_optimum = false;  // strictly increasing errors
    bool deceptive_trap = false;     // all-zeros fast path applies
};

// One run; appends one count per generation into the histogram.
void simulate_run(const RunContext& ctx, std::uint64_t run_index,
                  std::vector<std::uint64_t>& counts /* (T+1) x (L+1) */) {
    const SimConfig& cfg = *ctx.cfg;
    const int n = ctx.n;
    const int T = cfg.horizon;
    const std::uint64_t full = (n == 63) ? ~0ull : ((1ull << n) - 1);

    std::mt19937_64 rng(stream_seed(cfg.base_seed, run_index));
    std::uint64_t x = rng() & full;

    AdaptiveRates rates;
    StepCore core;
    core.crossover = (cfg.algorithm == Algorithm::EAC);
    if (core.crossover) {
        rates = {cfg.q_m, cfg.c_r};
        core.mutation.reset(n, rates.mutation);
        if (rates.crossover >= 1.0) core.crossover = false;
        else core.crossmask.reset(n, rates.crossover);
    } else {
        rates = {cfg.p_m, 0.0};
        core.mutation.reset(n, rates.mutation);
    }

    auto record = [&](int t, int level) {
        counts[static_cast<std::size_t>(t) * (ctx.L + 1) + level] += 1;
    };

    int level = ctx.level_of_ones[std::popcount(x)];
    record(0, level);

    int t = 0;
    while (t < T) {
        if (ctx.absorbing_optimum && level == 0) {
            for (int u = t + 1; u <= T; ++u) record(u, 0);
            return;
        }
        if (ctx.deceptive_trap && x == 0) {
            // All-zeros incumbent: the only acceptable change is the jump to
            // the optimum, which needs the mutation to flip every bit. Skip
            // straight to the next all-bits mutation event; parameters
            // cannot change while the incumbent is stuck here.
            const int trap_level = level;
            const double all_flip = std::pow(rates.mutation, n);
            while (t < T) {
                const double skip = geometric_steps(rng, all_flip);
                if (skip > static_cast<double>(T - t)) {
                    for (int u = t + 1; u <= T; ++u) record(u, trap_level);
                    return;
                }
                const int event_t = t + static_cast<int>(skip);
                for (int u = t + 1; u < event_t; ++u) record(u, trap_level);
                t = event_t;
                bool escaped = true;
                if (core.crossover) {
                    const int k = core.crossmask.sample(rng);
                    if (k == n) {
                        escaped = true;
                    } else if (k == n - 1) {
                        // The uncovered component must be the forced one.
                        escaped = uniform_int(rng, n) == uniform_int(rng, n);
                    } else {
                        escaped = false;
                    }
                }
                if (escaped) {
                    x = full;
                    level = ctx.level_of_ones[n];
                    record(t, level);
                    for (int u = t + 1; u <= T; ++u) record(u, level);
                    return;
                }
                record(t, trap_level);
            }
            return;
        }

        ++t;
        const double err_before = ctx.error_of_level[level];
        const StepOutcome out = apply_step(x, cfg.problem, core, rng);
        if (out.accepted) {
            level = ctx.level_of_ones[std::popcount(x)];
            if (cfg.adaptive && ctx.error_of_level[level] < err_before &&
                out.hamming >= 1) {
                rates = adapt_parameters(rates, out.hamming, n, cfg.algorithm);
                core.mutation.reset(n, rates.mutation);
                if (cfg.algorithm == Algorithm::EAC) {
                    if (rates.crossover >= 1.0) core.crossover = false;
                    else {
                        core.crossover = true;
                        core.crossmask.reset(n, rates.crossover);
                    }
                }
            }
        }
        record(t, level);
    }
}

}  // namespace

AdaptiveRates adapt_parameters(AdaptiveRates rates, int hamming, int n,
                               Algorithm algorithm) {
    if (hamming == 0) return rates;  // no level transition, nothing to adapt
    if (hamming < 0) throw std::domain_error("adapt_parameters: negative distance");
    const double lo = 1.0 / (static_cast<double>(n) * n);
    const double hi = 1.0 - lo;
    if (algorithm == Algorithm::EA) {
        rates.mutation = std::clamp(rates.mutation + static_cast<double>(hamming) / n, lo, hi);
    } else {
        const double coupled =
            rates.crossover * rates.mutation + static_cast<double>(hamming) / (n - 1);
        rates.mutation = std::clamp(rates.mutation + static_cast<double>(hamming) / n, lo, hi);
        rates.crossover = std::min(coupled / rates.mutation, 1.0);
    }
    return rates;
}

EmpiricalSeries monte_carlo(const SimConfig& config) {
    config.validate();
    const int T = config.horizon;
    const int L = config.problem.L();
    const std::int64_t runs = config.runs;

    RunContext ctx;
    ctx.cfg = &config;
    ctx.n = config.problem.n();
    ctx.L = L;
    ctx.level_of_ones.resize(ctx.n + 1);
    for (int c = 0; c <= ctx.n; ++c) ctx.level_of_ones[c] = config.problem.level_of_ones(c);
    ctx.error_of_level = config.problem.error_vector();
    ctx.absorbing_optimum = config.problem.errors_strictly_increasing();
    ctx.deceptive_trap =
        config.problem.kind() == ProblemKind::Deceptive && ctx.absorbing_optimum;

    int threads = config.threads;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (runs < threads) threads = static_cast<int>(runs);
    threads = std::max(1, threads);

    const std::size_t cells = static_cast<std::size_t>(T + 1) * (L + 1);
    std::vector<std::vector<std::uint64_t>> partial(
        threads, std::vector<std::uint64_t>(cells, 0));

    auto work = [&](int w) {
        const std::int64_t lo = runs * w / threads;
        const std::int64_t hi = runs * (w + 1) / threads;
        for (std::int64_t r = lo; r < hi; ++r)
            simulate_run(ctx, static_cast<std::uint64_t>(r), partial[w]);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    // Integer merge: identical totals for any thread count or ordering.
    std::vector<std::uint64_t> counts(cells, 0);
    for (const auto& p : partial)
        for (std::size_t i = 0; i < cells; ++i) counts[i] += p[i];

    EmpiricalSeries s;
    s.horizon = T;
    s.runs = runs;
    s.tail_indices = config.tail_indices;
    s.mean_err.resize(T + 1);
    s.se_err.resize(T + 1);
    s.tail_freq.assign(s.tail_indices.size(), std::vector<double>(T + 1));
    s.tail_se.assign(s.tail_indices.size(), std::vector<double>(T + 1));
    s.level_counts.assign(T + 1, std::vector<std::uint64_t>(L + 1));

    const double R = static_cast<double>(runs);
    for (int t = 0; t <= T; ++t) {
        double sum = 0.0, sum_sq = 0.0;
        for (int l = 0; l <= L; ++l) {
            const std::uint64_t c = counts[static_cast<std::size_t>(t) * (L + 1) + l];
            s.level_counts[t][l] = c;
            const double e = ctx.error_of_level[l];
            sum += e * static_cast<double>(c);
            sum_sq += e * e * static_cast<double>(c);
        }
        const double mean = sum / R;
        s.mean_err[t] = mean;
        s.se_err[t] = runs > 1
            ? std::sqrt(std::max(0.0, (sum_sq - R * mean * mean) / (R - 1.0)) / R)
            : 0.0;
        for (std::size_t k = 0; k < s.tail_indices.size(); ++k) {
            double tail = 0.0;
            for (int l = s.tail_indices[k]; l <= L; ++l)
                tail += static_cast<double>(s.level_counts[t][l]);
            const double freq = tail / R;
            s.tail_freq[k][t] = freq;
            s.tail_se[k][t] = runs > 1 ? std::sqrt(freq * (1.0 - freq) / R) : 0.0;
        }
    }
    return s;
}

void write_empirical_csv(const EmpiricalSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "t,mean_err,se_err";
    for (int idx : series.tail_indices) out << ",tp_" << idx << ",se_tp_" << idx;
    out << "\n";
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << ',' << buf;
    };
    for (int t = 0; t <= series.horizon; ++t) {
        out << t;
        put(series.mean_err[t]);
        put(series.se_err[t]);
        for (std::size_t k = 0; k < series.tail_indices.size(); ++k) {
            put(series.tail_freq[k][t]);
            put(series.tail_se[k][t]);
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace levelea
