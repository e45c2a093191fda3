#include "levelea/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace levelea {

Trajectory iterate(const TransitionMatrix& matrix, const LevelDistribution& q0, int T) {
    const int dim = matrix.dim();
    if (q0.dim() != dim)
        throw std::invalid_argument("iterate: distribution/matrix dimension mismatch");
    if (T < 0) throw std::invalid_argument("iterate: negative horizon");

    Trajectory traj;
    traj.states.reserve(T + 1);
    traj.states.push_back(q0);
    std::vector<double> next(dim);
    for (int t = 0; t < T; ++t) {
        const auto& cur = traj.states.back().q;
        for (int i = 0; i < dim; ++i) {
            double acc = 0.0;
            for (int j = i; j < dim; ++j) acc += matrix.at(i, j) * cur[j];
            next[i] = acc;
        }
        LevelDistribution d;
        d.q = next;
        if ((t + 1) % 10000 == 0) {
            const double s = d.sum();
            if (std::fabs(s - 1.0) > 1e-9) {
                for (double& v : d.q) v /= s;
                ++traj.renormalization_events;
            }
        }
        traj.states.push_back(std::move(d));
    }
    return traj;
}

MetricSeries metrics(const Trajectory& trajectory, const std::vector<double>& error_vector,
                     const std::vector<int>& tail_indices) {
    if (trajectory.states.empty())
        throw std::invalid_argument("metrics: empty trajectory");
    const int dim = trajectory.states.front().dim();
    if (static_cast<int>(error_vector.size()) != dim)
        throw std::invalid_argument("metrics: error vector dimension mismatch");
    const int L = dim - 1;
    for (int idx : tail_indices) {
        if (idx < 1 || idx > L)
            throw std::domain_error("metrics: tail index must lie in [1,L]");
    }

    MetricSeries s;
    s.horizon = trajectory.horizon();
    s.eae.reserve(s.horizon + 1);
    for (int idx : tail_indices) s.tails[idx].reserve(s.horizon + 1);

    for (const auto& dist : trajectory.states) {
        double e = 0.0;
        for (int i = 0; i <= L; ++i) e += error_vector[i] * dist.q[i];
        s.eae.push_back(e);
        for (int idx : tail_indices) {
            double tp = 0.0;
            for (int i = idx; i <= L; ++i) tp += dist.q[i];
            s.tails[idx].push_back(tp);
        }
    }
    return s;
}

double spectral_radius(const TransitionMatrix& matrix) {
    if (matrix.L() == 0)
        throw std::invalid_argument("spectral_radius: degenerate chain without "
                                    "non-optimal states");
    double rho = 0.0;
    for (int j = 1; j <= matrix.L(); ++j) rho = std::max(rho, matrix.at(j, j));
    return rho;
}

double acr(const std::vector<double>& eae_series, int t) {
    if (t < 1 || t >= static_cast<int>(eae_series.size()))
        throw std::invalid_argument("acr: t outside series");
    const double e0 = eae_series[0];
    if (e0 <= 0.0)
        throw std::domain_error("acr: undefined when the initial error is zero");
    return 1.0 - std::pow(eae_series[t] / e0, 1.0 / t);
}

namespace {

SignComparison compare_series(const std::vector<double>& a, const std::vector<double>& b,
                              double tol) {
    SignComparison c;
    int prev_sign = 0;
    int run_sign = 0;
    int run_start = 0;
    auto close_run = [&](int last) {
        if (run_sign == -1) c.a_below.emplace_back(run_start, last);
        else if (run_sign == +1) c.b_below.emplace_back(run_start, last);
    };
    const int T = static_cast<int>(a.size()) - 1;
    for (int t = 0; t <= T; ++t) {
        int sign = 0;
        if (a[t] < b[t] - tol) sign = -1;
        else if (b[t] < a[t] - tol) sign = +1;

        if (sign == +1) c.a_never_above = false;
        if (sign == -1 && c.first_a_strictly_below < 0) c.first_a_strictly_below = t;
        if (sign != 0 && prev_sign != 0 && sign != prev_sign)
            c.sign_change_epochs.push_back(t);
        if (sign != 0) prev_sign = sign;

        if (sign != run_sign) {
            close_run(t - 1);
            run_sign = sign;
            run_start = t;
        }
        if (t == T) {
            close_run(T);
            c.final_sign = sign;
        }
    }
    return c;
}

}  // namespace

OutperformanceReport outperformance_report(const MetricSeries& a, const MetricSeries& b,
                                           double tol) {
    if (a.horizon != b.horizon)
        throw std::invalid_argument("outperformance_report: horizon mismatch");
    if (a.tails.size() != b.tails.size())
        throw std::invalid_argument("outperformance_report: tail set mismatch");
    OutperformanceReport rep;
    rep.eae = compare_series(a.eae, b.eae, tol);
    rep.outperforms = rep.eae.a_never_above;
    for (const auto& [idx, series] : a.tails) {
        auto it = b.tails.find(idx);
        if (it == b.tails.end())
            throw std::invalid_argument("outperformance_report: tail set mismatch");
        rep.tails[idx] = compare_series(series, it->second, tol);
        rep.outperforms = rep.outperforms && rep.tails[idx].a_never_above;
    }
    return rep;
}

namespace {

// Dense square matrix with an explicit log-scale so that powers of
// sub-stochastic matrices can be pushed far past the underflow threshold.
struct ScaledMatrix {
    int dim = 0;
    std::vector<double> v;  // row-major
    double log_scale = 0.0;

    double at(int i, int j) const { return v[static_cast<std::size_t>(i) * dim + j]; }
    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * dim + j]; }

    void square() {
        std::vector<double> out(v.size(), 0.0);
        for (int i = 0; i < dim; ++i) {
            for (int k = i; k < dim; ++k) {  // upper triangular
                const double m = at(i, k);
                if (m == 0.0) continue;
                for (int j = k; j < dim; ++j) {
                    out[static_cast<std::size_t>(i) * dim + j] += m * at(k, j);
                }
            }
        }
        v.swap(out);
        log_scale *= 2.0;
        double peak = 0.0;
        for (double x : v) peak = std::max(peak, x);
        if (peak > 0.0) {
            for (double& x : v) x /= peak;
            log_scale += std::log(peak);
        }
    }
};

// log of (weights . (M q)) + scale, with -inf mapped to a large negative value.
double log_weighted_mass(const ScaledMatrix& m, const std::vector<double>& q,
                         const std::vector<double>& w) {
    double total = 0.0;
    for (int i = 0; i < m.dim; ++i) {
        if (w[i] == 0.0) continue;
        double row = 0.0;
        for (int j = 0; j < m.dim; ++j) row += m.at(i, j) * q[j];
        total += w[i] * row;
    }
    if (total <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(total) + m.log_scale;
}

ScaledMatrix submatrix_of(const TransitionMatrix& m) {
    ScaledMatrix s;
    s.dim = m.L();
    s.v.assign(static_cast<std::size_t>(s.dim) * s.dim, 0.0);
    for (int i = 1; i <= m.L(); ++i)
        for (int j = 1; j <= m.L(); ++j) s.at(i - 1, j - 1) = m.at(i, j);
    return s;
}

}  // namespace

AsymptoticProbe asymptotic_order_probe(const TransitionMatrix& a,
                                       const TransitionMatrix& b,
                                       const LevelDistribution& q0,
                                       const std::vector<double>& error_vector,
                                       int tail_index, int max_exponent) {
    if (a.L() != b.L())
        throw std::invalid_argument("asymptotic_order_probe: dimension mismatch");
    if (q0.dim() != a.dim())
        throw std::invalid_argument("asymptotic_order_probe: distribution mismatch");
    const int L = a.L();
    if (tail_index < 1 || tail_index > L)
        throw std::domain_error("asymptotic_order_probe: tail index out of range");

    AsymptoticProbe probe;
    probe.rho_a = spectral_radius(a);
    probe.rho_b = spectral_radius(b);

    std::vector<double> qsub(L), errs(L), tail_w(L);
    for (int i = 1; i <= L; ++i) {
        qsub[i - 1] = q0.q[i];
        errs[i - 1] = error_vector[i];
        tail_w[i - 1] = (i >= tail_index) ? 1.0 : 0.0;
    }

    ScaledMatrix ma = submatrix_of(a);
    ScaledMatrix mb = submatrix_of(b);
    for (int k = 0; k <= max_exponent; ++k) {
        if (k > 0) {
            ma.square();
            mb.square();
        }
        ProbePoint pt;
        pt.t = 1ll << k;
        pt.log_eae_a = log_weighted_mass(ma, qsub, errs);
        pt.log_eae_b = log_weighted_mass(mb, qsub, errs);
        pt.log_tp_a = log_weighted_mass(ma, qsub, tail_w);
        pt.log_tp_b = log_weighted_mass(mb, qsub, tail_w);
        probe.points.push_back(pt);
    }

    // First probe from which both orderings hold strictly through the end.
    int suffix_ok_from = -1;
    for (int k = static_cast<int>(probe.points.size()) - 1; k >= 0; --k) {
        const auto& pt = probe.points[k];
        const bool strict = pt.log_eae_a < pt.log_eae_b && pt.log_tp_a < pt.log_tp_b;
        if (strict) suffix_ok_from = k;
        else break;
    }
    if (suffix_ok_from >= 0) {
        probe.found = true;
        probe.t_star = probe.points[suffix_ok_from].t;
    }
    return probe;
}

void write_trajectory_csv(const MetricSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "t,eae";
    for (const auto& [idx, _] : series.tails) out << ",tp_" << idx;
    out << "\n";
    char buf[64];
    for (int t = 0; t <= series.horizon; ++t) {
        out << t;
        std::snprintf(buf, sizeof(buf), "%.17g", series.eae[t]);
        out << ',' << buf;
        for (const auto& [idx, tp] : series.tails) {
            std::snprintf(buf, sizeof(buf), "%.17g", tp[t]);
            out << ',' << buf;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace levelea
