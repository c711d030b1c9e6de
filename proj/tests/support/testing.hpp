#pragma once

// Random generators and brute-force oracles shared by the test suites.
// Oracles use plain pow/log loops and never the library's log-sum-exp path.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include "majorize/experiment.hpp"

namespace testing_support {

using majorize::Experiment;
using majorize::IndexSet;

using Rng = std::mt19937_64;
using Matrix = std::vector<std::vector<double>>;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return uniform(rng) < p; }

// Probability vector with entries zeroed with probability zero_p (at least one kept).
inline std::vector<double> random_distribution(Rng& rng, std::size_t n, double zero_p = 0.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(rng, 0.05, 1.0);
    for (auto& x : v)
        if (coin(rng, zero_p)) x = 0.0;
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[pick(rng, 0, n - 1)] = 1.0;
    double s = 0.0;
    for (double x : v) s += x;
    for (auto& x : v) x /= s;
    return v;
}

inline void normalize_columns(Matrix& cols) {
    for (auto& c : cols) {
        double s = 0.0;
        for (double x : c) s += x;
        if (s > 0)
            for (auto& x : c) x /= s;
    }
}

// Columns with a guaranteed all-positive first row; other entries zero with prob zero_p.
inline Matrix random_minimal_columns(Rng& rng, std::size_t d, std::size_t n, double zero_p, bool unit) {
    Matrix cols(d, std::vector<double>(n));
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < n; ++i)
            cols[k][i] = (i > 0 && coin(rng, zero_p)) ? 0.0 : uniform(rng, 0.05, 1.0);
    if (unit) normalize_columns(cols);
    return cols;
}

// Same, with supp p^(k) inside supp p^(d) for every k.
inline Matrix random_dominating_columns(Rng& rng, std::size_t d, std::size_t n, double zero_p, bool unit) {
    Matrix cols = random_minimal_columns(rng, d, n, zero_p, false);
    for (std::size_t i = 0; i < n; ++i)
        if (cols[d - 1][i] == 0.0)
            for (std::size_t k = 0; k + 1 < d; ++k) cols[k][i] = 0.0;
    if (unit) normalize_columns(cols);
    return cols;
}

inline Experiment random_minimal(Rng& rng, std::size_t d, std::size_t n, double zero_p = 0.3, bool unit = true) {
    return Experiment::from_columns(random_minimal_columns(rng, d, n, zero_p, unit));
}

inline Experiment random_dominating(Rng& rng, std::size_t d, std::size_t n, double zero_p = 0.3, bool unit = true) {
    return Experiment::from_columns(random_dominating_columns(rng, d, n, zero_p, unit));
}

// m x n column-stochastic matrix.
inline Matrix random_stochastic(Rng& rng, std::size_t m, std::size_t n, double zero_p = 0.0) {
    Matrix T(m, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        auto col = random_distribution(rng, m, zero_p);
        for (std::size_t i = 0; i < m; ++i) T[i][j] = col[i];
    }
    return T;
}

// T P computed with a naive triple loop.
inline Experiment apply(const Matrix& T, const Experiment& P) {
    const std::size_t m = T.size(), d = P.cols();
    Matrix cols(d, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < P.rows(); ++j)
            for (std::size_t k = 0; k < d; ++k) cols[k][i] += T[i][j] * P(j, k);
    return Experiment::from_columns(cols, P.labels());
}

inline std::vector<double> apply(const Matrix& T, const std::vector<double>& v) {
    std::vector<double> out(T.size(), 0.0);
    for (std::size_t i = 0; i < T.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += T[i][j] * v[j];
    return out;
}

// Random point of A+ with random support pattern, and a random character.
inline std::vector<double> random_a_plus(Rng& rng, std::size_t d) {
    std::vector<double> a(d);
    for (auto& x : a) x = coin(rng, 0.3) ? 0.0 : uniform(rng, 0.05, 1.0);
    if (std::all_of(a.begin(), a.end(), [](double x) { return x == 0.0; })) a[pick(rng, 0, d - 1)] = 1.0;
    double s = 0.0;
    for (double x : a) s += x;
    for (auto& x : a) x /= s;
    return a;
}

inline IndexSet random_character(Rng& rng, const std::vector<double>& alpha) {
    IndexSet C;
    for (std::size_t k = 0; k < alpha.size(); ++k)
        if (alpha[k] > 0.0 || coin(rng, 0.4)) C.push_back(k);
    return C;
}

// ---- oracles -------------------------------------------------------------

inline double oracle_phi(const Experiment& P, const std::vector<double>& alpha, const IndexSet& C) {
    double s = 0.0;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        bool inside = true;
        for (auto c : C) inside = inside && P(i, c) > 0.0;
        if (!inside) continue;
        double t = 1.0;
        for (std::size_t k = 0; k < alpha.size(); ++k)
            if (alpha[k] != 0.0) t *= std::pow(P(i, k), alpha[k]);
        s += t;
    }
    return s;
}

inline double oracle_phi_dc(const Experiment& P, double alpha, std::size_t c) {
    const std::size_t d = P.cols() - 1;
    double s = 0.0;
    for (std::size_t i = 0; i < P.rows(); ++i)
        if (P(i, c) > 0.0) s += std::pow(P(i, c), alpha) * std::pow(P(i, d), 1.0 - alpha);
    return s;
}

// Direct case table, no log-sum-exp.
inline double oracle_renyi(const std::vector<double>& p, const std::vector<double>& q, double a) {
    const double inf = std::numeric_limits<double>::infinity();
    bool inside = true, overlap = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0 && q[i] == 0) inside = false;
        if (p[i] > 0 && q[i] > 0) overlap = true;
    }
    if (a < 1 && !overlap) return inf;
    if (a >= 1 && !inside) return inf;
    double s = 0.0;
    if (a == 0) {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > 0 && q[i] > 0) s += q[i];
        return -std::log(s);
    }
    if (a == 1) {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > 0) s += p[i] * std::log(p[i] / q[i]);
        return s;
    }
    if (std::isinf(a)) {
        double m = -inf;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > 0) m = std::max(m, std::log(p[i] / q[i]));
        return m;
    }
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0 && q[i] > 0) s += std::pow(p[i], a) * std::pow(q[i], 1 - a);
    return std::log(s) / (a - 1);
}

// Lorenz curves compared directly.
inline bool oracle_lorenz(std::vector<double> p, std::vector<double> q, double tol = 1e-9) {
    std::sort(p.rbegin(), p.rend());
    std::sort(q.rbegin(), q.rend());
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        a += p[i];
        b += q[i];
        if (a + tol < b) return false;
    }
    return true;
}

inline std::vector<double> kron(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    for (double x : a)
        for (double y : b) out.push_back(x * y);
    return out;
}

inline bool rel_close(double a, double b, double rel) {
    if (a == b) return true;
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace testing_support
