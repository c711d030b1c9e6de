#include "majorize/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "majorize/errors.hpp"

namespace majorize {

void SparseMatrix::push_column(const std::vector<std::pair<std::size_t, double>>& entries) {
    for (const auto& [r, v] : entries) {
        if (r >= rows) throw DimensionError("sparse column row out of range");
        if (v == 0.0) continue;
        row_index.push_back(r);
        value.push_back(v);
    }
    col_start.push_back(row_index.size());
}

namespace {

class Tableau {
public:
    Tableau(const SparseMatrix& A, std::vector<double> b, const SimplexOptions& opt)
        : A_(A), b_(std::move(b)), opt_(opt), M_(A.rows), N_(A.cols()) {
        sign_.assign(M_, 1.0);
        for (std::size_t r = 0; r < M_; ++r)
            if (b_[r] < 0.0) {
                sign_[r] = -1.0;
                b_[r] = -b_[r];
            }
        basis_.resize(M_);
        is_basic_.assign(N_ + M_, false);
        for (std::size_t r = 0; r < M_; ++r) {
            basis_[r] = N_ + r;
            is_basic_[N_ + r] = true;
        }
        binv_.assign(M_ * M_, 0.0);
        for (std::size_t r = 0; r < M_; ++r) binv_[r * M_ + r] = 1.0;
        xb_ = b_;
    }

    Phase1Result run() {
        Phase1Result res;
        std::vector<double> y(M_), u(M_);
        std::size_t since_refactor = 0, stall = 0;
        double best_obj = objective();
        while (res.pivots < opt_.max_pivots) {
            // Dantzig pricing, with Bland's rule while the objective is stuck.
            const bool bland = opt_.rule == PivotRule::Bland || stall >= kStallLimit;
            compute_duals(y);
            const std::size_t q = choose_entering(y, bland);
            if (q == npos) {
                res.converged = true;
                break;
            }
            column_image(q, u);
            const std::size_t r = choose_leaving(u, bland);
            if (r == npos) {
                // Only tiny pivots left: rebuild the inverse and retry once.
                if (since_refactor == 0) break;
                refactor();
                since_refactor = 0;
                continue;
            }
            pivot(q, r, u);
            ++res.pivots;
            if (++since_refactor >= opt_.refactor_every) {
                refactor();
                since_refactor = 0;
            }
            const double obj = objective();
            if (obj < best_obj - 1e-12 * std::max(1.0, best_obj)) {
                best_obj = obj;
                stall = 0;
            } else {
                ++stall;
            }
        }
        refactor();
        res.x.assign(N_, 0.0);
        res.infeasibility = 0.0;
        for (std::size_t r = 0; r < M_; ++r) {
            if (basis_[r] < N_) {
                res.x[basis_[r]] = std::max(0.0, xb_[r]);
                res.infeasibility += std::max(0.0, -xb_[r]);
            } else {
                res.infeasibility += std::abs(xb_[r]);
            }
        }
        return res;
    }

private:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    static constexpr std::size_t kStallLimit = 64;
    static constexpr double kFeasTol = 1e-11;

    double a(std::size_t k) const { return A_.value[k] * sign_[A_.row_index[k]]; }

    double objective() const {
        double s = 0.0;
        for (std::size_t r = 0; r < M_; ++r)
            if (basis_[r] >= N_) s += std::max(0.0, xb_[r]);
        return s;
    }

    void compute_duals(std::vector<double>& y) const {
        std::fill(y.begin(), y.end(), 0.0);
        for (std::size_t r = 0; r < M_; ++r) {
            if (basis_[r] < N_) continue;
            const double* row = &binv_[r * M_];
            for (std::size_t i = 0; i < M_; ++i) y[i] += row[i];
        }
    }

    double reduced_cost(std::size_t j, const std::vector<double>& y) const {
        double s = 0.0;
        for (std::size_t k = A_.col_start[j]; k < A_.col_start[j + 1]; ++k) s += y[A_.row_index[k]] * a(k);
        return -s;
    }

    std::size_t choose_entering(const std::vector<double>& y, bool bland) const {
        std::size_t best = npos;
        double best_d = -opt_.reduced_cost_tol;
        for (std::size_t j = 0; j < N_; ++j) {
            if (is_basic_[j]) continue;
            const double d = reduced_cost(j, y);
            if (d < best_d) {
                if (bland) return j;
                best = j;
                best_d = d;
            }
        }
        return best;
    }

    void column_image(std::size_t q, std::vector<double>& u) const {
        std::fill(u.begin(), u.end(), 0.0);
        for (std::size_t k = A_.col_start[q]; k < A_.col_start[q + 1]; ++k) {
            const std::size_t i = A_.row_index[k];
            const double v = a(k);
            for (std::size_t r = 0; r < M_; ++r) u[r] += binv_[r * M_ + i] * v;
        }
    }

    // Harris two-pass ratio test. The first pass bounds the step with a small
    // slack, the second takes the largest pivot inside that bound; Bland mode
    // breaks ties by variable index instead.
    std::size_t choose_leaving(const std::vector<double>& u, bool bland) const {
        double bound = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < M_; ++r)
            if (u[r] > opt_.pivot_tol) bound = std::min(bound, (std::max(0.0, xb_[r]) + kFeasTol) / u[r]);
        std::size_t best = npos;
        for (std::size_t r = 0; r < M_; ++r) {
            if (u[r] <= opt_.pivot_tol || std::max(0.0, xb_[r]) / u[r] > bound) continue;
            if (best == npos) {
                best = r;
            } else if (bland) {
                if (basis_[r] < basis_[best]) best = r;
            } else if (u[r] > u[best]) {
                best = r;
            }
        }
        return best;
    }

    void pivot(std::size_t q, std::size_t r, const std::vector<double>& u) {
        const double piv = u[r];
        const double theta = std::max(0.0, xb_[r]) / piv;
        for (std::size_t i = 0; i < M_; ++i) xb_[i] = std::max(0.0, xb_[i] - theta * u[i]);
        xb_[r] = theta;
        double* prow = &binv_[r * M_];
        for (std::size_t i = 0; i < M_; ++i) prow[i] /= piv;
        for (std::size_t i = 0; i < M_; ++i) {
            if (i == r || u[i] == 0.0) continue;
            double* row = &binv_[i * M_];
            const double f = u[i];
            for (std::size_t c = 0; c < M_; ++c) row[c] -= f * prow[c];
        }
        is_basic_[basis_[r]] = false;
        basis_[r] = q;
        is_basic_[q] = true;
    }

    // Rebuilds the basis inverse from scratch by Gauss-Jordan elimination.
    void refactor() {
        std::vector<double> B(M_ * M_, 0.0);
        for (std::size_t r = 0; r < M_; ++r) {
            const std::size_t j = basis_[r];
            if (j >= N_) {
                B[(j - N_) * M_ + r] = 1.0;
                continue;
            }
            for (std::size_t k = A_.col_start[j]; k < A_.col_start[j + 1]; ++k)
                B[A_.row_index[k] * M_ + r] = a(k);
        }
        std::vector<double> inv(M_ * M_, 0.0);
        for (std::size_t r = 0; r < M_; ++r) inv[r * M_ + r] = 1.0;
        for (std::size_t c = 0; c < M_; ++c) {
            std::size_t p = c;
            for (std::size_t r = c + 1; r < M_; ++r)
                if (std::abs(B[r * M_ + c]) > std::abs(B[p * M_ + c])) p = r;
            if (std::abs(B[p * M_ + c]) < 1e-300) return;  // keep the product-form inverse
            if (p != c)
                for (std::size_t k = 0; k < M_; ++k) {
                    std::swap(B[p * M_ + k], B[c * M_ + k]);
                    std::swap(inv[p * M_ + k], inv[c * M_ + k]);
                }
            const double d = B[c * M_ + c];
            for (std::size_t k = 0; k < M_; ++k) {
                B[c * M_ + k] /= d;
                inv[c * M_ + k] /= d;
            }
            for (std::size_t r = 0; r < M_; ++r) {
                if (r == c) continue;
                const double f = B[r * M_ + c];
                if (f == 0.0) continue;
                for (std::size_t k = 0; k < M_; ++k) {
                    B[r * M_ + k] -= f * B[c * M_ + k];
                    inv[r * M_ + k] -= f * inv[c * M_ + k];
                }
            }
        }
        binv_ = std::move(inv);
        for (std::size_t r = 0; r < M_; ++r) {
            double s = 0.0;
            for (std::size_t i = 0; i < M_; ++i) s += binv_[r * M_ + i] * b_[i];
            xb_[r] = s;
        }
    }

    const SparseMatrix& A_;
    std::vector<double> b_;
    SimplexOptions opt_;
    std::size_t M_, N_;
    std::vector<double> sign_;
    std::vector<std::size_t> basis_;
    std::vector<bool> is_basic_;
    std::vector<double> binv_;
    std::vector<double> xb_;
};

}  // namespace

Phase1Result solve_phase1(const SparseMatrix& A, std::vector<double> b, const SimplexOptions& opt) {
    if (b.size() != A.rows) throw DimensionError("rhs length differs from row count");
    for (double v : b)
        if (!std::isfinite(v)) throw DomainError("non-finite rhs");
    return Tableau(A, std::move(b), opt).run();
}

}  // namespace majorize
