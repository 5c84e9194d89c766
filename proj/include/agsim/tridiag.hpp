#pragma once

// Constant-coefficient symmetric tridiagonal solver (Thomas with precomputed
// elimination factors), plus the cyclic variant via Sherman-Morrison.

#include <Eigen/Dense>

#include "agsim/errors.hpp"

namespace agsim {

class TridiagSolver {
public:
    TridiagSolver() = default;

    /// System with `diag` on the diagonal and `off` on both off-diagonals.
    TridiagSolver(int n, double diag, double off, bool cyclic) { reset(n, diag, off, cyclic); }

    void reset(int n, double diag, double off, bool cyclic) {
        n_ = n;
        off_ = off;
        cyclic_ = cyclic && n > 2;
        identity_ = (off == 0.0) && (diag == 1.0);
        if (identity_) return;
        double d = diag;
        double corner = 0.0;
        if (cyclic_) {
            // T_cyclic = T1 + u v^T with u = (g,0,...,off), v = (1,0,...,off/g).
            gamma_ = -diag;
            d = diag; // T1 shares diag except at the two ends, handled below
            corner = off;
        }
        cfac_.resize(n_);
        inv_.resize(n_);
        auto diag_at = [&](int i) {
            if (!cyclic_) return d;
            if (i == 0) return d - gamma_;
            if (i == n_ - 1) return d - corner * corner / gamma_;
            return d;
        };
        double denom = diag_at(0);
        inv_[0] = 1.0 / denom;
        cfac_[0] = off_ * inv_[0];
        for (int i = 1; i < n_; ++i) {
            denom = diag_at(i) - off_ * cfac_[i - 1];
            if (denom == 0.0) throw accuracy_error("singular tridiagonal system");
            inv_[i] = 1.0 / denom;
            cfac_[i] = off_ * inv_[i];
        }
        if (cyclic_) {
            Eigen::VectorXd u = Eigen::VectorXd::Zero(n_);
            u(0) = gamma_;
            u(n_ - 1) = corner;
            z_ = u;
            solve_core(z_);
            vz_ = 1.0 + z_(0) + (corner / gamma_) * z_(n_ - 1);
        }
    }

    int size() const { return n_; }
    bool is_identity() const { return identity_; }

    /// Solves A x = b in place; Vec is any Eigen dense column-indexable vector.
    template <typename Vec>
    void solve_in_place(Vec& b) const {
        if (identity_) return;
        solve_core(b);
        if (cyclic_) {
            const auto vb = b(0) + (off_ / gamma_) * b(n_ - 1);
            const auto scale = vb / vz_;
            for (int i = 0; i < n_; ++i) b(i) -= scale * z_(i);
        }
    }

    /// Column-wise solve for a dense matrix.
    template <typename Mat>
    void solve_columns(Mat& m) const {
        if (identity_) return;
        for (int c = 0; c < m.cols(); ++c) {
            auto col = m.col(c);
            solve_in_place(col);
        }
    }

private:
    template <typename Vec>
    void solve_core(Vec& b) const {
        b(0) *= inv_[0];
        for (int i = 1; i < n_; ++i) b(i) = (b(i) - off_ * b(i - 1)) * inv_[i];
        for (int i = n_ - 2; i >= 0; --i) b(i) -= cfac_[i] * b(i + 1);
    }

    int n_ = 0;
    double off_ = 0.0;
    double gamma_ = 0.0;
    double vz_ = 1.0;
    bool cyclic_ = false;
    bool identity_ = true;
    std::vector<double> cfac_;
    std::vector<double> inv_;
    Eigen::VectorXd z_;
};

} // namespace agsim
