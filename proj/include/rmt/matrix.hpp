#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rmt {

// Dense square real matrix, row-major.
class RealMatrix {
public:
    RealMatrix() = default;
    explicit RealMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
        if (n < 1) throw std::invalid_argument("matrix order must be >= 1");
    }

    int order() const { return n_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : a_) s += v * v;
        return std::sqrt(s);
    }

    bool is_symmetric() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    RealMatrix transpose() const {
        RealMatrix t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // this * this^t
    RealMatrix times_transpose() const {
        const int n = n_;
        RealMatrix p(n);
        for (int i = 0; i < n; ++i) {
            const double* ri = &a_[static_cast<std::size_t>(i) * n];
            for (int j = i; j < n; ++j) {
                const double* rj = &a_[static_cast<std::size_t>(j) * n];
                double s = 0.0;
                for (int k = 0; k < n; ++k) s += ri[k] * rj[k];
                p(i, j) = s;
                p(j, i) = s;
            }
        }
        return p;
    }

    bool operator==(const RealMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

private:
    int n_ = 0;
    std::vector<double> a_;
};

// Banded storage for tridiagonal matrices; diag has n entries, upper/lower
// have n-1.  Used as a fast path for large symmetric/pseudo-symmetric cases.
struct TridiagonalReal {
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> lower;

    int order() const { return static_cast<int>(diag.size()); }

    RealMatrix dense() const {
        const int n = order();
        RealMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = diag[i];
        for (int i = 0; i + 1 < n; ++i) {
            m(i, i + 1) = upper[i];
            m(i + 1, i) = lower[i];
        }
        return m;
    }
};

}  // namespace rmt
