#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tra {

// Real symmetric tridiagonal matrix: diagonal d[0..n), off-diagonal e[0..n-1).
struct SymTridiag {
    std::vector<double> d;
    std::vector<double> e;

    SymTridiag() = default;
    explicit SymTridiag(std::size_t n) : d(n, 0.0), e(n > 0 ? n - 1 : 0, 0.0) {}
    SymTridiag(std::vector<double> diag, std::vector<double> off)
        : d(std::move(diag)), e(std::move(off)) {
        if (d.empty() || e.size() + 1 != d.size())
            throw std::invalid_argument("SymTridiag: off-diagonal must have size n-1");
    }

    std::size_t size() const { return d.size(); }
};

// Dense real square matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix from_tridiag(const SymTridiag& t) {
        Matrix m(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            m(i, i) = t.d[i];
            if (i + 1 < t.size()) m(i, i + 1) = m(i + 1, i) = t.e[i];
        }
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    // max |A_ij - A_ji| / max |A_ij|; 0 for the zero matrix
    double symmetry_defect() const {
        double d = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                d = std::max(d, std::abs((*this)(i, j) - (*this)(j, i)));
        double m = max_abs();
        return m > 0.0 ? d / m : 0.0;
    }

    void symmetrize() {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j) {
                double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
                (*this)(i, j) = (*this)(j, i) = v;
            }
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Matrix& operator*=(double s) {
        for (double& v : a_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.check_same(b);
        std::size_t n = a.n_;
        Matrix c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

  private:
    void check_same(const Matrix& o) const {
        if (n_ != o.n_) throw std::invalid_argument("Matrix: dimension mismatch");
    }

    std::size_t n_ = 0;
    std::vector<double> a_;
};

}  // namespace tra
