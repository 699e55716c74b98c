#include "tra/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tra::eigensolve {

namespace {

double sign_like(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Implicit-shift QL on (d, e); z accumulates rotations when not null, and
// row0 (when not null) carries only the first row of the rotation product,
// which is all Gauss weights need.  d ends holding the eigenvalues.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix* z,
                 std::vector<double>* row0 = nullptr) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    e.push_back(0.0);  // e[n-1] sentinel
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) + dd == dd) break;
            }
            if (m != l) {
                if (iter++ == 30)
                    throw std::runtime_error("eig_tridiag: QL failed to converge at index " +
                                             std::to_string(l));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + sign_like(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        for (int k = 0; k < n; ++k) {
                            double f2 = (*z)(k, i + 1);
                            (*z)(k, i + 1) = s * (*z)(k, i) + c * f2;
                            (*z)(k, i) = c * (*z)(k, i) - s * f2;
                        }
                    }
                    if (row0) {
                        double f2 = (*row0)[i + 1];
                        (*row0)[i + 1] = s * (*row0)[i] + c * f2;
                        (*row0)[i] = c * (*row0)[i] - s * f2;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    e.pop_back();
}

void sort_and_fix(EigResult& res, const Matrix* z) {
    const std::size_t n = res.values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return res.values[a] < res.values[b]; });
    std::vector<double> vals(n);
    for (std::size_t k = 0; k < n; ++k) vals[k] = res.values[order[k]];
    res.values = std::move(vals);
    if (z) {
        res.vectors.assign(n, std::vector<double>(n));
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t col = order[k];
            auto& v = res.vectors[k];
            for (std::size_t i = 0; i < n; ++i) v[i] = (*z)(i, col);
            // deterministic sign: largest-magnitude component positive
            std::size_t imax = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
            if (v[imax] < 0.0)
                for (double& x : v) x = -x;
        }
    }
}

double tridiag_residual(const SymTridiag& m, const EigResult& res) {
    const std::size_t n = m.size();
    double anorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(m.d[i]));
    for (std::size_t i = 0; i + 1 < n; ++i) anorm = std::max(anorm, std::abs(m.e[i]));
    if (anorm == 0.0) anorm = 1.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < res.vectors.size(); ++k) {
        const auto& v = res.vectors[k];
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double av = m.d[i] * v[i];
            if (i > 0) av += m.e[i - 1] * v[i - 1];
            if (i + 1 < n) av += m.e[i] * v[i + 1];
            double r = av - res.values[k] * v[i];
            r2 += r * r;
        }
        worst = std::max(worst, std::sqrt(r2) / anorm);
    }
    return worst;
}

// number of eigenvalues strictly below sigma (Sturm count via LDL^T)
int sturm_count(const SymTridiag& m, double sigma) {
    const std::size_t n = m.size();
    int count = 0;
    double q = m.d[0] - sigma;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        double denom = q;
        if (denom == 0.0) denom = 1e-300;
        q = m.d[i] - sigma - m.e[i - 1] * m.e[i - 1] / denom;
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace

EigResult eig_tridiag(const SymTridiag& m, bool want_vectors) {
    EigResult res;
    std::vector<double> d = m.d;
    std::vector<double> e = m.e;
    for (double v : d)
        if (!std::isfinite(v)) throw std::invalid_argument("eig_tridiag: non-finite entry");
    for (double v : e)
        if (!std::isfinite(v)) throw std::invalid_argument("eig_tridiag: non-finite entry");
    Matrix z;
    Matrix* zp = nullptr;
    if (want_vectors) {
        z = Matrix::identity(m.size());
        zp = &z;
    }
    ql_implicit(d, e, zp);
    res.values = std::move(d);
    sort_and_fix(res, zp);
    if (want_vectors) res.residual = tridiag_residual(m, res);
    return res;
}

EigResult eig_dense(const Matrix& m, bool want_vectors) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("eig_dense: empty matrix");
    if (m.symmetry_defect() > 1e-12)
        throw std::invalid_argument("eig_dense: matrix is not symmetric");

    // Householder reduction to tridiagonal form (tred2)
    Matrix a = m;
    std::vector<double> d(n), e(n);
    for (std::size_t ii = n - 1; ii >= 1; --ii) {
        std::size_t l = ii - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a(ii, k));
            if (scale == 0.0)
                e[ii] = a(ii, l);
            else {
                for (std::size_t k = 0; k <= l; ++k) {
                    a(ii, k) /= scale;
                    h += a(ii, k) * a(ii, k);
                }
                double f = a(ii, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[ii] = scale * g;
                h -= f * g;
                a(ii, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    a(j, ii) = a(ii, j) / h;
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += a(j, k) * a(ii, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += a(k, j) * a(ii, k);
                    e[j] = g / h;
                    f += e[j] * a(ii, j);
                }
                double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = a(ii, j);
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k <= j; ++k)
                        a(j, k) -= f * e[k] + g * a(ii, k);
                }
            }
        } else
            e[ii] = a(ii, l);
        d[ii] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t ii = 0; ii < n; ++ii) {
        if (want_vectors && d[ii] != 0.0) {
            for (std::size_t j = 0; j < ii; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k < ii; ++k) g += a(ii, k) * a(k, j);
                for (std::size_t k = 0; k < ii; ++k) a(k, j) -= g * a(k, ii);
            }
        }
        d[ii] = a(ii, ii);
        a(ii, ii) = 1.0;
        for (std::size_t j = 0; j < ii; ++j) a(j, ii) = a(ii, j) = 0.0;
    }

    std::vector<double> sub(n > 1 ? n - 1 : 0);
    for (std::size_t i = 1; i < n; ++i) sub[i - 1] = e[i];
    EigResult res;
    Matrix* zp = want_vectors ? &a : nullptr;
    ql_implicit(d, sub, zp);
    res.values = std::move(d);
    sort_and_fix(res, zp);
    if (want_vectors) {
        double anorm = std::max(m.max_abs(), 1e-300);
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            auto av = m.apply(res.vectors[k]);
            double r2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double r = av[i] - res.values[k] * res.vectors[k][i];
                r2 += r * r;
            }
            worst = std::max(worst, std::sqrt(r2) / anorm);
        }
        res.residual = worst;
    }
    return res;
}

Matrix cholesky(const Matrix& a) {
    const std::size_t n = a.size();
    Matrix l(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = a(j, j);
        for (std::size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
        if (s <= 0.0)
            throw std::runtime_error("cholesky: matrix not positive definite at pivot " +
                                     std::to_string(j));
        l(j, j) = std::sqrt(s);
        for (std::size_t i = j + 1; i < n; ++i) {
            double t = a(i, j);
            for (std::size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
            l(i, j) = t / l(j, j);
        }
    }
    return l;
}

Matrix cholesky_solve(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix l = cholesky(a);
    Matrix x(n);
    // forward/back substitution column by column
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = b(i, col);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
            y[i] = s / l(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x(k, col);
            x(ii, col) = s / l(ii, ii);
        }
    }
    return x;
}

EigResult eig_generalized(const Matrix& a, const Matrix& b, bool want_vectors) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("eig_generalized: dimension mismatch");
    Matrix l = cholesky(b);

    // C = L^{-1} A L^{-T}
    Matrix c(n);
    {
        // first W = L^{-1} A  (solve L W = A)
        Matrix w(n);
        for (std::size_t col = 0; col < n; ++col)
            for (std::size_t i = 0; i < n; ++i) {
                double s = a(i, col);
                for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * w(k, col);
                w(i, col) = s / l(i, i);
            }
        // then C = W L^{-T}: solve L C^T = W^T, i.e. rows of C via same substitution
        for (std::size_t row = 0; row < n; ++row)
            for (std::size_t i = 0; i < n; ++i) {
                double s = w(row, i);
                for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * c(row, k);
                c(row, i) = s / l(i, i);
            }
    }
    c.symmetrize();
    EigResult res = eig_dense(c, want_vectors);
    if (want_vectors) {
        // back-transform x = L^{-T} u; resulting vectors are B-orthonormal
        for (auto& v : res.vectors) {
            for (std::size_t ii = n; ii-- > 0;) {
                double s = v[ii];
                for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * v[k];
                v[ii] = s / l(ii, ii);
            }
        }
    }
    return res;
}

NodesFirstComp tridiag_nodes_first_components(const SymTridiag& m) {
    std::vector<double> d = m.d;
    std::vector<double> e = m.e;
    std::vector<double> row0(m.size(), 0.0);
    row0[0] = 1.0;
    ql_implicit(d, e, nullptr, &row0);
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    NodesFirstComp out;
    out.values.resize(d.size());
    out.first.resize(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        out.values[k] = d[order[k]];
        out.first[k] = row0[order[k]];
    }
    return out;
}

std::vector<double> eig_tridiag_lowest(const SymTridiag& m, int k) {
    const int n = static_cast<int>(m.size());
    k = std::min(k, n);
    // Gershgorin bounds
    double lo = m.d[0], hi = m.d[0];
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(m.e[i - 1]);
        if (i + 1 < n) r += std::abs(m.e[i]);
        lo = std::min(lo, m.d[i] - r);
        hi = std::max(hi, m.d[i] + r);
    }
    std::vector<double> out(k);
    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        // smallest sigma with count >= j+1
        for (int it = 0; it < 120 && b - a > 1e-13 * std::max(1.0, std::abs(a) + std::abs(b));
             ++it) {
            double mid = 0.5 * (a + b);
            if (sturm_count(m, mid) >= j + 1)
                b = mid;
            else
                a = mid;
        }
        out[j] = 0.5 * (a + b);
    }
    return out;
}

std::vector<double> tridiag_eigenvector(const SymTridiag& m, double eigenvalue) {
    const int n = static_cast<int>(m.size());
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    // shifted-tridiagonal solves; small perturbation keeps the factorization alive
    double shift = eigenvalue + 1e-12 * std::max(1.0, std::abs(eigenvalue));
    for (int pass = 0; pass < 4; ++pass) {
        std::vector<double> dl(n), du(n), dd(n), x(v);
        for (int i = 0; i < n; ++i) dd[i] = m.d[i] - shift;
        // Thomas algorithm with weak pivoting guard
        std::vector<double> c(n, 0.0);
        double denom = dd[0];
        if (std::abs(denom) < 1e-300) denom = 1e-300;
        c[0] = (n > 1) ? m.e[0] / denom : 0.0;
        x[0] = x[0] / denom;
        for (int i = 1; i < n; ++i) {
            double mden = dd[i] - m.e[i - 1] * c[i - 1];
            if (std::abs(mden) < 1e-300) mden = 1e-300;
            if (i + 1 < n) c[i] = m.e[i] / mden;
            x[i] = (x[i] - m.e[i - 1] * x[i - 1]) / mden;
        }
        for (int i = n - 2; i >= 0; --i) x[i] -= c[i] * x[i + 1];
        double norm = 0.0;
        for (double t : x) norm += t * t;
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) v[i] = x[i] / norm;
    }
    return v;
}

std::vector<double> det_scan(const std::function<SymTridiag(double)>& jmat, double e_lo,
                             double e_hi, int n_grid) {
    if (!(e_lo < e_hi)) throw std::invalid_argument("det_scan: requires e_lo < e_hi");
    n_grid = std::max(n_grid, 2);

    // determinant sign via the ratio recurrence r_k = d_k - e_{k-1}^2 / r_{k-1}
    auto det_sign = [&](double e) -> int {
        SymTridiag t = jmat(e);
        int sgn = 1;
        double r = t.d[0];
        if (r == 0.0) return 0;
        if (r < 0.0) sgn = -sgn;
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (r == 0.0) r = 1e-300;
            r = t.d[i] - t.e[i - 1] * t.e[i - 1] / r;
            if (r == 0.0) return 0;
            if (r < 0.0) sgn = -sgn;
        }
        return sgn;
    };

    std::vector<double> roots;
    double prev_e = e_lo;
    int prev_s = det_sign(e_lo);
    for (int i = 1; i <= n_grid; ++i) {
        double e = e_lo + (e_hi - e_lo) * i / n_grid;
        int s = det_sign(e);
        if (prev_s == 0) {
            roots.push_back(prev_e);
        } else if (s != 0 && s != prev_s) {
            double a = prev_e, b = e;
            while (b - a > 1e-10) {
                double mid = 0.5 * (a + b);
                int ms = det_sign(mid);
                if (ms == 0) {
                    a = b = mid;
                    break;
                }
                if (ms == prev_s)
                    a = mid;
                else
                    b = mid;
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_e = e;
        prev_s = s;
    }
    if (prev_s == 0) roots.push_back(prev_e);
    return roots;
}

}  // namespace tra::eigensolve
