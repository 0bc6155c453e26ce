#include "rmt/eigen.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace rmt {

namespace {

constexpr double kEps = DBL_EPSILON;

// Householder reduction of a symmetric matrix to tridiagonal form, no
// transform accumulation.  Works on full storage so the inner loops stay
// contiguous; a is destroyed.
void householder_tridiag(RealMatrix& a, std::vector<double>& d, std::vector<double>& e) {
    const int n = a.order();
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::fabs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                // p = A u / h, stored in e[0..l]
                f = 0.0;
                const double* ui = &a(i, 0);
                for (int j = 0; j <= l; ++j) {
                    const double* rowj = &a(j, 0);
                    double s = 0.0;
                    for (int k = 0; k <= l; ++k) s += rowj[k] * ui[k];
                    e[j] = s / h;
                    f += e[j] * ui[j];
                }
                const double hh = f / (h + h);
                // q = p - (u^t p / 2h) u; rank-two update A -= u q^t + q u^t
                for (int j = 0; j <= l; ++j) e[j] -= hh * ui[j];
                for (int j = 0; j <= l; ++j) {
                    const double fj = ui[j];
                    const double gj = e[j];
                    double* rowj = &a(j, 0);
                    for (int k = 0; k <= l; ++k) rowj[k] -= fj * e[k] + gj * ui[k];
                }
            }
        } else {
            e[i] = a(i, l);
        }
        d[i] = h;
    }
    for (int i = 0; i < n; ++i) d[i] = a(i, i);
}

// Implicit-shift QL on (d, e); e[i] couples d[i] and d[i+1].  Eigenvalues
// land in d, unsorted.  budget counts total inner sweeps.
void ql_implicit(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    long budget = 30L * n;
    e.resize(n, 0.0);  // sentinel slot
    for (int l = 0; l < n; ++l) {
        for (;;) {
            int m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= kEps * dd) break;
            }
            if (m == l) break;
            if (--budget < 0)
                throw ConvergenceError("symmetric QL: sweep budget exhausted");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
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
                if (i == l) {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                }
            }
        }
    }
}

// EISPACK-style balancing by radix-power diagonal similarity.
void balance(RealMatrix& a) {
    const int n = a.order();
    const double radix = 2.0;
    const double sq = radix * radix;
    bool last = false;
    while (!last) {
        last = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::fabs(a(j, i));
                r += std::fabs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sq;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sq;
            }
            if ((c + r) / f < 0.95 * s) {
                last = false;
                g = 1.0 / f;
                for (int j = 0; j < n; ++j) a(i, j) *= g;
                for (int j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Reduction to upper Hessenberg form by stabilized elementary similarity
// transforms.
void hessenberg(RealMatrix& a) {
    const int n = a.order();
    for (int m = 1; m < n - 1; ++m) {
        double x = 0.0;
        int i = m;
        for (int j = m; j < n; ++j) {
            if (std::fabs(a(j, m - 1)) > std::fabs(x)) {
                x = a(j, m - 1);
                i = j;
            }
        }
        if (i != m) {
            for (int j = m - 1; j < n; ++j) std::swap(a(i, j), a(m, j));
            for (int j = 0; j < n; ++j) std::swap(a(j, i), a(j, m));
        }
        if (x != 0.0) {
            for (i = m + 1; i < n; ++i) {
                double y = a(i, m - 1);
                if (y != 0.0) {
                    y /= x;
                    a(i, m - 1) = y;
                    for (int j = m; j < n; ++j) a(i, j) -= y * a(m, j);
                    for (int j = 0; j < n; ++j) a(j, m) += y * a(j, i);
                }
            }
        }
    }
    // discard the multipliers below the subdiagonal
    for (int j = 0; j < n - 2; ++j)
        for (int i = j + 2; i < n; ++i) a(i, j) = 0.0;
}

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
// Exceptional shifts after 10 and 20 stalled sweeps on a block; a global
// budget of 30 n sweeps guards against non-convergence.
void hqr(RealMatrix& a, std::vector<double>& wr, std::vector<double>& wi) {
    const int n = a.order();
    wr.assign(n, 0.0);
    wi.assign(n, 0.0);
    long budget = 30L * n;

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(a(i, j));
    if (anorm == 0.0) return;  // zero matrix

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::fabs(a(l, l - 1)) <= kEps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                --nn;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + std::copysign(z, p);
                        wr[nn - 1] = wr[nn] = x + z;
                        if (z != 0.0) wr[nn] = x - w / z;
                        wi[nn - 1] = wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = wr[nn] = x + p;
                        wi[nn] = z;
                        wi[nn - 1] = -z;
                    }
                    nn -= 2;
                } else {
                    if (--budget < 0)
                        throw ConvergenceError("hqr: sweep budget exhausted");
                    if (its == 10 || its == 20) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        double s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (m = nn - 2; m >= l; --m) {
                        z = a(m, m);
                        double rr = x - z;
                        double ss = y - z;
                        p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - rr - ss;
                        r = a(m + 2, m + 1);
                        double sc = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= sc;
                        q /= sc;
                        r /= sc;
                        if (m == l) break;
                        const double u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                        const double v = std::fabs(p) * (std::fabs(a(m - 1, m - 1)) +
                                                         std::fabs(z) + std::fabs(a(m + 1, m + 1)));
                        if (u <= kEps * v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
                            x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            p = a(k, j) + q * a(k + 1, j);
                            if (k != nn - 1) {
                                p += r * a(k + 2, j);
                                a(k + 2, j) -= p * z;
                            }
                            a(k + 1, j) -= p * y;
                            a(k, j) -= p * x;
                        }
                        const int mmin = (nn < k + 3) ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) {
                            p = x * a(i, k) + y * a(i, k + 1);
                            if (k != nn - 1) {
                                p += z * a(i, k + 2);
                                a(i, k + 2) -= p * r;
                            }
                            a(i, k + 1) -= p * q;
                            a(i, k) -= p;
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
}

}  // namespace

Spectrum eig_symmetric(const RealMatrix& m, Family family) {
    if (!m.is_symmetric())
        throw std::invalid_argument("eig_symmetric: matrix is not symmetric");
    RealMatrix work = m;
    std::vector<double> d, e;
    householder_tridiag(work, d, e);
    // householder_tridiag emits e[i] coupling i-1 and i; shift to off[i] for (i, i+1)
    std::vector<double> off(d.size() > 1 ? d.size() - 1 : 0);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) off[i] = e[i + 1];
    std::vector<double> vals = eig_symmetric_tridiagonal(std::move(d), std::move(off));
    Spectrum s;
    s.family = family;
    s.order = m.order();
    s.values.reserve(vals.size());
    for (double v : vals) s.values.emplace_back(v, 0.0);
    return s;
}

std::vector<double> eig_symmetric_tridiagonal(std::vector<double> diag,
                                              std::vector<double> off) {
    if (off.size() + 1 != diag.size() && !(diag.size() == 1 && off.empty()))
        throw std::invalid_argument("tridiagonal sizes mismatch");
    ql_implicit(diag, off);
    std::sort(diag.begin(), diag.end());
    return diag;
}

std::vector<double> eig_tridiagonal_matched(const TridiagonalReal& t) {
    const int n = t.order();
    std::vector<double> off(n > 1 ? n - 1 : 0);
    for (int k = 0; k + 1 < n; ++k) {
        const double prod = t.upper[k] * t.lower[k];
        if (!(prod > 0.0))
            throw std::invalid_argument("eig_tridiagonal_matched: needs u_k l_k > 0");
        off[k] = std::sqrt(prod);
    }
    return eig_symmetric_tridiagonal(t.diag, std::move(off));
}

Spectrum eig_general(const RealMatrix& m, Family family) {
    RealMatrix work = m;
    const double snap = kImagSnapRel * m.frobenius_norm();
    balance(work);
    hessenberg(work);
    std::vector<double> wr, wi;
    hqr(work, wr, wi);
    Spectrum s;
    s.family = family;
    s.order = m.order();
    s.values.reserve(wr.size());
    for (std::size_t i = 0; i < wr.size(); ++i) {
        double im = wi[i];
        if (std::fabs(im) <= snap) im = 0.0;
        s.values.emplace_back(wr[i], im);
    }
    return s;
}

Spectrum circulant_eigs_dft(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    Spectrum s;
    s.family = Family::C;
    s.order = n;
    s.values.resize(n);
    const double w = 2.0 * 3.14159265358979323846 / n;
    for (int m = 0; m < n; ++m) {
        std::complex<double> acc(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
            const double phi = w * m * k;
            acc += x[k] * std::complex<double>(std::cos(phi), std::sin(phi));
        }
        s.values[m] = acc;
    }
    return s;
}

Spectrum eig_2x2(TwoByTwo family, double a, double b, double c) {
    Spectrum s;
    s.order = 2;
    double e1, e2;
    if (family == TwoByTwo::R1) {
        s.family = Family::R1_2x2;
        const double root = std::hypot(a - c, 2.0 * b);
        e1 = 0.5 * ((a + c) - root);
        e2 = 0.5 * ((a + c) + root);
    } else {
        s.family = Family::R2_2x2;
        const double root = std::hypot(b, c);
        e1 = a - root;
        e2 = a + root;
    }
    s.values = {{e1, 0.0}, {e2, 0.0}};
    return s;
}

double spacing_2x2(TwoByTwo family, double a, double b, double c) {
    if (family == TwoByTwo::R1) return std::hypot(a - c, 2.0 * b);
    return 2.0 * std::hypot(b, c);
}

}  // namespace rmt
