#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "koszul/matrix.hpp"
#include "koszul/parallel.hpp"
#include "koszul/scalar.hpp"

// Exact dense kernels.  The hot loops (row updates in elimination, matrix
// multiplication, Smith reduction passes) are OpenMP-parallel; pivot choice
// stays serial so results are bit-identical at any thread count.  A plain
// serial implementation lives in linalg_serial.hpp and the test suite checks
// the two against each other.
namespace koszul::linalg {

template <class F>
using Elt = typename F::Elt;

// Dual (Fredholm) certificates of unsolvability live over the fraction field.
template <class F>
using Dual = std::conditional_t<F::is_integers, BigRat, typename F::Elt>;

template <class F>
Mat<Elt<F>> identity(const F& f, int n) {
    Mat<Elt<F>> m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

template <class F>
Mat<Elt<F>> make(const F& f, int r, int c, const std::vector<long long>& vals) {
    if (static_cast<int>(vals.size()) != r * c) throw input_error("make: entry count mismatch");
    Mat<Elt<F>> m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = f.from_int(vals[static_cast<std::size_t>(i) * c + j]);
    return m;
}

template <class F>
bool is_zero(const F& f, const Mat<Elt<F>>& m) {
    for (const auto& e : m.a)
        if (!f.is_zero(e)) return false;
    return true;
}

template <class F>
Mat<Elt<F>> add(const F& f, const Mat<Elt<F>>& x, const Mat<Elt<F>>& y) {
    if (!x.same_shape(y)) throw input_error("add: shape mismatch");
    Mat<Elt<F>> z(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = f.add(x.a[i], y.a[i]);
    return z;
}

template <class F>
Mat<Elt<F>> sub(const F& f, const Mat<Elt<F>>& x, const Mat<Elt<F>>& y) {
    if (!x.same_shape(y)) throw input_error("sub: shape mismatch");
    Mat<Elt<F>> z(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = f.sub(x.a[i], y.a[i]);
    return z;
}

template <class F>
Mat<Elt<F>> neg(const F& f, const Mat<Elt<F>>& x) {
    Mat<Elt<F>> z(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = f.neg(x.a[i]);
    return z;
}

template <class F>
Mat<Elt<F>> scale(const F& f, const Elt<F>& c, const Mat<Elt<F>>& x) {
    Mat<Elt<F>> z(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = f.mul(c, x.a[i]);
    return z;
}

template <class F>
Mat<Elt<F>> mul(const F& f, const Mat<Elt<F>>& x, const Mat<Elt<F>>& y) {
    if (x.cols != y.rows) throw input_error("mul: inner dimension mismatch");
    Mat<Elt<F>> z(x.rows, y.cols);
    par_for(x.rows, [&](std::int64_t r) {
        for (int k = 0; k < x.cols; ++k) {
            const Elt<F>& xv = x(static_cast<int>(r), k);
            if (f.is_zero(xv)) continue;
            for (int c = 0; c < y.cols; ++c)
                z(static_cast<int>(r), c) = f.add(z(static_cast<int>(r), c), f.mul(xv, y(k, c)));
        }
    });
    return z;
}

// ---------------------------------------------------------------------------
// Field elimination (Gauss-Jordan with a row-operation transcript T, T*A = R).

template <class F>
struct Echelon {
    Mat<Elt<F>> R;
    Mat<Elt<F>> T;
    std::vector<int> pivot_cols;
    int rank = 0;
};

template <class F>
Echelon<F> rref(const F& f, const Mat<Elt<F>>& a) {
    static_assert(F::is_field);
    Echelon<F> e;
    e.R = a;
    e.T = identity(f, a.rows);
    Mat<Elt<F>>& R = e.R;
    Mat<Elt<F>>& T = e.T;
    int row = 0;
    for (int col = 0; col < a.cols && row < a.rows; ++col) {
        int piv = -1;
        for (int r = row; r < a.rows; ++r)
            if (!f.is_zero(R(r, col))) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row) {
            for (int c = 0; c < a.cols; ++c) std::swap(R(piv, c), R(row, c));
            for (int c = 0; c < a.rows; ++c) std::swap(T(piv, c), T(row, c));
        }
        const Elt<F> ipiv = f.inv(R(row, col));
        for (int c = 0; c < a.cols; ++c) R(row, c) = f.mul(ipiv, R(row, c));
        for (int c = 0; c < a.rows; ++c) T(row, c) = f.mul(ipiv, T(row, c));
        par_for(a.rows, [&](std::int64_t r2) {
            if (r2 == row || f.is_zero(R(static_cast<int>(r2), col))) return;
            const Elt<F> g = R(static_cast<int>(r2), col);
            for (int c = 0; c < a.cols; ++c)
                R(static_cast<int>(r2), c) = f.sub(R(static_cast<int>(r2), c), f.mul(g, R(row, c)));
            for (int c = 0; c < a.rows; ++c)
                T(static_cast<int>(r2), c) = f.sub(T(static_cast<int>(r2), c), f.mul(g, T(row, c)));
        });
        e.pivot_cols.push_back(col);
        ++row;
    }
    e.rank = row;
    return e;
}

// ---------------------------------------------------------------------------
// Smith normal form over Z:  U * A * V = diag(d), d_i | d_{i+1}, U, V unimodular.

struct SmithForm {
    Mat<BigInt> input;
    Mat<BigInt> U, V;
    std::vector<BigInt> d;
    int rank = 0;

    Mat<BigInt> diagonal() const {
        Mat<BigInt> D(input.rows, input.cols);
        for (std::size_t i = 0; i < d.size(); ++i) D(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return D;
    }
};

namespace detail {

inline BigInt round_div(const BigInt& a, const BigInt& b) {
    // quotient with |a - q b| <= |b|/2, biased toward zero
    BigInt q = a / b;
    BigInt r = a - q * b;
    if (2 * abs(r) > abs(b)) q += (r < 0) == (b < 0) ? 1 : -1;
    return q;
}

inline void ext_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& x, BigInt& y) {
    BigInt old_r = a, r = b, old_x = 1, xx = 0, old_y = 0, yy = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * xx; old_x = xx; xx = t;
        t = old_y - q * yy; old_y = yy; yy = t;
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    g = old_r; x = old_x; y = old_y;
}

} // namespace detail

// Smallest-absolute-value pivoting keeps entry growth tame at desk scale.
inline SmithForm smith_form(const Mat<BigInt>& a) {
    SmithForm s;
    s.input = a;
    const int n = a.rows, m = a.cols;
    Mat<BigInt> S = a;
    ZZ z;
    s.U = identity(z, n);
    s.V = identity(z, m);
    Mat<BigInt>& U = s.U;
    Mat<BigInt>& V = s.V;

    const int t = std::min(n, m);
    for (int k = 0; k < t; ++k) {
        for (;;) {
            int pi = -1, pj = -1;
            BigInt best;
            for (int i = k; i < n; ++i)
                for (int j = k; j < m; ++j)
                    if (S(i, j) != 0 && (pi < 0 || abs(S(i, j)) < best)) {
                        best = abs(S(i, j));
                        pi = i; pj = j;
                    }
            if (pi < 0) goto done; // trailing block is zero
            if (pi != k)
                for (int c = 0; c < m; ++c) std::swap(S(pi, c), S(k, c));
            if (pi != k)
                for (int c = 0; c < n; ++c) std::swap(U(pi, c), U(k, c));
            if (pj != k)
                for (int r = 0; r < n; ++r) std::swap(S(r, pj), S(r, k));
            if (pj != k)
                for (int r = 0; r < m; ++r) std::swap(V(r, pj), V(r, k));

            const BigInt piv = S(k, k);
            bool clean = true;
            par_for(n - k - 1, [&](std::int64_t off) {
                const int i = k + 1 + static_cast<int>(off);
                if (S(i, k) == 0) return;
                BigInt q = detail::round_div(S(i, k), piv);
                if (q != 0) {
                    for (int c = 0; c < m; ++c) S(i, c) -= q * S(k, c);
                    for (int c = 0; c < n; ++c) U(i, c) -= q * U(k, c);
                }
            });
            par_for(m - k - 1, [&](std::int64_t off) {
                const int j = k + 1 + static_cast<int>(off);
                if (S(k, j) == 0) return;
                BigInt q = detail::round_div(S(k, j), piv);
                if (q != 0) {
                    for (int r = 0; r < n; ++r) S(r, j) -= q * S(r, k);
                    for (int r = 0; r < m; ++r) V(r, j) -= q * V(r, k);
                }
            });
            for (int i = k + 1; i < n && clean; ++i)
                if (S(i, k) != 0) clean = false;
            for (int j = k + 1; j < m && clean; ++j)
                if (S(k, j) != 0) clean = false;
            if (clean) break; // pivot divides cleanly; move on
        }
    }
done:;

    // sign normalization
    for (int k = 0; k < t; ++k)
        if (S(k, k) < 0) {
            for (int c = 0; c < m; ++c) S(k, c) = -S(k, c);
            for (int c = 0; c < n; ++c) U(k, c) = -U(k, c);
        }

    // pull zero diagonal entries to the back
    for (int k = 0; k < t; ++k) {
        if (S(k, k) != 0) continue;
        int nz = -1;
        for (int j = k + 1; j < t; ++j)
            if (S(j, j) != 0) { nz = j; break; }
        if (nz < 0) break;
        for (int c = 0; c < m; ++c) std::swap(S(k, c), S(nz, c));
        for (int c = 0; c < n; ++c) std::swap(U(k, c), U(nz, c));
        for (int r = 0; r < n; ++r) std::swap(S(r, k), S(r, nz));
        for (int r = 0; r < m; ++r) std::swap(V(r, k), V(r, nz));
    }

    // enforce the divisibility chain with unimodular 2x2 blocks:
    //   P diag(a,b) Q = diag(gcd, lcm)
    for (bool fixed = false; !fixed;) {
        fixed = true;
        for (int i = 0; i + 1 < t; ++i) {
            const BigInt a2 = S(i, i), b2 = S(i + 1, i + 1);
            if (a2 == 0 || b2 == 0 || b2 % a2 == 0) continue;
            fixed = false;
            BigInt g, x, y;
            detail::ext_gcd(a2, b2, g, x, y);
            const BigInt ag = a2 / g, bg = b2 / g;
            // rows i, i+1 of U and S:  P = [[x, y], [-bg, ag]]
            for (int c = 0; c < m; ++c) {
                BigInt r1 = x * S(i, c) + y * S(i + 1, c);
                BigInt r2 = -bg * S(i, c) + ag * S(i + 1, c);
                S(i, c) = r1; S(i + 1, c) = r2;
            }
            for (int c = 0; c < n; ++c) {
                BigInt r1 = x * U(i, c) + y * U(i + 1, c);
                BigInt r2 = -bg * U(i, c) + ag * U(i + 1, c);
                U(i, c) = r1; U(i + 1, c) = r2;
            }
            // cols i, i+1 of V and S:  Q = [[1, -y*bg], [1, x*ag]]
            for (int r = 0; r < n; ++r) {
                BigInt c1 = S(r, i) + S(r, i + 1);
                BigInt c2 = -y * bg * S(r, i) + x * ag * S(r, i + 1);
                S(r, i) = c1; S(r, i + 1) = c2;
            }
            for (int r = 0; r < m; ++r) {
                BigInt c1 = V(r, i) + V(r, i + 1);
                BigInt c2 = -y * bg * V(r, i) + x * ag * V(r, i + 1);
                V(r, i) = c1; V(r, i + 1) = c2;
            }
        }
    }

    s.d.resize(t);
    for (int k = 0; k < t; ++k) {
        s.d[k] = S(k, k);
        if (S(k, k) != 0) s.rank = k + 1;
    }

    // construction-time check: U * input * V must equal the diagonal
    ZZ zz;
    Mat<BigInt> lhs = mul(zz, mul(zz, s.U, s.input), s.V);
    if (!(lhs == s.diagonal()))
        throw consistency_error("smith_form: U*A*V != D");
    for (int k = 0; k + 1 < t; ++k)
        if (s.d[k] == 0 ? s.d[k + 1] != 0 : s.d[k + 1] % s.d[k] != 0)
            throw consistency_error("smith_form: divisibility chain violated");
    return s;
}

// Fraction-free determinant, used to certify unimodularity of U and V.
inline BigInt det_bareiss(Mat<BigInt> m) {
    if (m.rows != m.cols) throw input_error("det: square matrix required");
    const int n = m.rows;
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int pr = -1;
            for (int r = k + 1; r < n; ++r)
                if (m(r, k) != 0) { pr = r; break; }
            if (pr < 0) return 0;
            for (int c = 0; c < n; ++c) std::swap(m(pr, c), m(k, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Uniform rank / kernel / solve over all three backends.

template <class F>
int rank(const F& f, const Mat<Elt<F>>& a) {
    if constexpr (F::is_integers) {
        (void)f;
        return smith_form(a).rank;
    } else {
        return rref(f, a).rank;
    }
}

// Columns form a basis of ker(A): a vector-space basis over a field, a
// lattice basis over Z (columns of V past the Smith rank).
template <class F>
Mat<Elt<F>> kernel_basis(const F& f, const Mat<Elt<F>>& a) {
    if constexpr (F::is_integers) {
        (void)f;
        SmithForm s = smith_form(a);
        const int t = static_cast<int>(s.d.size());
        int nk = a.cols - s.rank;
        Mat<BigInt> K(a.cols, nk);
        int c = 0;
        for (int j = 0; j < a.cols; ++j) {
            const bool zero_diag = j >= t || s.d[j] == 0;
            if (!zero_diag) continue;
            for (int r = 0; r < a.cols; ++r) K(r, c) = s.V(r, j);
            ++c;
        }
        return K;
    } else {
        Echelon<F> e = rref(f, a);
        const int nk = a.cols - e.rank;
        Mat<Elt<F>> K(a.cols, nk);
        std::vector<int> pivot_of_col(a.cols, -1);
        for (int i = 0; i < e.rank; ++i) pivot_of_col[e.pivot_cols[i]] = i;
        int c = 0;
        for (int j = 0; j < a.cols; ++j) {
            if (pivot_of_col[j] >= 0) continue;
            K(j, c) = f.one();
            for (int i = 0; i < e.rank; ++i)
                K(e.pivot_cols[i], c) = f.neg(e.R(i, j));
            ++c;
        }
        return K;
    }
}

// Outcome of an exact linear solve AX = B.  On failure, `dual` certifies it:
// over a field, y with y^T A = 0 and y^T b != 0; over Z, a rational y with
// y^T A integral and y^T b non-integral (or y^T A = 0, y^T b != 0).
template <class F>
struct SolveResult {
    std::optional<Mat<Elt<F>>> x;
    std::vector<Dual<F>> dual;
    int bad_column = -1;
    bool ok() const { return x.has_value(); }
};

template <class F>
SolveResult<F> solve(const F& f, const Mat<Elt<F>>& a, const Mat<Elt<F>>& b) {
    if (a.rows != b.rows) throw input_error("solve: row count mismatch");
    SolveResult<F> res;
    if constexpr (F::is_integers) {
        (void)f;
        SmithForm s = smith_form(a);
        ZZ z;
        Mat<BigInt> ub = mul(z, s.U, b);
        const int t = static_cast<int>(s.d.size());
        Mat<BigInt> y(a.cols, b.cols);
        for (int col = 0; col < b.cols; ++col) {
            for (int i = 0; i < a.rows; ++i) {
                const BigInt di = i < t ? s.d[i] : BigInt(0);
                if (di == 0) {
                    if (ub(i, col) != 0) {
                        res.bad_column = col;
                        res.dual.resize(a.rows);
                        for (int c = 0; c < a.rows; ++c) res.dual[c] = BigRat(s.U(i, c));
                        return res;
                    }
                } else if (ub(i, col) % di != 0) {
                    res.bad_column = col;
                    res.dual.resize(a.rows);
                    for (int c = 0; c < a.rows; ++c) res.dual[c] = BigRat(s.U(i, c), di);
                    return res;
                } else {
                    y(i, col) = ub(i, col) / di;
                }
            }
        }
        res.x = mul(z, s.V, y);
        return res;
    } else {
        Echelon<F> e = rref(f, a);
        Mat<Elt<F>> tb = mul(f, e.T, b);
        for (int col = 0; col < b.cols; ++col)
            for (int r = e.rank; r < a.rows; ++r)
                if (!f.is_zero(tb(r, col))) {
                    res.bad_column = col;
                    res.dual.resize(a.rows);
                    for (int c = 0; c < a.rows; ++c) res.dual[c] = e.T(r, c);
                    return res;
                }
        Mat<Elt<F>> x(a.cols, b.cols);
        for (int i = 0; i < e.rank; ++i)
            for (int col = 0; col < b.cols; ++col) x(e.pivot_cols[i], col) = tb(i, col);
        res.x = std::move(x);
        return res;
    }
}

// Re-check a dual certificate against (A, b); used by the standalone verifier.
template <class F>
bool check_dual(const F& f, const Mat<Elt<F>>& a, const std::vector<Elt<F>>& b,
                const std::vector<Dual<F>>& y) {
    if (static_cast<int>(y.size()) != a.rows || static_cast<int>(b.size()) != a.rows) return false;
    if constexpr (F::is_integers) {
        (void)f;
        bool all_zero = true, all_int = true;
        for (int c = 0; c < a.cols; ++c) {
            BigRat acc = 0;
            for (int r = 0; r < a.rows; ++r) acc += y[r] * BigRat(a(r, c));
            if (acc != 0) all_zero = false;
            if (denominator(acc) != 1) all_int = false;
        }
        BigRat yb = 0;
        for (int r = 0; r < a.rows; ++r) yb += y[r] * BigRat(b[r]);
        if (all_zero) return yb != 0;
        return all_int && denominator(yb) != 1;
    } else {
        for (int c = 0; c < a.cols; ++c) {
            Elt<F> acc = f.zero();
            for (int r = 0; r < a.rows; ++r) acc = f.add(acc, f.mul(y[r], a(r, c)));
            if (!f.is_zero(acc)) return false;
        }
        Elt<F> yb = f.zero();
        for (int r = 0; r < a.rows; ++r) yb = f.add(yb, f.mul(y[r], b[r]));
        return !f.is_zero(yb);
    }
}

} // namespace koszul::linalg
