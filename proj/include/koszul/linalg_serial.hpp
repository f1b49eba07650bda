#pragma once

#include "koszul/linalg.hpp"

// Plain single-threaded reference implementations.  Deliberately written the
// textbook way (Bezout pivoting for Smith form instead of the production
// smallest-pivot strategy) so the two paths cross-check each other in tests
// and in the bench target.
namespace koszul::linalg::serial {

template <class F>
Mat<Elt<F>> mul(const F& f, const Mat<Elt<F>>& x, const Mat<Elt<F>>& y) {
    if (x.cols != y.rows) throw input_error("mul: inner dimension mismatch");
    Mat<Elt<F>> z(x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int c = 0; c < y.cols; ++c) {
            Elt<F> acc = f.zero();
            for (int k = 0; k < x.cols; ++k) acc = f.add(acc, f.mul(x(r, k), y(k, c)));
            z(r, c) = acc;
        }
    return z;
}

template <class F>
Echelon<F> rref(const F& f, const Mat<Elt<F>>& a) {
    static_assert(F::is_field);
    Echelon<F> e;
    e.R = a;
    e.T = identity(f, a.rows);
    int row = 0;
    for (int col = 0; col < a.cols && row < a.rows; ++col) {
        int piv = -1;
        for (int r = row; r < a.rows; ++r)
            if (!f.is_zero(e.R(r, col))) { piv = r; break; }
        if (piv < 0) continue;
        for (int c = 0; c < a.cols; ++c) std::swap(e.R(piv, c), e.R(row, c));
        for (int c = 0; c < a.rows; ++c) std::swap(e.T(piv, c), e.T(row, c));
        Elt<F> ip = f.inv(e.R(row, col));
        for (int c = 0; c < a.cols; ++c) e.R(row, c) = f.mul(ip, e.R(row, c));
        for (int c = 0; c < a.rows; ++c) e.T(row, c) = f.mul(ip, e.T(row, c));
        for (int r2 = 0; r2 < a.rows; ++r2) {
            if (r2 == row || f.is_zero(e.R(r2, col))) continue;
            Elt<F> g = e.R(r2, col);
            for (int c = 0; c < a.cols; ++c) e.R(r2, c) = f.sub(e.R(r2, c), f.mul(g, e.R(row, c)));
            for (int c = 0; c < a.rows; ++c) e.T(r2, c) = f.sub(e.T(r2, c), f.mul(g, e.T(row, c)));
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    e.rank = row;
    return e;
}

// Bezout-pivot Smith form: place gcds with explicit 2x2 unimodular blocks.
inline SmithForm smith_form(const Mat<BigInt>& a) {
    SmithForm s;
    s.input = a;
    const int n = a.rows, m = a.cols;
    Mat<BigInt> S = a;
    ZZ z;
    s.U = identity(z, n);
    s.V = identity(z, m);

    auto row_combine = [&](int i, int j, const BigInt& p, const BigInt& q,
                           const BigInt& r, const BigInt& t) {
        // rows (i, j) <- (p*i + q*j, r*i + t*j), with p*t - q*r = +-1
        for (int c = 0; c < m; ++c) {
            BigInt x1 = p * S(i, c) + q * S(j, c);
            BigInt x2 = r * S(i, c) + t * S(j, c);
            S(i, c) = x1; S(j, c) = x2;
        }
        for (int c = 0; c < n; ++c) {
            BigInt x1 = p * s.U(i, c) + q * s.U(j, c);
            BigInt x2 = r * s.U(i, c) + t * s.U(j, c);
            s.U(i, c) = x1; s.U(j, c) = x2;
        }
    };
    auto col_combine = [&](int i, int j, const BigInt& p, const BigInt& q,
                           const BigInt& r, const BigInt& t) {
        for (int rr = 0; rr < n; ++rr) {
            BigInt x1 = p * S(rr, i) + q * S(rr, j);
            BigInt x2 = r * S(rr, i) + t * S(rr, j);
            S(rr, i) = x1; S(rr, j) = x2;
        }
        for (int rr = 0; rr < m; ++rr) {
            BigInt x1 = p * s.V(rr, i) + q * s.V(rr, j);
            BigInt x2 = r * s.V(rr, i) + t * s.V(rr, j);
            s.V(rr, i) = x1; s.V(rr, j) = x2;
        }
    };

    const int t = std::min(n, m);
    for (int k = 0; k < t; ++k) {
        int pi = -1, pj = -1;
        for (int i = k; i < n && pi < 0; ++i)
            for (int j = k; j < m; ++j)
                if (S(i, j) != 0) { pi = i; pj = j; break; }
        if (pi < 0) break;
        if (pi != k) row_combine(k, pi, 0, 1, 1, 0);
        if (pj != k) col_combine(k, pj, 0, 1, 1, 0);
        for (bool again = true; again;) {
            again = false;
            for (int i = k + 1; i < n; ++i)
                if (S(i, k) != 0) {
                    BigInt g, x, y;
                    detail::ext_gcd(S(k, k), S(i, k), g, x, y);
                    row_combine(k, i, x, y, -(S(i, k) / g), S(k, k) / g);
                    again = true;
                }
            for (int j = k + 1; j < m; ++j)
                if (S(k, j) != 0) {
                    BigInt g, x, y;
                    detail::ext_gcd(S(k, k), S(k, j), g, x, y);
                    col_combine(k, j, x, y, -(S(k, j) / g), S(k, k) / g);
                    again = true;
                }
        }
    }

    for (int k = 0; k < t; ++k)
        if (S(k, k) < 0) {
            for (int c = 0; c < m; ++c) S(k, c) = -S(k, c);
            for (int c = 0; c < n; ++c) s.U(k, c) = -s.U(k, c);
        }
    for (int k = 0; k < t; ++k) {
        if (S(k, k) != 0) continue;
        int nz = -1;
        for (int j = k + 1; j < t; ++j)
            if (S(j, j) != 0) { nz = j; break; }
        if (nz < 0) break;
        row_combine(k, nz, 0, 1, 1, 0);
        col_combine(k, nz, 0, 1, 1, 0);
    }
    for (bool fixed = false; !fixed;) {
        fixed = true;
        for (int i = 0; i + 1 < t; ++i) {
            BigInt a2 = S(i, i), b2 = S(i + 1, i + 1);
            if (a2 == 0 || b2 == 0 || b2 % a2 == 0) continue;
            fixed = false;
            BigInt g, x, y;
            detail::ext_gcd(a2, b2, g, x, y);
            row_combine(i, i + 1, x, y, -(b2 / g), a2 / g);
            col_combine(i, i + 1, 1, 1, -y * (b2 / g), x * (a2 / g));
        }
    }

    s.d.resize(t);
    for (int k = 0; k < t; ++k) {
        s.d[k] = S(k, k);
        if (S(k, k) != 0) s.rank = k + 1;
    }
    Mat<BigInt> lhs = mul(z, mul(z, s.U, s.input), s.V);
    if (!(lhs == s.diagonal())) throw consistency_error("serial smith_form: U*A*V != D");
    return s;
}

template <class F>
int rank(const F& f, const Mat<Elt<F>>& a) {
    if constexpr (F::is_integers) {
        (void)f;
        return smith_form(a).rank;
    } else {
        return rref(f, a).rank;
    }
}

template <class F>
Mat<Elt<F>> kernel_basis(const F& f, const Mat<Elt<F>>& a) {
    if constexpr (F::is_integers) {
        (void)f;
        SmithForm s = smith_form(a);
        const int t = static_cast<int>(s.d.size());
        Mat<BigInt> K(a.cols, a.cols - s.rank);
        int c = 0;
        for (int j = 0; j < a.cols; ++j) {
            if (j < t && s.d[j] != 0) continue;
            for (int r = 0; r < a.cols; ++r) K(r, c) = s.V(r, j);
            ++c;
        }
        return K;
    } else {
        Echelon<F> e = rref(f, a);
        Mat<Elt<F>> K(a.cols, a.cols - e.rank);
        std::vector<int> pivot_of_col(a.cols, -1);
        for (int i = 0; i < e.rank; ++i) pivot_of_col[e.pivot_cols[i]] = i;
        int c = 0;
        for (int j = 0; j < a.cols; ++j) {
            if (pivot_of_col[j] >= 0) continue;
            K(j, c) = f.one();
            for (int i = 0; i < e.rank; ++i) K(e.pivot_cols[i], c) = f.neg(e.R(i, j));
            ++c;
        }
        return K;
    }
}

template <class F>
std::optional<Mat<Elt<F>>> solve(const F& f, const Mat<Elt<F>>& a, const Mat<Elt<F>>& b) {
    if constexpr (F::is_integers) {
        (void)f;
        SmithForm s = smith_form(a);
        ZZ z;
        Mat<BigInt> ub = mul(z, s.U, b);
        const int t = static_cast<int>(s.d.size());
        Mat<BigInt> y(a.cols, b.cols);
        for (int col = 0; col < b.cols; ++col)
            for (int i = 0; i < a.rows; ++i) {
                BigInt di = i < t ? s.d[i] : BigInt(0);
                if (di == 0) {
                    if (ub(i, col) != 0) return std::nullopt;
                } else if (ub(i, col) % di != 0) {
                    return std::nullopt;
                } else {
                    y(i, col) = ub(i, col) / di;
                }
            }
        return mul(z, s.V, y);
    } else {
        Echelon<F> e = rref(f, a);
        Mat<Elt<F>> tb = mul(f, e.T, b);
        for (int col = 0; col < b.cols; ++col)
            for (int r = e.rank; r < a.rows; ++r)
                if (!f.is_zero(tb(r, col))) return std::nullopt;
        Mat<Elt<F>> x(a.cols, b.cols);
        for (int i = 0; i < e.rank; ++i)
            for (int col = 0; col < b.cols; ++col) x(e.pivot_cols[i], col) = tb(i, col);
        return x;
    }
}

} // namespace koszul::linalg::serial
