#pragma once

#include <atomic>
#include <memory>
#include <optional>

#include "koszul/ring.hpp"

// Bounded cochain complexes.  Conventions, fixed once for the whole engine:
//   * differentials raise degree: d^n : X^n -> X^{n+1}, d o d = 0;
//   * (Sigma^k X)^n = X^{n+k} with differential (-1)^k d;
//   * a degree-d map f : X -> Y has components X^n -> Y^{n+d} and satisfies
//     d_Y f = (-1)^d f d_X;
//   * a homotopy h between parallel degree-d maps f, g has components
//     X^n -> Y^{n+d-1} and satisfies d h + (-1)^d h d = f - g;
//   * cone(f : X -> Y)^n = Y^n (+) X^{n+1} with differential [[d_Y, f], [0, -d_X]].
namespace koszul {

template <class F>
using E = typename F::Elt;

template <class F>
struct Term {
    long rank = 0;                            // free rank; k-dimension for field/Z rings
    std::shared_ptr<const ModulePres<F>> pres; // set for presented modules over a quotient algebra

    bool is_free() const { return pres == nullptr; }
};

template <class F>
int term_kdim(const Ring<F>& ring, const Term<F>& t) {
    if (t.pres) return t.pres->dim;
    return static_cast<int>(t.rank) * ring.unit_kdim();
}

// variable action matrices on a term's k-basis (quotient rings only)
template <class F>
std::vector<Mat<E<F>>> term_ops(const Ring<F>& ring, const Term<F>& t) {
    if (!ring.is_quotient()) return {};
    if (t.pres) return t.pres->ops;
    const auto& A = *ring.alg;
    const int da = A.dim();
    const int n = static_cast<int>(t.rank) * da;
    std::vector<Mat<E<F>>> ops;
    for (int v = 0; v < A.nvars(); ++v) {
        Mat<E<F>> op(n, n);
        for (long g = 0; g < t.rank; ++g)
            for (int j = 0; j < da; ++j) {
                std::vector<int> e = A.basis[j];
                e[v] += 1;
                int i = A.monomial_index(e);
                if (i >= 0) op(static_cast<int>(g) * da + i, static_cast<int>(g) * da + j) = ring.f.one();
            }
        ops.push_back(std::move(op));
    }
    return ops;
}

inline std::uint64_t next_complex_uid() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

template <class F>
struct Complex {
    Ring<F> ring;
    int lo = 0, hi = -1;                  // hi < lo encodes the zero complex
    std::vector<Term<F>> terms;           // terms[n - lo]
    std::vector<Mat<E<F>>> diffs;         // diffs[n - lo] : X^n -> X^{n+1}
    std::uint64_t uid = 0;
    std::uint64_t shift_base = 0;         // uid of the unshifted original
    int shift_amount = 0;

    Term<F> term(int n) const {
        if (n < lo || n > hi) return Term<F>{};
        return terms[static_cast<std::size_t>(n - lo)];
    }
    int kdim(int n) const { return term_kdim(ring, term(n)); }

    Mat<E<F>> dmat(int n) const {
        if (n >= lo && n < hi) return diffs[static_cast<std::size_t>(n - lo)];
        return Mat<E<F>>(kdim(n + 1), kdim(n));
    }

    std::vector<Mat<E<F>>> ops(int n) const { return term_ops(ring, term(n)); }

    bool is_zero_object() const {
        for (int n = lo; n <= hi; ++n)
            if (kdim(n) > 0) return false;
        return true;
    }

    int total_kdim() const {
        int s = 0;
        for (int n = lo; n <= hi; ++n) s += kdim(n);
        return s;
    }
};

template <class F>
using CxPtr = std::shared_ptr<const Complex<F>>;

// A-linearity: a k-matrix m : (term s) -> (term t) commutes with every variable action.
template <class F>
bool is_linear_over_ring(const Ring<F>& ring, const Term<F>& src, const Term<F>& dst,
                         const Mat<E<F>>& m) {
    if (!ring.is_quotient()) return true;
    auto so = term_ops(ring, src);
    auto to = term_ops(ring, dst);
    for (std::size_t v = 0; v < so.size(); ++v)
        if (!(linalg::mul(ring.f, m, so[v]) == linalg::mul(ring.f, to[v], m))) return false;
    return true;
}

template <class F>
CxPtr<F> make_complex(Ring<F> ring, int lo, std::vector<Term<F>> terms,
                      std::vector<Mat<E<F>>> diffs) {
    auto X = std::make_shared<Complex<F>>();
    X->ring = std::move(ring);
    X->lo = lo;
    X->hi = lo + static_cast<int>(terms.size()) - 1;
    X->terms = std::move(terms);
    X->diffs = std::move(diffs);
    X->uid = next_complex_uid();
    X->shift_base = X->uid;
    if (X->terms.empty()) { X->lo = 0; X->hi = -1; }
    if (X->diffs.size() + 1 != X->terms.size() && !X->terms.empty())
        throw input_error("complex: need exactly one differential between consecutive terms");

    const F& f = X->ring.f;
    for (int n = X->lo; n < X->hi; ++n) {
        const auto& d = X->dmat(n);
        if (d.rows != X->kdim(n + 1) || d.cols != X->kdim(n))
            throw input_error("complex: differential shape mismatch at degree " + std::to_string(n));
        if (!is_linear_over_ring(X->ring, X->term(n), X->term(n + 1), d))
            throw input_error("complex: differential is not linear over the base ring");
    }
    for (int n = X->lo; n + 1 < X->hi; ++n) {
        auto dd = linalg::mul(f, X->dmat(n + 1), X->dmat(n));
        if (!linalg::is_zero(f, dd))
            throw input_error("complex: d^2 != 0 at degree " + std::to_string(n));
    }
    return X;
}

template <class F>
CxPtr<F> zero_complex(Ring<F> ring) {
    return make_complex<F>(std::move(ring), 0, {}, {});
}

// module concentrated in one degree
template <class F>
CxPtr<F> concentrated(Ring<F> ring, int degree, Term<F> t) {
    return make_complex<F>(std::move(ring), degree, {std::move(t)}, {});
}

template <class F>
CxPtr<F> shift(const CxPtr<F>& X, int k) {
    if (k == 0) return X;
    auto Y = std::make_shared<Complex<F>>(*X);
    Y->lo = X->lo - k;
    Y->hi = X->hi - k;
    if (k % 2 != 0)
        for (auto& d : Y->diffs) d = linalg::neg(X->ring.f, d);
    Y->uid = next_complex_uid();
    Y->shift_base = X->shift_base;
    Y->shift_amount = X->shift_amount + k;
    return Y;
}

// ---------------------------------------------------------------------------
// Chain maps and homotopies.

template <class F>
struct ChainMap {
    CxPtr<F> X, Y;
    int deg = 0;
    std::vector<Mat<E<F>>> comps; // comps[n - X->lo] : X^n -> Y^{n+deg}

    Mat<E<F>> comp(int n) const {
        if (n >= X->lo && n <= X->hi && !comps.empty())
            return comps[static_cast<std::size_t>(n - X->lo)];
        return Mat<E<F>>(Y->kdim(n + deg), X->kdim(n));
    }
};

template <class F>
bool chain_map_identity_holds(const ChainMap<F>& f) {
    const F& ff = f.X->ring.f;
    const bool odd = f.deg % 2 != 0;
    for (int n = f.X->lo - 1; n <= f.X->hi; ++n) {
        auto lhs = linalg::mul(ff, f.Y->dmat(n + f.deg), f.comp(n));
        auto rhs = linalg::mul(ff, f.comp(n + 1), f.X->dmat(n));
        if (odd) rhs = linalg::neg(ff, rhs);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

template <class F>
ChainMap<F> make_chain_map(CxPtr<F> X, CxPtr<F> Y, int deg, std::vector<Mat<E<F>>> comps,
                           bool check = true) {
    ChainMap<F> f;
    f.X = std::move(X);
    f.Y = std::move(Y);
    f.deg = deg;
    f.comps = std::move(comps);
    if (!f.X->ring.same_as(f.Y->ring)) throw input_error("chain map: mismatched base rings");
    if (f.comps.empty() && f.X->lo <= f.X->hi)
        f.comps.assign(static_cast<std::size_t>(f.X->hi - f.X->lo + 1), Mat<E<F>>());
    for (int n = f.X->lo; n <= f.X->hi; ++n) {
        auto& m = f.comps[static_cast<std::size_t>(n - f.X->lo)];
        if (m.rows == 0 && m.cols == 0) m = Mat<E<F>>(f.Y->kdim(n + deg), f.X->kdim(n));
        if (m.rows != f.Y->kdim(n + deg) || m.cols != f.X->kdim(n))
            throw input_error("chain map: component shape mismatch at degree " + std::to_string(n));
        if (check && !is_linear_over_ring(f.X->ring, f.X->term(n), f.Y->term(n + deg), m))
            throw input_error("chain map: component not linear over the base ring");
    }
    if (check && !chain_map_identity_holds(f))
        throw input_error("chain map: d f != (-1)^deg f d");
    return f;
}

template <class F>
ChainMap<F> identity_map(const CxPtr<F>& X) {
    std::vector<Mat<E<F>>> comps;
    for (int n = X->lo; n <= X->hi; ++n) comps.push_back(linalg::identity(X->ring.f, X->kdim(n)));
    return make_chain_map(X, X, 0, std::move(comps), false);
}

template <class F>
ChainMap<F> zero_map(const CxPtr<F>& X, const CxPtr<F>& Y, int deg = 0) {
    return make_chain_map(X, Y, deg, {}, false);
}

// Structural agreement of two complexes (same ring, windows may differ by
// zero-padding, equal k-dimensions and differentials where nonzero).
template <class F>
bool same_shape(const Complex<F>& a, const Complex<F>& b) {
    if (!a.ring.same_as(b.ring)) return false;
    int lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
    for (int n = lo; n <= hi; ++n) {
        if (a.kdim(n) != b.kdim(n)) return false;
        if (n < hi && !(a.dmat(n) == b.dmat(n))) return false;
    }
    return true;
}

template <class F>
ChainMap<F> compose(const ChainMap<F>& g, const ChainMap<F>& f) {
    if (g.X.get() != f.Y.get() && g.X->uid != f.Y->uid && !same_shape(*g.X, *f.Y))
        throw input_error("compose: inner objects differ");
    std::vector<Mat<E<F>>> comps;
    for (int n = f.X->lo; n <= f.X->hi; ++n)
        comps.push_back(linalg::mul(f.X->ring.f, g.comp(n + f.deg), f.comp(n)));
    return make_chain_map(f.X, g.Y, f.deg + g.deg, std::move(comps), false);
}

template <class F>
ChainMap<F> map_add(const ChainMap<F>& f, const ChainMap<F>& g) {
    std::vector<Mat<E<F>>> comps;
    for (int n = f.X->lo; n <= f.X->hi; ++n)
        comps.push_back(linalg::add(f.X->ring.f, f.comp(n), g.comp(n)));
    return make_chain_map(f.X, f.Y, f.deg, std::move(comps), false);
}

template <class F>
ChainMap<F> map_sub(const ChainMap<F>& f, const ChainMap<F>& g) {
    std::vector<Mat<E<F>>> comps;
    for (int n = f.X->lo; n <= f.X->hi; ++n)
        comps.push_back(linalg::sub(f.X->ring.f, f.comp(n), g.comp(n)));
    return make_chain_map(f.X, f.Y, f.deg, std::move(comps), false);
}

template <class F>
ChainMap<F> map_neg(const ChainMap<F>& f) {
    std::vector<Mat<E<F>>> comps;
    for (int n = f.X->lo; n <= f.X->hi; ++n) comps.push_back(linalg::neg(f.X->ring.f, f.comp(n)));
    return make_chain_map(f.X, f.Y, f.deg, std::move(comps), false);
}

// Sigma^k f as a map Sigma^k X -> Sigma^k Y of the same degree
template <class F>
ChainMap<F> shift_map(const ChainMap<F>& f, int k) {
    auto SX = shift(f.X, k);
    auto SY = shift(f.Y, k);
    std::vector<Mat<E<F>>> comps;
    for (int n = SX->lo; n <= SX->hi; ++n) comps.push_back(f.comp(n + k));
    return make_chain_map(SX, SY, f.deg, std::move(comps), false);
}

// Reinterpret a degree-d map X -> Y as a degree-0 map X -> Sigma^d Y.
template <class F>
ChainMap<F> as_degree_zero(const ChainMap<F>& f) {
    auto SY = shift(f.Y, f.deg);
    std::vector<Mat<E<F>>> comps;
    for (int n = f.X->lo; n <= f.X->hi; ++n) comps.push_back(f.comp(n));
    return make_chain_map(f.X, SY, 0, std::move(comps), false);
}

template <class F>
bool map_is_zero(const ChainMap<F>& f) {
    for (int n = f.X->lo; n <= f.X->hi; ++n)
        if (!linalg::is_zero(f.X->ring.f, f.comp(n))) return false;
    return true;
}

template <class F>
struct Homotopy {
    CxPtr<F> X, Y;
    int deg = 0;                  // degree of the maps it compares
    std::vector<Mat<E<F>>> comps; // comps[n - X->lo] : X^n -> Y^{n+deg-1}

    Mat<E<F>> comp(int n) const {
        if (n >= X->lo && n <= X->hi && !comps.empty())
            return comps[static_cast<std::size_t>(n - X->lo)];
        return Mat<E<F>>(Y->kdim(n + deg - 1), X->kdim(n));
    }
};

// check d h + (-1)^deg h d = f - g
template <class F>
bool homotopy_witnesses(const Homotopy<F>& h, const ChainMap<F>& f, const ChainMap<F>& g) {
    const F& ff = f.X->ring.f;
    const bool odd = f.deg % 2 != 0;
    for (int n = f.X->lo - 1; n <= f.X->hi; ++n) {
        auto t1 = linalg::mul(ff, f.Y->dmat(n + f.deg - 1), h.comp(n));
        auto t2 = linalg::mul(ff, h.comp(n + 1), f.X->dmat(n));
        if (odd) t2 = linalg::neg(ff, t2);
        auto lhs = linalg::add(ff, t1, t2);
        auto rhs = linalg::sub(ff, f.comp(n), g.comp(n));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Direct sums.

template <class F>
struct SumData {
    CxPtr<F> sum;
    ChainMap<F> incl_left, incl_right, proj_left, proj_right;
};

template <class F>
Term<F> sum_term(const Ring<F>& ring, const Term<F>& a, const Term<F>& b) {
    if (a.is_free() && b.is_free()) return Term<F>{a.rank + b.rank, nullptr};
    // presented (+) presented: block module
    auto pa = a.pres;
    auto pb = b.pres;
    auto mk = [&](const Term<F>& t) {
        if (t.pres) return t.pres;
        auto reg = std::make_shared<ModulePres<F>>();
        reg->alg = ring.alg;
        auto rr = regular_representation(ring.alg);
        reg->dim = term_kdim(ring, t);
        for (int v = 0; v < ring.alg->nvars(); ++v) {
            Mat<E<F>> op(reg->dim, reg->dim);
            for (long g = 0; g < t.rank; ++g)
                set_block(op, static_cast<int>(g) * ring.alg->dim(), static_cast<int>(g) * ring.alg->dim(),
                          rr->ops[v]);
            reg->ops.push_back(std::move(op));
        }
        return std::shared_ptr<const ModulePres<F>>(reg);
    };
    pa = mk(a);
    pb = mk(b);
    auto m = std::make_shared<ModulePres<F>>();
    m->alg = ring.alg;
    m->dim = pa->dim + pb->dim;
    for (int v = 0; v < ring.alg->nvars(); ++v) {
        Mat<E<F>> op(m->dim, m->dim);
        set_block(op, 0, 0, pa->ops[v]);
        set_block(op, pa->dim, pa->dim, pb->ops[v]);
        m->ops.push_back(std::move(op));
    }
    return Term<F>{0, m};
}

template <class F>
SumData<F> direct_sum(const CxPtr<F>& X, const CxPtr<F>& Y) {
    if (!X->ring.same_as(Y->ring)) throw input_error("direct sum: mismatched base rings");
    const F& f = X->ring.f;
    int lo = std::min(X->lo, Y->lo), hi = std::max(X->hi, Y->hi);
    if (X->lo > X->hi) { lo = Y->lo; hi = Y->hi; }
    if (Y->lo > Y->hi) { lo = X->lo; hi = X->hi; }
    if (X->lo > X->hi && Y->lo > Y->hi) { lo = 0; hi = -1; }
    std::vector<Term<F>> terms;
    std::vector<Mat<E<F>>> diffs;
    for (int n = lo; n <= hi; ++n) terms.push_back(sum_term(X->ring, X->term(n), Y->term(n)));
    SumData<F> out;
    auto dim_at = [&](int n) { return term_kdim(X->ring, terms[static_cast<std::size_t>(n - lo)]); };
    for (int n = lo; n < hi; ++n) {
        Mat<E<F>> d(dim_at(n + 1), dim_at(n));
        set_block(d, 0, 0, X->dmat(n));
        set_block(d, X->kdim(n + 1), X->kdim(n), Y->dmat(n));
        diffs.push_back(std::move(d));
    }
    out.sum = make_complex(X->ring, lo, std::move(terms), std::move(diffs));
    std::vector<Mat<E<F>>> il, ir, pl, pr;
    for (int n = X->lo; n <= X->hi; ++n) {
        Mat<E<F>> m(out.sum->kdim(n), X->kdim(n));
        for (int i = 0; i < X->kdim(n); ++i) m(i, i) = f.one();
        il.push_back(std::move(m));
    }
    for (int n = Y->lo; n <= Y->hi; ++n) {
        Mat<E<F>> m(out.sum->kdim(n), Y->kdim(n));
        for (int i = 0; i < Y->kdim(n); ++i) m(X->kdim(n) + i, i) = f.one();
        ir.push_back(std::move(m));
    }
    for (int n = out.sum->lo; n <= out.sum->hi; ++n) {
        Mat<E<F>> m(X->kdim(n), out.sum->kdim(n));
        for (int i = 0; i < X->kdim(n); ++i) m(i, i) = f.one();
        pl.push_back(std::move(m));
        Mat<E<F>> m2(Y->kdim(n), out.sum->kdim(n));
        for (int i = 0; i < Y->kdim(n); ++i) m2(i, X->kdim(n) + i) = f.one();
        pr.push_back(std::move(m2));
    }
    out.incl_left = make_chain_map(X, out.sum, 0, std::move(il), false);
    out.incl_right = make_chain_map(Y, out.sum, 0, std::move(ir), false);
    out.proj_left = make_chain_map(out.sum, X, 0, std::move(pl), false);
    out.proj_right = make_chain_map(out.sum, Y, 0, std::move(pr), false);
    return out;
}

// Stupid truncation keeping degrees <= c: a quotient complex, with projection.
template <class F>
struct TruncationData {
    CxPtr<F> truncated;
    ChainMap<F> projection; // X -> truncated
};

template <class F>
TruncationData<F> stupid_truncation_below(const CxPtr<F>& X, int c) {
    TruncationData<F> out;
    int hi = std::min(X->hi, c);
    if (hi < X->lo) {
        out.truncated = zero_complex(X->ring);
        out.projection = zero_map(X, out.truncated);
        return out;
    }
    std::vector<Term<F>> terms;
    std::vector<Mat<E<F>>> diffs;
    for (int n = X->lo; n <= hi; ++n) terms.push_back(X->term(n));
    for (int n = X->lo; n < hi; ++n) diffs.push_back(X->dmat(n));
    out.truncated = make_complex(X->ring, X->lo, std::move(terms), std::move(diffs));
    std::vector<Mat<E<F>>> comps;
    for (int n = X->lo; n <= X->hi; ++n)
        comps.push_back(n <= hi ? linalg::identity(X->ring.f, X->kdim(n))
                                : Mat<E<F>>(0, X->kdim(n)));
    out.projection = make_chain_map(X, out.truncated, 0, std::move(comps), false);
    return out;
}

} // namespace koszul
