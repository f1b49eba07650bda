#pragma once

#include "koszul/central.hpp"
#include "koszul/homcomplex.hpp"
#include "koszul/resolution.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Cohomology operators for a pure-power complete intersection
// B = k[x_1..x_c]/(x_1^{a_1}, ..., x_c^{a_c}):  lift the differential of a
// truncated free resolution to the ambient polynomial ring, square it, and
// read off the coefficient of each x_i^{a_i}.  The result is a strict chain
// map chi_i : P -> P of degree 2.

namespace ambient {

template <class F>
using Poly = std::map<std::vector<int>, typename F::Elt>;

template <class F>
void poly_acc(const F& f, Poly<F>& p, const std::vector<int>& mono, const typename F::Elt& c) {
    auto it = p.find(mono);
    if (it == p.end()) {
        if (!f.is_zero(c)) p.emplace(mono, c);
        return;
    }
    it->second = f.add(it->second, c);
    if (f.is_zero(it->second)) p.erase(it);
}

template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            std::vector<int> m(ma.size());
            for (std::size_t i = 0; i < ma.size(); ++i) m[i] = ma[i] + mb[i];
            poly_acc(f, r, m, f.mul(ca, cb));
        }
    return r;
}

template <class F>
struct PolyMat {
    int rows = 0, cols = 0;
    std::vector<Poly<F>> a;
    PolyMat() = default;
    PolyMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
    Poly<F>& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Poly<F>& operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

template <class F>
PolyMat<F> mat_mul(const F& f, const PolyMat<F>& x, const PolyMat<F>& y) {
    PolyMat<F> z(x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int k = 0; k < x.cols; ++k) {
            if (x(r, k).empty()) continue;
            for (int c = 0; c < y.cols; ++c) {
                if (y(k, c).empty()) continue;
                auto prod = poly_mul(f, x(r, k), y(k, c));
                for (const auto& [m, cc] : prod) poly_acc(f, z(r, c), m, cc);
            }
        }
    return z;
}

} // namespace ambient

template <class F>
struct EisenbudOperators {
    CxPtr<F> P;
    std::vector<CentralElement<F>> chis; // one per variable, degree 2
};

template <class F>
EisenbudOperators<F> eisenbud_operators(const Ring<F>& ring, const Resolution<F>& res) {
    if (!ring.is_quotient()) throw input_error("eisenbud: quotient algebra required");
    const auto& A = *ring.alg;
    if (!A.extra.empty())
        throw input_error("eisenbud: pure-power complete intersections only");
    const F& f = ring.f;
    const int c = A.nvars();
    const int da = A.dim();
    const auto& P = res.P;
    const int N = -P->lo;
    if (N < 2) throw input_error("eisenbud: resolution window too short to define a degree-2 operator");

    // lift differentials entrywise to the polynomial ring
    std::vector<ambient::PolyMat<F>> lifts; // lifts[r-1] covers d : P^{-r} -> P^{-r+1}
    for (int r = 1; r <= N; ++r) {
        const int mu_src = static_cast<int>(P->term(-r).rank);
        const int mu_dst = static_cast<int>(P->term(-r + 1).rank);
        const auto& gc = res.gencols[static_cast<std::size_t>(r - 1)];
        ambient::PolyMat<F> L(mu_dst, mu_src);
        for (int g = 0; g < mu_src; ++g)
            for (int h = 0; h < mu_dst; ++h)
                for (int j = 0; j < da; ++j) {
                    const auto& coeff = gc(h * da + j, g);
                    if (!f.is_zero(coeff)) ambient::poly_acc(f, L(h, g), A.basis[static_cast<std::size_t>(j)], coeff);
                }
        lifts.push_back(std::move(L));
    }

    auto reg = regular_representation(ring.alg);
    std::vector<std::vector<Mat<E<F>>>> chi_comps(static_cast<std::size_t>(c));
    for (int s = 0; s < c; ++s)
        for (int n = P->lo; n <= P->hi; ++n)
            chi_comps[static_cast<std::size_t>(s)].push_back(Mat<E<F>>(P->kdim(n + 2), P->kdim(n)));

    for (int r = 2; r <= N; ++r) {
        auto sq = ambient::mat_mul(f, lifts[static_cast<std::size_t>(r - 2)], lifts[static_cast<std::size_t>(r - 1)]);
        // split sq = sum_s x_s^{a_s} * chi_s, assigning each monomial to the
        // smallest variable whose pure power divides it
        std::vector<ambient::PolyMat<F>> parts(static_cast<std::size_t>(c),
                                               ambient::PolyMat<F>(sq.rows, sq.cols));
        for (int rr = 0; rr < sq.rows; ++rr)
            for (int cc = 0; cc < sq.cols; ++cc)
                for (const auto& [m, coeff] : sq(rr, cc)) {
                    int s = -1;
                    for (int v = 0; v < c; ++v)
                        if (m[static_cast<std::size_t>(v)] >= A.bound[static_cast<std::size_t>(v)]) { s = v; break; }
                    if (s < 0)
                        throw consistency_error("eisenbud: d^2 has a term outside the relation ideal");
                    std::vector<int> q = m;
                    q[static_cast<std::size_t>(s)] -= A.bound[static_cast<std::size_t>(s)];
                    ambient::poly_acc(f, parts[static_cast<std::size_t>(s)](rr, cc), q, coeff);
                }
        // residual check: sum_s x_s^{a_s} parts_s must reproduce sq exactly
        {
            ambient::PolyMat<F> acc(sq.rows, sq.cols);
            for (int s = 0; s < c; ++s) {
                std::vector<int> pw(static_cast<std::size_t>(c), 0);
                pw[static_cast<std::size_t>(s)] = A.bound[static_cast<std::size_t>(s)];
                for (int rr = 0; rr < sq.rows; ++rr)
                    for (int cc = 0; cc < sq.cols; ++cc)
                        for (const auto& [m, coeff] : parts[static_cast<std::size_t>(s)](rr, cc)) {
                            std::vector<int> mm(m);
                            for (int v = 0; v < c; ++v) mm[static_cast<std::size_t>(v)] += pw[static_cast<std::size_t>(v)];
                            ambient::poly_acc(f, acc(rr, cc), mm, coeff);
                        }
            }
            for (int rr = 0; rr < sq.rows; ++rr)
                for (int cc = 0; cc < sq.cols; ++cc) {
                    auto diff = sq(rr, cc);
                    for (const auto& [m, coeff] : acc(rr, cc)) ambient::poly_acc(f, diff, m, f.neg(coeff));
                    if (!diff.empty()) throw consistency_error("eisenbud: coefficient split failed");
                }
        }
        // reduce each part into B and expand to a k-matrix block
        for (int s = 0; s < c; ++s) {
            Mat<E<F>> blk(P->kdim(-r + 2), P->kdim(-r));
            for (int rr = 0; rr < sq.rows; ++rr)
                for (int cc = 0; cc < sq.cols; ++cc) {
                    AElt<F> entry = aelt_zero(A);
                    for (const auto& [m, coeff] : parts[static_cast<std::size_t>(s)](rr, cc)) {
                        int idx = A.killed(m) ? -1 : A.index.at(m);
                        if (idx >= 0) entry.c[static_cast<std::size_t>(idx)] = f.add(entry.c[static_cast<std::size_t>(idx)], coeff);
                    }
                    if (!aelt_is_zero(A, entry)) set_block(blk, rr * da, cc * da, reg->act(entry));
                }
            chi_comps[static_cast<std::size_t>(s)][static_cast<std::size_t>(-r - P->lo)] = std::move(blk);
        }
    }

    EisenbudOperators<F> out;
    out.P = P;
    for (int s = 0; s < c; ++s) {
        CentralElement<F> chi;
        chi.kind = CentralElement<F>::Kind::Eisenbud;
        chi.name = "chi_" + A.vars[static_cast<std::size_t>(s)];
        chi.degree = 2;
        chi.ci_index = s + 1;
        chi.table.emplace(P->uid,
                          make_chain_map(P, P, 2, std::move(chi_comps[static_cast<std::size_t>(s)])));
        out.chis.push_back(std::move(chi));
    }
    return out;
}

template <class F>
CentralElement<F> eisenbud_operator(const Ring<F>& ring, int i, const Resolution<F>& res) {
    const int c = ring.is_quotient() ? ring.alg->nvars() : 0;
    if (i < 1 || i > c) throw input_error("eisenbud: operator index out of range 1..c");
    auto all = eisenbud_operators(ring, res);
    return all.chis[static_cast<std::size_t>(i - 1)];
}

// ---------------------------------------------------------------------------
// Ext actions: the matrix of H^n(induced map) between homology spaces.

template <class F>
Mat<E<F>> induced_on_homology(const ChainMap<F>& g, int n) {
    static_assert(F::is_field);
    const F& f = g.X->ring.f;
    auto Hs = homology_k(g.X, n);
    auto Ht = homology_k(g.Y, n + g.deg);
    Mat<E<F>> m(Ht.dim, Hs.dim);
    for (int j = 0; j < Hs.dim; ++j) {
        auto img = linalg::mul(f, g.comp(n), column(Hs.reps, j));
        auto cls = Ht.class_of(f, img);
        for (int i = 0; i < Ht.dim; ++i) m(i, j) = cls[static_cast<std::size_t>(i)];
    }
    return m;
}

// Ext_B(k, k) in a window, with the chi actions, all computed through the
// Hom complex of the resolution.
template <class F>
struct ExtOfK {
    Resolution<F> res;
    CxPtr<F> k;
    HomComplex<F> hom;
    std::vector<int> dims;                    // dims[n] = dim Ext^n, 0 <= n <= top
    std::vector<std::vector<Mat<E<F>>>> chi_action; // chi_action[s][n] : Ext^n -> Ext^{n+2}
    std::vector<CentralElement<F>> chis;
    int top = 0;
};

template <class F>
ExtOfK<F> ext_of_k(const Ring<F>& ring, int window_top) {
    ExtOfK<F> out;
    out.res = minimal_resolution(ring, residue_field_module(ring.alg), window_top + 2);
    out.k = concentrated(ring, 0, Term<F>{0, residue_field_module(ring.alg)});
    out.hom = hom_complex(out.res.P, out.k);
    out.top = window_top;
    auto ops = eisenbud_operators(ring, out.res);
    out.chis = ops.chis;
    for (int n = 0; n <= window_top; ++n) out.dims.push_back(homology_k(out.hom.cx, n).dim);
    for (const auto& chi : out.chis) {
        auto induced = hom_induced_pre(out.hom, out.hom, act(chi, out.res.P));
        std::vector<Mat<E<F>>> per_degree;
        for (int n = 0; n + 2 <= window_top; ++n) per_degree.push_back(induced_on_homology(induced, n));
        out.chi_action.push_back(std::move(per_degree));
    }
    return out;
}

} // namespace koszul
