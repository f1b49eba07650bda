#pragma once

#include "koszul/homology.hpp"
#include "koszul/solver.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// The Hom complex Hom_A(C, M) over the coefficient backend:
//   Hom^n = (+)_i Hom_A(C^i, M^{i+n}),   D(phi) = d_M phi - (-1)^n phi d_C.
// Its n-th homology computes Hom_{K(A)}(C, Sigma^n M), which is the derived
// Hom when C has projective terms.

template <class F>
Ring<F> coefficient_ring(const F& f) {
    if constexpr (F::is_integers) {
        (void)f;
        return Ring<F>::integers();
    } else {
        return Ring<F>::field(f);
    }
}

template <class F>
struct HomComplex {
    CxPtr<F> C, M;
    CxPtr<F> cx; // complex of free terms over the coefficient backend
    struct Piece {
        int i;      // source degree
        int offset; // coordinate offset inside the term
        int dim;
    };
    std::map<int, std::vector<Piece>> pieces;          // per hom-degree n
    std::map<std::pair<int, int>, HomSpace<F>> spaces; // (i, i+n) -> Hom_A(C^i, M^{i+n})

    int lo() const { return cx->lo; }
    int hi() const { return cx->hi; }

    const HomSpace<F>& space(int i, int j) const { return spaces.at({i, j}); }

    // realize coordinates of Hom^n as a degree-n chain map C -> M (only valid
    // on cycles; callers check)
    ChainMap<F> to_chain_map(int n, const std::vector<E<F>>& coords) const {
        std::vector<Mat<E<F>>> comps;
        for (int i = C->lo; i <= C->hi; ++i) comps.push_back(Mat<E<F>>(M->kdim(i + n), C->kdim(i)));
        auto it = pieces.find(n);
        if (it != pieces.end())
            for (const auto& p : it->second) {
                const auto& hs = space(p.i, p.i + n);
                std::vector<E<F>> local(coords.begin() + p.offset,
                                        coords.begin() + p.offset + p.dim);
                comps[static_cast<std::size_t>(p.i - C->lo)] = hs.from_coords(C->ring.f, local, 0);
            }
        return make_chain_map(C, M, n, std::move(comps), false);
    }

    // coordinates of the degreewise components of a degree-n map C -> M
    Mat<E<F>> coords_of(const ChainMap<F>& g) const {
        const int n = g.deg;
        auto it = pieces.find(n);
        int total = cx->kdim(n);
        Mat<E<F>> v(total, 1);
        if (it == pieces.end()) return v;
        for (const auto& p : it->second) {
            auto c = space(p.i, p.i + n).coords(C->ring.f, g.comp(p.i));
            for (int k = 0; k < p.dim; ++k) v(p.offset + k, 0) = c[static_cast<std::size_t>(k)];
        }
        return v;
    }
};

template <class F>
HomComplex<F> hom_complex(const CxPtr<F>& C, const CxPtr<F>& M) {
    if (!C->ring.same_as(M->ring)) throw input_error("hom_complex: mismatched base rings");
    HomComplex<F> H;
    H.C = C;
    H.M = M;
    const F& f = C->ring.f;
    const int nlo = M->lo - C->hi, nhi = M->hi - C->lo;
    Ring<F> base = coefficient_ring(f);

    std::vector<Term<F>> terms;
    std::vector<int> dims;
    for (int n = nlo; n <= nhi; ++n) {
        int off = 0;
        std::vector<typename HomComplex<F>::Piece> ps;
        for (int i = C->lo; i <= C->hi; ++i) {
            auto key = std::make_pair(i, i + n);
            auto hs = hom_space(C->ring, C->term(i), M->term(i + n));
            int d = hs.dim();
            H.spaces.emplace(key, std::move(hs));
            if (d > 0) {
                ps.push_back({i, off, d});
                off += d;
            }
        }
        H.pieces[n] = std::move(ps);
        terms.push_back(Term<F>{off, nullptr});
        dims.push_back(off);
    }

    std::vector<Mat<E<F>>> diffs;
    for (int n = nlo; n < nhi; ++n) {
        Mat<E<F>> D(dims[static_cast<std::size_t>(n + 1 - nlo)], dims[static_cast<std::size_t>(n - nlo)]);
        const bool odd = n % 2 != 0;
        for (const auto& p : H.pieces[n]) {
            const auto& hs = H.space(p.i, p.i + n);
            // locate target pieces
            const typename HomComplex<F>::Piece* tgt_same = nullptr;  // (i, i+n+1)
            const typename HomComplex<F>::Piece* tgt_prev = nullptr;  // (i-1, i+n)
            for (const auto& q : H.pieces[n + 1]) {
                if (q.i == p.i) tgt_same = &q;
                if (q.i == p.i - 1) tgt_prev = &q;
            }
            for (int b = 0; b < p.dim; ++b) {
                Mat<E<F>> phi = hs.basis[static_cast<std::size_t>(b)].dense();
                if (tgt_same) {
                    auto img = linalg::mul(f, M->dmat(p.i + n), phi);
                    auto c = H.space(p.i, p.i + n + 1).coords(f, img);
                    for (int k = 0; k < tgt_same->dim; ++k)
                        D(tgt_same->offset + k, p.offset + b) = c[static_cast<std::size_t>(k)];
                }
                if (tgt_prev) {
                    auto img = linalg::mul(f, phi, C->dmat(p.i - 1));
                    auto c = H.space(p.i - 1, p.i + n).coords(f, img);
                    for (int k = 0; k < tgt_prev->dim; ++k) {
                        E<F> v = c[static_cast<std::size_t>(k)];
                        if (!odd) v = f.neg(v); // -(-1)^n phi d_C
                        D(tgt_prev->offset + k, p.offset + b) =
                            f.add(D(tgt_prev->offset + k, p.offset + b), v);
                    }
                }
            }
        }
        diffs.push_back(std::move(D));
    }
    H.cx = make_complex(base, nlo, std::move(terms), std::move(diffs));
    return H;
}

// Post-composition with g : M -> N of degree e induces a degree-e chain map
// Hom(C, M) -> Hom(C, N).
template <class F>
ChainMap<F> hom_induced_post(const HomComplex<F>& src, const HomComplex<F>& dst,
                             const ChainMap<F>& g) {
    const F& f = src.C->ring.f;
    const int e = g.deg;
    std::vector<Mat<E<F>>> comps;
    for (int n = src.lo(); n <= src.hi(); ++n) {
        Mat<E<F>> m(dst.cx->kdim(n + e), src.cx->kdim(n));
        auto itS = src.pieces.find(n);
        auto itD = dst.pieces.find(n + e);
        if (itS != src.pieces.end() && itD != dst.pieces.end()) {
            for (const auto& p : itS->second) {
                const typename HomComplex<F>::Piece* q = nullptr;
                for (const auto& qq : itD->second)
                    if (qq.i == p.i) q = &qq;
                if (!q) continue;
                const auto& hs = src.space(p.i, p.i + n);
                for (int b = 0; b < p.dim; ++b) {
                    auto img = linalg::mul(f, g.comp(p.i + n), hs.basis[static_cast<std::size_t>(b)].dense());
                    auto c = dst.space(p.i, p.i + n + e).coords(f, img);
                    for (int k = 0; k < q->dim; ++k) m(q->offset + k, p.offset + b) = c[static_cast<std::size_t>(k)];
                }
            }
        }
        comps.push_back(std::move(m));
    }
    return make_chain_map(src.cx, dst.cx, e, std::move(comps), false);
}

// Pre-composition with u : C' -> C of degree e induces a degree-e chain map
// Hom(C, M) -> Hom(C', M).
template <class F>
ChainMap<F> hom_induced_pre(const HomComplex<F>& src, const HomComplex<F>& dst,
                            const ChainMap<F>& u) {
    const F& f = src.C->ring.f;
    const int e = u.deg;
    std::vector<Mat<E<F>>> comps;
    for (int n = src.lo(); n <= src.hi(); ++n) {
        Mat<E<F>> m(dst.cx->kdim(n + e), src.cx->kdim(n));
        auto itS = src.pieces.find(n);
        auto itD = dst.pieces.find(n + e);
        if (itS != src.pieces.end() && itD != dst.pieces.end()) {
            for (const auto& p : itS->second) {
                // phi : C^{p.i} -> M^{p.i+n} becomes phi o u : C'^{p.i-e} -> M^{p.i+n}
                const typename HomComplex<F>::Piece* q = nullptr;
                for (const auto& qq : itD->second)
                    if (qq.i == p.i - e) q = &qq;
                if (!q) continue;
                const auto& hs = src.space(p.i, p.i + n);
                for (int b = 0; b < p.dim; ++b) {
                    auto img = linalg::mul(f, hs.basis[static_cast<std::size_t>(b)].dense(), u.comp(p.i - e));
                    auto c = dst.space(p.i - e, p.i + n).coords(f, img);
                    for (int k = 0; k < q->dim; ++k) m(q->offset + k, p.offset + b) = c[static_cast<std::size_t>(k)];
                }
            }
        }
        comps.push_back(std::move(m));
    }
    return make_chain_map(src.cx, dst.cx, e, std::move(comps), false);
}

} // namespace koszul
