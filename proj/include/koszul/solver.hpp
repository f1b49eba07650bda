#pragma once

#include <map>

#include "koszul/complex.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Parametrization of Hom_A(S, T) for two terms.  Free-to-free maps are
// parametrized by their A-matrix entries (one parameter per generator pair and
// basis monomial), which keeps solver systems dim(A)^2 times smaller than raw
// k-matrices and makes A-linearity automatic.  Maps out of a presented module
// fall back to a commutant basis.

template <class F>
struct HomSpace {
    int src_dim = 0, dst_dim = 0;
    std::vector<SparseMat<E<F>>> basis;
    // coordinate extraction data
    enum class Mode { FreeFree, FreeToPres, Commutant } mode = Mode::FreeFree;
    int src_rank = 0, dst_rank = 0, alg_dim = 1;
    Mat<E<F>> basis_cols; // Commutant mode: vec'd basis elements as columns

    int dim() const { return static_cast<int>(basis.size()); }

    Mat<E<F>> from_coords(const F& f, const std::vector<E<F>>& c, int offset) const {
        Mat<E<F>> m(dst_dim, src_dim);
        for (int p = 0; p < dim(); ++p) {
            const auto& v = c[static_cast<std::size_t>(offset + p)];
            if (f.is_zero(v)) continue;
            for (const auto& ent : basis[p].entries)
                m(ent.r, ent.c) = f.add(m(ent.r, ent.c), f.mul(v, ent.v));
        }
        return m;
    }

    std::vector<E<F>> coords(const F& f, const Mat<E<F>>& m) const {
        std::vector<E<F>> c(dim(), f.zero());
        if (mode == Mode::FreeFree) {
            // parameter (h, g, j) reads off column g*algdim (image of generator g)
            int p = 0;
            for (int h = 0; h < dst_rank; ++h)
                for (int g = 0; g < src_rank; ++g)
                    for (int j = 0; j < alg_dim; ++j) c[p++] = m(h * alg_dim + j, g * alg_dim);
        } else if (mode == Mode::FreeToPres) {
            int p = 0;
            for (int g = 0; g < src_rank; ++g)
                for (int v = 0; v < dst_dim; ++v) c[p++] = m(v, g * alg_dim);
        } else {
            Mat<E<F>> rhs(src_dim * dst_dim, 1);
            for (int r = 0; r < dst_dim; ++r)
                for (int cc = 0; cc < src_dim; ++cc) rhs(r * src_dim + cc, 0) = m(r, cc);
            auto res = linalg::solve(f, basis_cols, rhs);
            if (!res.ok()) throw consistency_error("HomSpace::coords: map not in the span");
            for (int p = 0; p < dim(); ++p) c[p] = (*res.x)(p, 0);
        }
        return c;
    }
};

template <class F>
HomSpace<F> hom_space(const Ring<F>& ring, const Term<F>& S, const Term<F>& T) {
    const F& f = ring.f;
    HomSpace<F> H;
    H.src_dim = term_kdim(ring, S);
    H.dst_dim = term_kdim(ring, T);
    if (H.src_dim == 0 || H.dst_dim == 0) return H;
    const int da = ring.is_quotient() ? ring.alg->dim() : 1;
    H.alg_dim = da;

    if (S.is_free() && T.is_free()) {
        H.mode = HomSpace<F>::Mode::FreeFree;
        H.src_rank = static_cast<int>(S.rank);
        H.dst_rank = static_cast<int>(T.rank);
        if (!ring.is_quotient()) {
            // plain matrices: one parameter per entry
            for (int h = 0; h < H.dst_rank; ++h)
                for (int g = 0; g < H.src_rank; ++g) {
                    SparseMat<E<F>> b;
                    b.rows = H.dst_dim;
                    b.cols = H.src_dim;
                    b.entries.push_back({h, g, f.one()});
                    H.basis.push_back(std::move(b));
                }
            return H;
        }
        const auto& A = *ring.alg;
        for (int h = 0; h < H.dst_rank; ++h)
            for (int g = 0; g < H.src_rank; ++g)
                for (int j = 0; j < da; ++j) {
                    // E_{hg} (x) rho(m_j)
                    SparseMat<E<F>> b;
                    b.rows = H.dst_dim;
                    b.cols = H.src_dim;
                    for (int col = 0; col < da; ++col) {
                        std::vector<int> e(A.nvars());
                        for (int t = 0; t < A.nvars(); ++t) e[t] = A.basis[j][t] + A.basis[col][t];
                        int row = A.monomial_index(e);
                        if (row >= 0) b.entries.push_back({h * da + row, g * da + col, f.one()});
                    }
                    H.basis.push_back(std::move(b));
                }
        return H;
    }

    if (S.is_free() && T.pres) {
        // Hom_A(A^a, V) = V^a: generator g |-> basis vector v
        H.mode = HomSpace<F>::Mode::FreeToPres;
        H.src_rank = static_cast<int>(S.rank);
        const auto& A = *ring.alg;
        const auto& V = *T.pres;
        for (int g = 0; g < H.src_rank; ++g)
            for (int v = 0; v < V.dim; ++v) {
                SparseMat<E<F>> b;
                b.rows = H.dst_dim;
                b.cols = H.src_dim;
                for (int j = 0; j < da; ++j) {
                    auto act = V.act_monomial(A.basis[j]);
                    for (int r = 0; r < V.dim; ++r)
                        if (!f.is_zero(act(r, v))) b.entries.push_back({r, g * da + j, act(r, v)});
                }
                H.basis.push_back(std::move(b));
            }
        return H;
    }

    // presented source: commutant nullspace
    H.mode = HomSpace<F>::Mode::Commutant;
    auto so = term_ops(ring, S);
    auto to = term_ops(ring, T);
    const int nv = static_cast<int>(so.size());
    const int nunk = H.src_dim * H.dst_dim; // M(r, c), index r*src_dim + c
    Mat<E<F>> sys(nv * nunk, nunk);
    int row = 0;
    for (int v = 0; v < nv; ++v) {
        // (M rho_S(v) - rho_T(v) M)(r, c) = 0
        for (int r = 0; r < H.dst_dim; ++r)
            for (int c = 0; c < H.src_dim; ++c) {
                for (int k = 0; k < H.src_dim; ++k)
                    sys(row, r * H.src_dim + k) = f.add(sys(row, r * H.src_dim + k), so[v](k, c));
                for (int k = 0; k < H.dst_dim; ++k)
                    sys(row, k * H.src_dim + c) =
                        f.sub(sys(row, k * H.src_dim + c), to[v](r, k));
                ++row;
            }
    }
    auto K = linalg::kernel_basis(f, sys);
    H.basis_cols = K;
    for (int p = 0; p < K.cols; ++p) {
        SparseMat<E<F>> b;
        b.rows = H.dst_dim;
        b.cols = H.src_dim;
        for (int r = 0; r < H.dst_dim; ++r)
            for (int c = 0; c < H.src_dim; ++c)
                if (!f.is_zero(K(r * H.src_dim + c, p))) b.entries.push_back({r, c, K(r * H.src_dim + c, p)});
        H.basis.push_back(std::move(b));
    }
    return H;
}

// ---------------------------------------------------------------------------
// The homotopy solver: decide d h + (-1)^deg h d = f - g as one exact linear
// system over the coefficient backend.  Solutions are re-verified; failures
// carry a Fredholm dual certificate for the exact (sub)system that failed, so
// "non-null-homotopic" claims are independently checkable.

template <class F>
struct HomotopyOutcome {
    std::optional<Homotopy<F>> h;
    DegreeWindow equations;              // which degrees were constrained
    std::vector<linalg::Dual<F>> dual;   // infeasibility certificate when !h
    bool ok() const { return h.has_value(); }
};

namespace detail {

template <class F>
struct HtpySystem {
    std::vector<int> unk_deg;     // unknown block degrees
    std::vector<HomSpace<F>> spaces;
    std::vector<int> unk_off;
    int nunk = 0;
    std::vector<int> eq_deg;
    std::vector<int> eq_off;
    std::vector<int> eq_rows, eq_cols;
    int neq = 0;
};

// 1-dimensional layout of the equation block at degree n (row-major matrices)
template <class F>
void build_homotopy_system(const ChainMap<F>& f, const ChainMap<F>& g, DegreeWindow eqw,
                           HtpySystem<F>& S, Mat<E<F>>& A, Mat<E<F>>& b) {
    const auto& X = f.X;
    const auto& Y = f.Y;
    const F& ff = X->ring.f;
    const int d = f.deg;
    const bool odd = d % 2 != 0;

    for (int n = eqw.lo; n <= eqw.hi + 1 && n <= X->hi; ++n) {
        if (n < X->lo) continue;
        HomSpace<F> hs = hom_space(X->ring, X->term(n), Y->term(n + d - 1));
        if (hs.dim() == 0) continue;
        S.unk_deg.push_back(n);
        S.unk_off.push_back(S.nunk);
        S.nunk += hs.dim();
        S.spaces.push_back(std::move(hs));
    }
    for (int n = eqw.lo; n <= eqw.hi; ++n) {
        int rows = Y->kdim(n + d), cols = X->kdim(n);
        if (rows * cols == 0) continue;
        S.eq_deg.push_back(n);
        S.eq_off.push_back(S.neq);
        S.eq_rows.push_back(rows);
        S.eq_cols.push_back(cols);
        S.neq += rows * cols;
    }

    A = Mat<E<F>>(S.neq, S.nunk);
    b = Mat<E<F>>(S.neq, 1);

    auto eq_index = [&](int n) {
        for (std::size_t i = 0; i < S.eq_deg.size(); ++i)
            if (S.eq_deg[i] == n) return static_cast<int>(i);
        return -1;
    };

    for (std::size_t ub = 0; ub < S.unk_deg.size(); ++ub) {
        const int n = S.unk_deg[ub];
        const auto& hs = S.spaces[ub];
        // equation at n: + d_Y^{n+d-1} * H_n
        int ei = eq_index(n);
        if (ei >= 0) {
            auto dY = Y->dmat(n + d - 1);
            const int cols = S.eq_cols[static_cast<std::size_t>(ei)];
            for (int p = 0; p < hs.dim(); ++p)
                for (const auto& ent : hs.basis[p].entries)
                    for (int i = 0; i < dY.rows; ++i) {
                        if (ff.is_zero(dY(i, ent.r))) continue;
                        int row = S.eq_off[static_cast<std::size_t>(ei)] + i * cols + ent.c;
                        A(row, S.unk_off[ub] + p) =
                            ff.add(A(row, S.unk_off[ub] + p), ff.mul(dY(i, ent.r), ent.v));
                    }
        }
        // equation at n-1: + (-1)^d H_n * d_X^{n-1}
        ei = eq_index(n - 1);
        if (ei >= 0) {
            auto dX = X->dmat(n - 1);
            const int cols = S.eq_cols[static_cast<std::size_t>(ei)];
            for (int p = 0; p < hs.dim(); ++p)
                for (const auto& ent : hs.basis[p].entries)
                    for (int j = 0; j < dX.cols; ++j) {
                        if (ff.is_zero(dX(ent.c, j))) continue;
                        int row = S.eq_off[static_cast<std::size_t>(ei)] + ent.r * cols + j;
                        E<F> contrib = ff.mul(ent.v, dX(ent.c, j));
                        if (odd) contrib = ff.neg(contrib);
                        A(row, S.unk_off[ub] + p) = ff.add(A(row, S.unk_off[ub] + p), contrib);
                    }
        }
    }
    for (std::size_t e = 0; e < S.eq_deg.size(); ++e) {
        const int n = S.eq_deg[e];
        auto rhs = linalg::sub(ff, f.comp(n), g.comp(n));
        const int cols = S.eq_cols[e];
        for (int i = 0; i < rhs.rows; ++i)
            for (int j = 0; j < cols; ++j) b(S.eq_off[e] + i * cols + j, 0) = rhs(i, j);
    }
}

} // namespace detail

// Restricting the equation window is sound for NEGATIVE answers: any global
// homotopy restricts to a solution of the subsystem, so an infeasible
// subsystem certifies the maps are not homotopic.
template <class F>
HomotopyOutcome<F> homotopy_solve(const ChainMap<F>& f, const ChainMap<F>& g,
                                  std::optional<DegreeWindow> eq_window = std::nullopt) {
    if (f.X->uid != g.X->uid && f.X->total_kdim() != g.X->total_kdim())
        throw input_error("homotopy_solve: maps not parallel");
    if (f.deg != g.deg) throw input_error("homotopy_solve: degree mismatch");
    const auto& X = f.X;
    DegreeWindow eqw = eq_window.value_or(DegreeWindow{X->lo, X->hi});
    if (eqw.empty()) eqw = DegreeWindow{X->lo, X->hi};

    detail::HtpySystem<F> S;
    Mat<E<F>> A, b;
    detail::build_homotopy_system(f, g, eqw, S, A, b);

    HomotopyOutcome<F> out;
    out.equations = eqw;
    auto res = linalg::solve(X->ring.f, A, b);
    if (!res.ok()) {
        out.dual = std::move(res.dual);
        return out;
    }
    std::vector<E<F>> coords(res.x->a.begin(), res.x->a.end());
    Homotopy<F> h;
    h.X = f.X;
    h.Y = f.Y;
    h.deg = f.deg;
    h.comps.assign(static_cast<std::size_t>(X->hi - X->lo + 1), Mat<E<F>>());
    for (int n = X->lo; n <= X->hi; ++n)
        h.comps[static_cast<std::size_t>(n - X->lo)] =
            Mat<E<F>>(f.Y->kdim(n + f.deg - 1), X->kdim(n));
    for (std::size_t ub = 0; ub < S.unk_deg.size(); ++ub) {
        int n = S.unk_deg[ub];
        h.comps[static_cast<std::size_t>(n - X->lo)] =
            S.spaces[ub].from_coords(X->ring.f, coords, S.unk_off[ub]);
    }
    // full-window solves must reproduce f - g exactly; re-verify
    bool full = eqw.lo <= X->lo && eqw.hi >= X->hi;
    if (full && !homotopy_witnesses(h, f, g))
        throw consistency_error("homotopy_solve: solution failed re-verification");
    out.h = std::move(h);
    return out;
}

template <class F>
HomotopyOutcome<F> null_homotopy(const ChainMap<F>& f,
                                 std::optional<DegreeWindow> eq_window = std::nullopt) {
    return homotopy_solve(f, zero_map(f.X, f.Y, f.deg), eq_window);
}

template <class F>
bool homotopic(const ChainMap<F>& f, const ChainMap<F>& g) {
    return homotopy_solve(f, g).ok();
}

// Widening strategy for honest "non-zero in the homotopy category" verdicts:
// try small equation windows first (an infeasible subsystem already certifies
// non-vanishing), fall back to the full window.
template <class F>
HomotopyOutcome<F> null_homotopy_widening(const ChainMap<F>& f) {
    const int lo = f.X->lo, hi = f.X->hi;
    const int span = hi - lo;
    for (int radius = 2; radius < span; radius += 3) {
        DegreeWindow w{hi - radius, hi};
        auto out = null_homotopy(f, w);
        if (!out.ok()) return out;
        w = DegreeWindow{lo, lo + radius};
        out = null_homotopy(f, w);
        if (!out.ok()) return out;
    }
    return null_homotopy(f);
}

// ---------------------------------------------------------------------------
// Homotopy equivalence: given phi : X -> Y, search jointly for psi and both
// homotopies.  The conditions
//     psi phi - id_X = d hX + hX d,   phi psi - id_Y = d hY + hY d
// are linear in (psi, hX, hY).

template <class F>
struct EquivalenceData {
    ChainMap<F> fwd, bwd;       // phi, psi
    Homotopy<F> on_src, on_tgt; // bwd o fwd ~ id_X, fwd o bwd ~ id_Y
};

template <class F>
std::optional<EquivalenceData<F>> homotopy_inverse(const ChainMap<F>& phi) {
    if (phi.deg != 0) throw input_error("homotopy_inverse: degree-0 maps only");
    const auto& X = phi.X;
    const auto& Y = phi.Y;
    const F& ff = X->ring.f;

    struct Block {
        char kind; // 'p' = psi_n, 'x' = hX_n, 'y' = hY_n
        int n;
        HomSpace<F> hs;
        int off;
    };
    std::vector<Block> blocks;
    int nunk = 0;
    auto add_block = [&](char kind, int n, HomSpace<F> hs) {
        if (hs.dim() == 0) return;
        int off = nunk;
        nunk += hs.dim();
        blocks.push_back(Block{kind, n, std::move(hs), off});
    };
    for (int n = Y->lo; n <= Y->hi; ++n) add_block('p', n, hom_space(X->ring, Y->term(n), X->term(n)));
    for (int n = X->lo; n <= X->hi; ++n)
        add_block('x', n, hom_space(X->ring, X->term(n), X->term(n - 1)));
    for (int n = Y->lo; n <= Y->hi; ++n)
        add_block('y', n, hom_space(X->ring, Y->term(n), Y->term(n - 1)));

    // equations: E1(n): psi_{n} phi_n - dX hX_n - hX_{n+1} dX = id at degree n (X side)
    //            E2(n): phi_n psi_n - dY hY_n - hY_{n+1} dY = id at degree n (Y side)
    //            E3(n): psi must be a chain map: dX psi_n - psi_{n+1} dY = 0
    std::vector<std::pair<char, int>> eqs;
    std::vector<int> eq_off, eq_rows, eq_cols;
    int neq = 0;
    auto add_eq = [&](char kind, int n, int rows, int cols) {
        if (rows * cols == 0) return;
        eqs.push_back({kind, n});
        eq_off.push_back(neq);
        eq_rows.push_back(rows);
        eq_cols.push_back(cols);
        neq += rows * cols;
    };
    for (int n = X->lo; n <= X->hi; ++n) add_eq('1', n, X->kdim(n), X->kdim(n));
    for (int n = Y->lo; n <= Y->hi; ++n) add_eq('2', n, Y->kdim(n), Y->kdim(n));
    for (int n = Y->lo; n <= Y->hi; ++n) add_eq('3', n, X->kdim(n + 1), Y->kdim(n));

    Mat<E<F>> A(neq, nunk), b(neq, 1);
    auto eqid = [&](char kind, int n) {
        for (std::size_t i = 0; i < eqs.size(); ++i)
            if (eqs[i].first == kind && eqs[i].second == n) return static_cast<int>(i);
        return -1;
    };
    auto accumulate = [&](int ei, int col, const Mat<E<F>>& m, bool negate) {
        if (ei < 0) return;
        const int cols = eq_cols[static_cast<std::size_t>(ei)];
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c) {
                if (ff.is_zero(m(r, c))) continue;
                int row = eq_off[static_cast<std::size_t>(ei)] + r * cols + c;
                A(row, col) = negate ? ff.sub(A(row, col), m(r, c)) : ff.add(A(row, col), m(r, c));
            }
    };

    for (const auto& blk : blocks) {
        for (int p = 0; p < blk.hs.dim(); ++p) {
            Mat<E<F>> B = blk.hs.basis[p].dense();
            const int col = blk.off + p;
            if (blk.kind == 'p') {
                // psi_n : Y^n -> X^n
                accumulate(eqid('1', blk.n), col, linalg::mul(ff, B, phi.comp(blk.n)), false);
                accumulate(eqid('2', blk.n), col, linalg::mul(ff, phi.comp(blk.n), B), false);
                accumulate(eqid('3', blk.n), col, linalg::mul(ff, X->dmat(blk.n), B), false);
                accumulate(eqid('3', blk.n - 1), col, linalg::mul(ff, B, Y->dmat(blk.n - 1)), true);
            } else if (blk.kind == 'x') {
                accumulate(eqid('1', blk.n), col, linalg::mul(ff, X->dmat(blk.n - 1), B), true);
                accumulate(eqid('1', blk.n - 1), col, linalg::mul(ff, B, X->dmat(blk.n - 1)), true);
            } else {
                accumulate(eqid('2', blk.n), col, linalg::mul(ff, Y->dmat(blk.n - 1), B), true);
                accumulate(eqid('2', blk.n - 1), col, linalg::mul(ff, B, Y->dmat(blk.n - 1)), true);
            }
        }
    }
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        if (eqs[i].first == '3') continue;
        const int cols = eq_cols[i];
        for (int r = 0; r < eq_rows[i]; ++r) b(eq_off[i] + r * cols + r, 0) = ff.one();
    }

    auto res = linalg::solve(ff, A, b);
    if (!res.ok()) return std::nullopt;
    std::vector<E<F>> coords(res.x->a.begin(), res.x->a.end());

    EquivalenceData<F> eq;
    eq.fwd = phi;
    std::vector<Mat<E<F>>> psi, hx, hy;
    for (int n = Y->lo; n <= Y->hi; ++n) psi.push_back(Mat<E<F>>(X->kdim(n), Y->kdim(n)));
    for (int n = X->lo; n <= X->hi; ++n) hx.push_back(Mat<E<F>>(X->kdim(n - 1), X->kdim(n)));
    for (int n = Y->lo; n <= Y->hi; ++n) hy.push_back(Mat<E<F>>(Y->kdim(n - 1), Y->kdim(n)));
    for (const auto& blk : blocks) {
        auto m = blk.hs.from_coords(ff, coords, blk.off);
        if (blk.kind == 'p') psi[static_cast<std::size_t>(blk.n - Y->lo)] = std::move(m);
        else if (blk.kind == 'x') hx[static_cast<std::size_t>(blk.n - X->lo)] = std::move(m);
        else hy[static_cast<std::size_t>(blk.n - Y->lo)] = std::move(m);
    }
    eq.bwd = make_chain_map(Y, X, 0, std::move(psi));
    eq.on_src = Homotopy<F>{X, X, 0, std::move(hx)};
    eq.on_tgt = Homotopy<F>{Y, Y, 0, std::move(hy)};
    if (!homotopy_witnesses(eq.on_src, compose(eq.bwd, eq.fwd), identity_map(X)))
        throw consistency_error("homotopy_inverse: src homotopy failed re-verification");
    if (!homotopy_witnesses(eq.on_tgt, compose(eq.fwd, eq.bwd), identity_map(Y)))
        throw consistency_error("homotopy_inverse: tgt homotopy failed re-verification");
    return eq;
}

template <class F>
bool is_contractible(const CxPtr<F>& X) {
    return null_homotopy(identity_map(X)).ok();
}

} // namespace koszul
