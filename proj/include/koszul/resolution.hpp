#pragma once

#include "koszul/homology.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Truncated minimal free resolutions over a (local) monomial quotient algebra.
// Differentials land in the radical by construction: each step surjects onto a
// kernel through a lift of a basis of K/rad K.

template <class F>
struct Resolution {
    CxPtr<F> P;               // free terms in degrees [-N, 0]
    CxPtr<F> target;          // the resolved module, concentrated in degree 0
    ChainMap<F> augmentation; // P -> target, a quasi-isomorphism on the window
    bool exact_all = false;   // the kernel vanished before the cutoff
    bool periodic = false;
    int period = 0;
    // generator-column readout of each differential (the A-matrix data),
    // index r = 1..N gives d : P^{-r} -> P^{-r+1}
    std::vector<Mat<E<F>>> gencols;
};

namespace detail {

// representatives of a basis of V / (sum of column spaces)
template <class F>
std::vector<int> complement_columns(const F& f, const Mat<E<F>>& span, int dim) {
    Mat<E<F>> W(dim, span.cols + dim);
    set_block(W, 0, 0, span);
    for (int i = 0; i < dim; ++i) W(i, span.cols + i) = f.one();
    auto ech = linalg::rref(f, W);
    std::vector<int> picked;
    for (int pc : ech.pivot_cols)
        if (pc >= span.cols) picked.push_back(pc - span.cols);
    return picked;
}

// minimal generators of a module presentation: standard basis vectors that
// descend to a basis of V / rad V
template <class F>
std::vector<int> minimal_generators(const ModulePres<F>& V) {
    const F& f = V.alg->f;
    int nv = V.alg->nvars();
    Mat<E<F>> rad(V.dim, nv * V.dim);
    for (int v = 0; v < nv; ++v) set_block(rad, 0, v * V.dim, V.ops[static_cast<std::size_t>(v)]);
    return complement_columns(f, rad, V.dim);
}

// the A-linear surjection A^mu -> V sending generator g to V-basis vector gens[g]
template <class F>
Mat<E<F>> cover_map(const ModulePres<F>& V, const std::vector<int>& gens) {
    const auto& A = *V.alg;
    const F& f = A.f;
    const int da = A.dim();
    Mat<E<F>> eps(V.dim, static_cast<int>(gens.size()) * da);
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (int j = 0; j < da; ++j) {
            auto act = V.act_monomial(A.basis[static_cast<std::size_t>(j)]);
            for (int r = 0; r < V.dim; ++r)
                eps(r, static_cast<int>(g) * da + j) = act(r, gens[g]);
        }
    (void)f;
    return eps;
}

// kernel of an A-linear map from a free module, as a module presentation plus
// the inclusion matrix into the free k-basis
template <class F>
std::pair<std::shared_ptr<const ModulePres<F>>, Mat<E<F>>>
kernel_module(const Ring<F>& ring, int rank, const Mat<E<F>>& m) {
    const F& f = ring.f;
    auto K = linalg::kernel_basis(f, m);
    auto mod = std::make_shared<ModulePres<F>>();
    mod->alg = ring.alg;
    mod->dim = K.cols;
    auto free_ops = term_ops(ring, Term<F>{rank, nullptr});
    for (const auto& op : free_ops) {
        if (K.cols == 0) {
            mod->ops.emplace_back(0, 0);
            continue;
        }
        auto img = linalg::mul(f, op, K);
        auto sol = linalg::solve(f, K, img);
        if (!sol.ok()) throw consistency_error("kernel_module: kernel not operator-invariant");
        mod->ops.push_back(std::move(*sol.x));
    }
    return {mod, K};
}

} // namespace detail

// read the A-matrix data of a free-to-free differential: the generator columns
template <class F>
Mat<E<F>> generator_columns(const Ring<F>& ring, const Mat<E<F>>& d, int src_rank) {
    const int da = ring.unit_kdim();
    Mat<E<F>> g(d.rows, src_rank);
    for (int c = 0; c < src_rank; ++c)
        for (int r = 0; r < d.rows; ++r) g(r, c) = d(r, c * da);
    return g;
}

// Tensor-product resolution of the residue field over a pure-power algebra
// k[x_1..x_c]/(x_i^{a_i}).  Generators of P^{-n} are tuples (j_1..j_c) with
// sum n; the differential multiplies coordinate i by x_i or x_i^{a_i - 1}
// according to the parity of j_i.  Minimal, with strictly commuting
// cohomology operators.
template <class F>
Resolution<F> tensor_resolution_of_k(const Ring<F>& ring, int N) {
    const auto& A = *ring.alg;
    const F& f = ring.f;
    if (!A.extra.empty()) throw input_error("tensor resolution: pure-power relations only");
    for (int b : A.bound)
        if (b < 2) throw input_error("tensor resolution: exponent bounds must be >= 2");
    const int c = A.nvars();
    const int da = A.dim();

    std::vector<std::vector<std::vector<int>>> tuples(static_cast<std::size_t>(N) + 1);
    {
        std::function<void(int, int, std::vector<int>&)> rec = [&](int i, int rem, std::vector<int>& cur) {
            if (i == c) {
                if (true) {
                    int s = 0;
                    for (int v : cur) s += v;
                    tuples[static_cast<std::size_t>(s)].push_back(cur);
                }
                return;
            }
            for (int j = 0; j <= rem; ++j) {
                cur.push_back(j);
                rec(i + 1, rem - j, cur);
                cur.pop_back();
            }
        };
        std::vector<int> cur;
        rec(0, N, cur);
    }

    auto index_of = [&](int n, const std::vector<int>& tp) {
        const auto& v = tuples[static_cast<std::size_t>(n)];
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] == tp) return static_cast<int>(i);
        throw consistency_error("tensor resolution: tuple index");
    };

    std::vector<Term<F>> terms;
    for (int n = N; n >= 0; --n) terms.push_back(Term<F>{static_cast<long>(tuples[static_cast<std::size_t>(n)].size()), nullptr});

    auto reg = regular_representation(ring.alg);
    std::vector<Mat<E<F>>> diffs;
    for (int n = N; n >= 1; --n) {
        const auto& src = tuples[static_cast<std::size_t>(n)];
        const auto& dst = tuples[static_cast<std::size_t>(n - 1)];
        Mat<E<F>> d(static_cast<int>(dst.size()) * da, static_cast<int>(src.size()) * da);
        for (std::size_t col = 0; col < src.size(); ++col) {
            int sign_count = 0;
            for (int i = 0; i < c; ++i) {
                if (src[col][static_cast<std::size_t>(i)] > 0) {
                    std::vector<int> tp = src[col];
                    tp[static_cast<std::size_t>(i)] -= 1;
                    int row = index_of(n - 1, tp);
                    const int e = src[col][static_cast<std::size_t>(i)] % 2 == 1 ? 1 : A.bound[static_cast<std::size_t>(i)] - 1;
                    std::vector<int> mono(static_cast<std::size_t>(c), 0);
                    mono[static_cast<std::size_t>(i)] = e;
                    auto blk = reg->act_monomial(mono);
                    if (sign_count % 2 == 1) blk = linalg::neg(f, blk);
                    set_block(d, row * da, static_cast<int>(col) * da, blk);
                }
                sign_count += src[col][static_cast<std::size_t>(i)];
            }
        }
        diffs.push_back(std::move(d));
    }

    Resolution<F> res;
    res.P = make_complex(ring, -N, std::move(terms), std::move(diffs));
    res.target = concentrated(ring, 0, Term<F>{0, residue_field_module(ring.alg)});
    {
        std::vector<Mat<E<F>>> comps;
        for (int n = -N; n <= 0; ++n) {
            Mat<E<F>> m(n == 0 ? 1 : 0, res.P->kdim(n));
            if (n == 0) m(0, 0) = f.one(); // coefficient of the unit monomial
            comps.push_back(std::move(m));
        }
        res.augmentation = make_chain_map(res.P, res.target, 0, std::move(comps));
    }
    for (int r = 1; r <= N; ++r)
        res.gencols.push_back(generator_columns(ring, res.P->dmat(-r), static_cast<int>(res.P->term(-r).rank)));
    // periodicity: a consecutive pair of differentials repeating an earlier pair
    for (int i = 0; i + 1 < static_cast<int>(res.gencols.size()) && !res.periodic; ++i)
        for (int j = i + 1; j + 1 < static_cast<int>(res.gencols.size()); ++j)
            if (res.gencols[static_cast<std::size_t>(i)] == res.gencols[static_cast<std::size_t>(j)] &&
                res.gencols[static_cast<std::size_t>(i + 1)] == res.gencols[static_cast<std::size_t>(j + 1)]) {
                res.periodic = true;
                res.period = j - i;
                break;
            }
    return res;
}

// Generic minimal resolution of a module presentation by kernel chasing.
template <class F>
Resolution<F> minimal_resolution(const Ring<F>& ring, std::shared_ptr<const ModulePres<F>> V0,
                                 int N) {
    if (!ring.is_quotient()) throw input_error("minimal_resolution: quotient algebra required");
    if (N < 1) throw input_error("minimal_resolution: window length must be >= 1");
    const F& f = ring.f;
    const int da = ring.alg->dim();

    // special-case the residue field over a pure-power algebra: the tensor
    // resolution is minimal and deterministic
    {
        bool is_k = V0->dim == 1 && ring.alg->extra.empty();
        for (const auto& op : V0->ops)
            if (!linalg::is_zero(f, op)) is_k = false;
        for (int b : ring.alg->bound)
            if (b < 2) is_k = false;
        if (is_k) return tensor_resolution_of_k(ring, N);
    }

    std::vector<long> ranks;
    std::vector<Mat<E<F>>> diffs_desc; // d : P^{-r} -> P^{-r+1}
    std::shared_ptr<const ModulePres<F>> K = V0;
    Mat<E<F>> incl; // inclusion of K into the previous free module's k-basis
    bool exact = false;
    Mat<E<F>> eps0;

    for (int step = 0; step <= N; ++step) {
        auto gens = detail::minimal_generators(*K);
        const int mu = static_cast<int>(gens.size());
        auto eps = detail::cover_map(*K, gens); // K-coords x (mu*da)
        if (step == 0) {
            eps0 = eps;
            ranks.push_back(mu);
        } else {
            // differential = inclusion o eps
            diffs_desc.push_back(linalg::mul(f, incl, eps));
            ranks.push_back(mu);
        }
        if (step == N) break;
        auto [ker, kincl] = detail::kernel_module(ring, mu, eps);
        if (ker->dim == 0) {
            exact = true;
            break;
        }
        K = ker;
        incl = kincl;
    }

    const int depth = static_cast<int>(ranks.size()) - 1; // highest resolved homological degree
    std::vector<Term<F>> terms;
    std::vector<Mat<E<F>>> diffs;
    for (int r = depth; r >= 0; --r) terms.push_back(Term<F>{ranks[static_cast<std::size_t>(r)], nullptr});
    for (int r = depth; r >= 1; --r) diffs.push_back(diffs_desc[static_cast<std::size_t>(r - 1)]);

    Resolution<F> res;
    res.P = make_complex(ring, -depth, std::move(terms), std::move(diffs));
    res.exact_all = exact;
    auto tgt = std::make_shared<ModulePres<F>>(*V0);
    res.target = concentrated(ring, 0, Term<F>{0, std::shared_ptr<const ModulePres<F>>(tgt)});
    {
        std::vector<Mat<E<F>>> comps;
        for (int n = -depth; n <= 0; ++n)
            comps.push_back(n == 0 ? eps0 : Mat<E<F>>(0, 0));
        res.augmentation = make_chain_map(res.P, res.target, 0, std::move(comps));
    }
    for (int r = 1; r <= depth; ++r)
        res.gencols.push_back(generator_columns(ring, res.P->dmat(-r), static_cast<int>(res.P->term(-r).rank)));
    for (int i = 0; i + 1 < static_cast<int>(res.gencols.size()) && !res.periodic; ++i)
        for (int j = i + 1; j + 1 < static_cast<int>(res.gencols.size()); ++j)
            if (res.gencols[static_cast<std::size_t>(i)] == res.gencols[static_cast<std::size_t>(j)] &&
                res.gencols[static_cast<std::size_t>(i + 1)] == res.gencols[static_cast<std::size_t>(j + 1)]) {
                res.periodic = true;
                res.period = j - i;
                break;
            }
    (void)da;
    return res;
}

// checks H^0(P) = M and H^{-i}(P) = 0 for 0 < i < N through the augmentation
template <class F>
bool resolution_is_quasi_iso_on_window(const Resolution<F>& res) {
    const F& f = res.P->ring.f;
    for (int n = res.P->lo + 1; n < 0; ++n)
        if (homology_k(res.P, n).dim != 0) return false;
    auto h0 = homology_k(res.P, 0);
    const auto& tgt = res.target->term(0);
    if (h0.dim != term_kdim(res.target->ring, tgt)) return false;
    // augmentation must identify H^0 with the module: surjectivity suffices
    auto img = linalg::mul(f, res.augmentation.comp(0), h0.reps);
    return linalg::rank(f, img) == h0.dim;
}

} // namespace koszul
