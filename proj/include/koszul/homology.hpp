#pragma once

#include "koszul/complex.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Homology of a complex at one degree, over the coefficient backend.
// Field backends carry a chosen cycle basis; the integer backend carries a
// Smith presentation (generators and invariant factors).

template <class F>
struct HomologyK {
    static_assert(F::is_field);
    int dim = 0;
    Mat<E<F>> reps;      // kdim(n) x dim, cycle representatives whose classes form a basis
    Mat<E<F>> boundaries; // image basis of the incoming differential
    Mat<E<F>> cycles;     // kernel basis of the outgoing differential

    // coordinates of the class of a cycle z in the chosen basis
    std::vector<E<F>> class_of(const F& f, const Mat<E<F>>& z) const {
        if (dim == 0) return {};
        Mat<E<F>> W(reps.rows, dim + boundaries.cols);
        set_block(W, 0, 0, reps);
        set_block(W, 0, dim, boundaries);
        auto res = linalg::solve(f, W, z);
        if (!res.ok()) throw consistency_error("class_of: vector is not a cycle mod boundaries");
        std::vector<E<F>> c(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) c[i] = (*res.x)(i, 0);
        return c;
    }

    bool is_zero_class(const F& f, const Mat<E<F>>& z) const {
        if (dim == 0) return true;
        if (boundaries.cols == 0) return linalg::is_zero(f, z);
        return linalg::solve(f, boundaries, z).ok();
    }
};

// homology of a two-map matrix complex  . --din--> V --dout--> .
template <class F>
HomologyK<F> homology_of_pair(const F& f, const Mat<typename F::Elt>& dout,
                              const Mat<typename F::Elt>& din) {
    static_assert(F::is_field);
    HomologyK<F> H;
    H.cycles = linalg::kernel_basis(f, dout);
    H.boundaries = din;
    Mat<typename F::Elt> W(dout.cols, H.boundaries.cols + H.cycles.cols);
    set_block(W, 0, 0, H.boundaries);
    set_block(W, 0, H.boundaries.cols, H.cycles);
    auto ech = linalg::rref(f, W);
    std::vector<int> picked;
    for (int pc : ech.pivot_cols)
        if (pc >= H.boundaries.cols) picked.push_back(pc - H.boundaries.cols);
    H.dim = static_cast<int>(picked.size());
    H.reps = Mat<typename F::Elt>(dout.cols, H.dim);
    for (int j = 0; j < H.dim; ++j)
        for (int r = 0; r < dout.cols; ++r)
            H.reps(r, j) = H.cycles(r, picked[static_cast<std::size_t>(j)]);
    return H;
}

template <class F>
HomologyK<F> homology_k(const CxPtr<F>& X, int n) {
    static_assert(F::is_field);
    const F& f = X->ring.f;
    HomologyK<F> H;
    H.cycles = linalg::kernel_basis(f, X->dmat(n));
    H.boundaries = X->dmat(n - 1);
    // pick cycle columns that extend a basis of the boundary space
    Mat<E<F>> W(X->kdim(n), H.boundaries.cols + H.cycles.cols);
    set_block(W, 0, 0, H.boundaries);
    set_block(W, 0, H.boundaries.cols, H.cycles);
    auto ech = linalg::rref(f, W);
    std::vector<int> picked;
    for (int pc : ech.pivot_cols)
        if (pc >= H.boundaries.cols) picked.push_back(pc - H.boundaries.cols);
    H.dim = static_cast<int>(picked.size());
    H.reps = Mat<E<F>>(X->kdim(n), H.dim);
    for (int j = 0; j < H.dim; ++j)
        for (int r = 0; r < X->kdim(n); ++r) H.reps(r, j) = H.cycles(r, picked[static_cast<std::size_t>(j)]);
    return H;
}

// Homology with its module structure over a quotient algebra.
template <class F>
struct HomologyModule {
    HomologyK<F> h;
    std::shared_ptr<const ModulePres<F>> mod; // induced variable actions on classes
};

template <class F>
HomologyModule<F> homology_module(const CxPtr<F>& X, int n) {
    HomologyModule<F> out;
    out.h = homology_k(X, n);
    if (!X->ring.is_quotient()) return out;
    const F& f = X->ring.f;
    auto m = std::make_shared<ModulePres<F>>();
    m->alg = X->ring.alg;
    m->dim = out.h.dim;
    auto ops = X->ops(n);
    for (auto& op : ops) {
        Mat<E<F>> induced(out.h.dim, out.h.dim);
        for (int j = 0; j < out.h.dim; ++j) {
            auto img = linalg::mul(f, op, column(out.h.reps, j));
            auto c = out.h.class_of(f, img);
            for (int i = 0; i < out.h.dim; ++i) induced(i, j) = c[static_cast<std::size_t>(i)];
        }
        m->ops.push_back(std::move(induced));
    }
    out.mod = m;
    return out;
}

// Integer homology in Smith form: H = Z^free (+) sum Z/d_i, with explicit
// generator cycles.
struct HomologyZ {
    Mat<BigInt> kernel;    // kernel lattice basis (columns)
    Mat<BigInt> relations; // incoming differential in kernel coordinates
    std::vector<BigInt> invariants; // one per kernel generator; 0 = free, 1 = trivial
    Mat<BigInt> gens;      // cycle representatives of the Smith generators

    int free_rank() const {
        int r = 0;
        for (const auto& d : invariants)
            if (d == 0) ++r;
        return r;
    }
    bool is_zero_module() const {
        for (const auto& d : invariants)
            if (d != 1) return false;
        return true;
    }
};

inline HomologyZ homology_z(const CxPtr<ZZ>& X, int n) {
    ZZ z;
    HomologyZ H;
    H.kernel = linalg::kernel_basis(z, X->dmat(n));
    auto dprev = X->dmat(n - 1);
    if (H.kernel.cols == 0) {
        H.relations = Mat<BigInt>(0, 0);
        H.gens = Mat<BigInt>(X->kdim(n), 0);
        return H;
    }
    auto rel = linalg::solve(z, H.kernel, dprev);
    if (!rel.ok()) throw consistency_error("homology_z: boundaries do not lie in the kernel");
    H.relations = *rel.x;
    // Smith presentation of Z^k / im(relations)
    if (H.relations.cols == 0) {
        H.invariants.assign(static_cast<std::size_t>(H.kernel.cols), BigInt(0));
        H.gens = H.kernel;
        return H;
    }
    auto s = linalg::smith_form(H.relations);
    // coordinates transform by U: generators are K * U^{-1} columns
    auto uinv = linalg::solve(z, s.U, linalg::identity(z, s.U.rows));
    if (!uinv.ok()) throw consistency_error("homology_z: U not invertible over Z");
    H.gens = linalg::mul(z, H.kernel, *uinv.x);
    H.invariants.assign(static_cast<std::size_t>(H.kernel.cols), BigInt(0));
    for (std::size_t i = 0; i < s.d.size(); ++i) H.invariants[i] = s.d[i];
    return H;
}

// is the class of cycle z zero in H^n, i.e. z in the image of d^{n-1}?
inline bool zero_class_z(const CxPtr<ZZ>& X, int n, const Mat<BigInt>& zc) {
    ZZ z;
    auto d = X->dmat(n - 1);
    if (d.cols == 0) return linalg::is_zero(z, zc);
    return linalg::solve(z, d, zc).ok();
}

} // namespace koszul
