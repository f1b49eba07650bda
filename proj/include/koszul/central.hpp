#pragma once

#include "koszul/triangle.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Central elements: natural degree-|x| actions x(M) : M -> Sigma^{|x|} M.
// Ring scalars act by multiplication in every degree.  Operator elements are
// partial: they carry explicit chain maps on the objects a computation
// touches.  Eisenbud operators are constructed (see eisenbud.hpp) and stored
// the same way.

template <class F>
struct CentralElement {
    enum class Kind { Scalar, Operator, Eisenbud };
    std::string name;
    Kind kind = Kind::Scalar;
    int degree = 0;

    typename F::Elt scalar{};        // Integers / Field rings
    std::optional<AElt<F>> ascalar;  // Quotient rings
    std::map<std::uint64_t, ChainMap<F>> table; // operator actions, keyed by complex uid
    bool koszul_exact = false;       // automatic for scalars
    int ci_index = 0;                // Eisenbud only

    bool is_scalar() const { return kind == Kind::Scalar; }
};

template <class F>
CentralElement<F> scalar_element(const Ring<F>& ring, std::string name, typename F::Elt v) {
    if (ring.is_quotient()) throw input_error("scalar_element: use algebra_scalar_element");
    CentralElement<F> x;
    x.name = std::move(name);
    x.scalar = std::move(v);
    x.koszul_exact = true;
    return x;
}

template <class F>
CentralElement<F> algebra_scalar_element(const Ring<F>& ring, std::string name, AElt<F> v) {
    if (!ring.is_quotient()) throw input_error("algebra_scalar_element: quotient ring required");
    CentralElement<F> x;
    x.name = std::move(name);
    x.ascalar = std::move(v);
    x.koszul_exact = true;
    return x;
}

template <class F>
CentralElement<F> operator_element(std::string name, int degree,
                                   std::map<std::uint64_t, ChainMap<F>> table,
                                   bool koszul_exact = false) {
    CentralElement<F> x;
    x.kind = CentralElement<F>::Kind::Operator;
    x.name = std::move(name);
    x.degree = degree;
    x.table = std::move(table);
    x.koszul_exact = koszul_exact;
    return x;
}

template <class F>
Mat<E<F>> scalar_diagonal(const F& f, const E<F>& v, int n) {
    Mat<E<F>> m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = v;
    return m;
}

// The action of x on M as a chain map M -> Sigma^{|x|} M (degree |x|).
template <class F>
ChainMap<F> act(const CentralElement<F>& x, const CxPtr<F>& M) {
    const F& f = M->ring.f;
    if (x.is_scalar()) {
        std::vector<Mat<E<F>>> comps;
        for (int n = M->lo; n <= M->hi; ++n) {
            if (M->ring.is_quotient()) {
                const auto& A = *M->ring.alg;
                auto t = M->term(n);
                if (t.pres) {
                    comps.push_back(t.pres->act(*x.ascalar));
                } else {
                    Mat<E<F>> m(M->kdim(n), M->kdim(n));
                    for (int i = 0; i < A.dim(); ++i) {
                        if (f.is_zero(x.ascalar->c[static_cast<std::size_t>(i)])) continue;
                        for (long g = 0; g < t.rank; ++g)
                            for (int j = 0; j < A.dim(); ++j) {
                                std::vector<int> ee(A.nvars());
                                for (int tv = 0; tv < A.nvars(); ++tv)
                                    ee[tv] = A.basis[i][tv] + A.basis[j][tv];
                                int r = A.monomial_index(ee);
                                if (r >= 0) {
                                    int off = static_cast<int>(g) * A.dim();
                                    m(off + r, off + j) = f.add(
                                        m(off + r, off + j), x.ascalar->c[static_cast<std::size_t>(i)]);
                                }
                            }
                    }
                    comps.push_back(std::move(m));
                }
            } else {
                comps.push_back(scalar_diagonal(f, x.scalar, M->kdim(n)));
            }
        }
        return make_chain_map(M, M, 0, std::move(comps), false);
    }
    // operator elements: exact uid, else resolve through shift provenance
    auto it = x.table.find(M->uid);
    if (it != x.table.end()) return it->second;
    if (x.degree % 2 != 0)
        throw input_error("operator element '" + x.name + "': odd-degree actions do not transport across shifts");
    for (const auto& [uid, act] : x.table) {
        if (act.X->shift_base == M->shift_base) {
            const int rel = M->shift_amount - act.X->shift_amount;
            std::vector<Mat<E<F>>> comps;
            for (int n = M->lo; n <= M->hi; ++n) comps.push_back(act.comp(n + rel));
            return make_chain_map(M, M, x.degree, std::move(comps), false);
        }
    }
    throw input_error("operator element '" + x.name + "' is not defined on this object");
}

// The same action viewed on Sigma^k M, as a degree-0 map Sigma^k X -> Sigma^{k+e} X.
template <class F>
ChainMap<F> action_deg0_shifted(const ChainMap<F>& a, int k) {
    auto S = shift(a.X, k);
    auto T = shift(a.Y, k + a.deg);
    std::vector<Mat<E<F>>> comps;
    for (int n = S->lo; n <= S->hi; ++n) comps.push_back(a.comp(n + k));
    return make_chain_map(S, T, 0, std::move(comps), false);
}

// x(M) viewed as a degree-0 map M -> Sigma^{|x|} M
template <class F>
ChainMap<F> action_degree_zero(const CentralElement<F>& x, const CxPtr<F>& M) {
    auto a = act(x, M);
    if (a.deg == 0) return a;
    return as_degree_zero(a);
}

// n-th power of the action: M -> Sigma^{n|x|} M
template <class F>
ChainMap<F> act_power(const CentralElement<F>& x, int n, const CxPtr<F>& M) {
    if (n < 0) throw input_error("apply_power: nonnegative powers only");
    if (n == 0) return identity_map(M);
    auto acc = act(x, M);
    for (int k = 1; k < n; ++k) acc = compose(act(x, M), acc);
    return acc;
}

// ---------------------------------------------------------------------------
// Extension of an action across a cone.  Given the defining cone of
// f = x_s(M) : M -> Sigma^{|x_s|} M and an action a on M, the block map
//    [[Sigma^{|x_s|} a, h], [0, a]]
// acts on cone(f), where h is a homotopy witnessing that a commutes with f.
// Scalars commute strictly (h = 0); for operator elements h is solved for.

template <class F>
struct ConeAction {
    ChainMap<F> action;
    std::optional<Homotopy<F>> glue; // absent means strict commutation was used
};

template <class F>
ConeAction<F> extend_action_to_cone(const CxPtr<F>& cone_cx, const ChainMap<F>& f0, int coning_degree,
                                    const ChainMap<F>& a, bool scalar_strict) {
    // f0 : X -> Y degree 0 with Y = Sigma^{coning_degree} X; a : X -> Sigma^e X, e even
    const int e = a.deg;
    if (e % 2 != 0) throw input_error("extend_action_to_cone: even-degree actions only");
    const auto& Y = f0.Y;
    // a acting on Y = Sigma^{coning_degree} X, as a degree-e self-map of Y
    ChainMap<F> aY = make_chain_map(Y, Y, e,
                                    [&] {
                                        std::vector<Mat<E<F>>> cs;
                                        for (int n = Y->lo; n <= Y->hi; ++n)
                                            cs.push_back(a.comp(n + coning_degree));
                                        return cs;
                                    }(),
                                    false);
    std::optional<Homotopy<F>> glue;
    auto lhs = compose(aY, f0); // X -> Y, degree e
    auto rhs = compose(f0, a);
    if (!map_is_zero(map_sub(lhs, rhs))) {
        if (scalar_strict)
            throw consistency_error("scalar action failed to commute strictly with the coning map");
        auto h = homotopy_solve(lhs, rhs);
        if (!h.ok())
            throw input_error("action does not commute with the coning map, even up to homotopy");
        glue = h.h;
    }
    std::vector<Mat<E<F>>> comps;
    for (int n = cone_cx->lo; n <= cone_cx->hi; ++n) {
        Mat<E<F>> m(cone_cx->kdim(n + e), cone_cx->kdim(n));
        set_block(m, 0, 0, aY.comp(n));
        if (glue) set_block(m, 0, Y->kdim(n), glue->comp(n + 1));
        set_block(m, Y->kdim(n + e), Y->kdim(n), a.comp(n + 1));
        comps.push_back(std::move(m));
    }
    ConeAction<F> out;
    out.action = make_chain_map(cone_cx, cone_cx, e, std::move(comps));
    out.glue = std::move(glue);
    return out;
}

// ---------------------------------------------------------------------------
// Koszul towers M // (x_1, ..., x_t) with stored defining triangles, the
// connecting maps, actions of every x_j on every stage, and the composite
// Sigma^{-t} M//(x_1..x_t) -> M.

template <class F>
struct KoszulTower {
    CxPtr<F> base;
    std::vector<CentralElement<F>> xs;
    std::vector<CxPtr<F>> stages;             // stages[s] = M // (x_1..x_s)
    std::vector<Triangle<F>> defining;        // one per step
    std::vector<ChainMap<F>> connecting;      // Sigma^{-1} stages[s] -> stages[s-1]
    std::vector<std::vector<ChainMap<F>>> actions; // actions[s][j] = x_j on stages[s]
    ChainMap<F> composite;                    // Sigma^{-t} stages[t] -> M

    int length() const { return static_cast<int>(xs.size()); }
    const CxPtr<F>& top() const { return stages.back(); }
};

// Sigma^{-1} proj re-targeted onto the previous stage.
template <class F>
ChainMap<F> desuspended_connecting(const CxPtr<F>& stage, const ChainMap<F>& proj,
                                   const CxPtr<F>& prev) {
    auto S = shift(stage, -1);
    std::vector<Mat<E<F>>> comps;
    for (int n = S->lo; n <= S->hi; ++n) comps.push_back(proj.comp(n - 1));
    return make_chain_map(S, prev, 0, std::move(comps), false);
}

template <class F>
KoszulTower<F> koszul_tower(const CxPtr<F>& M, std::vector<CentralElement<F>> xs) {
    KoszulTower<F> T;
    T.base = M;
    T.xs = std::move(xs);
    T.stages.push_back(M);
    const int t = T.length();
    {
        std::vector<ChainMap<F>> a0;
        for (const auto& x : T.xs) a0.push_back(act(x, M));
        T.actions.push_back(std::move(a0));
    }
    for (int s = 1; s <= t; ++s) {
        const CxPtr<F> prev = T.stages[static_cast<std::size_t>(s - 1)];
        auto f0 = as_degree_zero(T.actions[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(s - 1)]);
        auto tri = defining_triangle(f0);
        T.stages.push_back(tri.cone_u);
        T.connecting.push_back(desuspended_connecting(tri.cone_u, tri.w, prev));
        std::vector<ChainMap<F>> acts;
        for (int j = 0; j < t; ++j) {
            auto ext = extend_action_to_cone(tri.cone_u, f0, T.xs[static_cast<std::size_t>(s - 1)].degree,
                                             T.actions[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(j)],
                                             T.xs[static_cast<std::size_t>(j)].is_scalar());
            acts.push_back(std::move(ext.action));
        }
        T.actions.push_back(std::move(acts));
        T.defining.push_back(std::move(tri));
    }
    // composite Sigma^{-t} stages[t] -> M
    if (t == 0) {
        T.composite = identity_map(M);
    } else {
        ChainMap<F> cur = T.connecting.back(); // Sigma^{-1} stage_t -> stage_{t-1}
        cur = shift_map(cur, -(t - 1));
        for (int s = t - 1; s >= 1; --s) {
            auto step = shift_map(T.connecting[static_cast<std::size_t>(s - 1)], -(s - 1));
            cur = compose(step, cur);
        }
        // re-target onto M itself
        std::vector<Mat<E<F>>> comps;
        auto S = shift(T.stages.back(), -t);
        for (int n = S->lo; n <= S->hi; ++n) comps.push_back(cur.comp(n));
        T.composite = make_chain_map(S, M, 0, std::move(comps), false);
        if (!chain_map_identity_holds(T.composite))
            throw consistency_error("koszul: composite failed the chain-map identity");
    }
    return T;
}

// productivity: x(M//x) null-homotopic, with witness
template <class F>
struct ProductivityVerdict {
    bool productive = false;
    std::optional<Homotopy<F>> witness;
    HomotopyOutcome<F> outcome;
};

template <class F>
ProductivityVerdict<F> productivity_check(const CentralElement<F>& x, const CxPtr<F>& M) {
    auto T = koszul_tower(M, {x});
    const auto& act = T.actions[1][0];
    ProductivityVerdict<F> out;
    out.outcome = null_homotopy(act);
    out.productive = out.outcome.ok();
    if (out.productive) out.witness = out.outcome.h;
    return out;
}

} // namespace koszul
