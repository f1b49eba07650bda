#pragma once

#include "koszul/solver.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Mapping cone of a degree-0 map and its defining triangle.

template <class F>
struct ConeData {
    CxPtr<F> cone;
    ChainMap<F> incl; // Y -> cone
    ChainMap<F> proj; // cone -> Sigma X
};

template <class F>
ConeData<F> cone(const ChainMap<F>& f) {
    if (f.deg != 0) throw input_error("cone: degree-0 chain map required (use as_degree_zero)");
    const auto& X = f.X;
    const auto& Y = f.Y;
    const F& ff = X->ring.f;
    int lo = std::min(Y->lo, X->lo - 1);
    int hi = std::max(Y->hi, X->hi - 1);
    if (X->is_zero_object()) { lo = Y->lo; hi = Y->hi; }
    if (Y->is_zero_object() && X->is_zero_object()) { lo = 0; hi = -1; }

    std::vector<Term<F>> terms;
    std::vector<Mat<E<F>>> diffs;
    for (int n = lo; n <= hi; ++n) terms.push_back(sum_term(X->ring, Y->term(n), X->term(n + 1)));
    for (int n = lo; n < hi; ++n) {
        const int yr = Y->kdim(n + 1), yc = Y->kdim(n);
        const int xr = X->kdim(n + 2), xc = X->kdim(n + 1);
        Mat<E<F>> d(yr + xr, yc + xc);
        set_block(d, 0, 0, Y->dmat(n));
        set_block(d, 0, yc, f.comp(n + 1));
        set_block(d, yr, yc, linalg::neg(ff, X->dmat(n + 1)));
        diffs.push_back(std::move(d));
    }
    ConeData<F> out;
    out.cone = make_complex(X->ring, lo, std::move(terms), std::move(diffs));

    std::vector<Mat<E<F>>> ic, pc;
    for (int n = Y->lo; n <= Y->hi; ++n) {
        Mat<E<F>> m(out.cone->kdim(n), Y->kdim(n));
        for (int i = 0; i < Y->kdim(n); ++i) m(i, i) = ff.one();
        ic.push_back(std::move(m));
    }
    out.incl = make_chain_map(Y, out.cone, 0, std::move(ic), false);
    auto SX = shift(X, 1);
    for (int n = out.cone->lo; n <= out.cone->hi; ++n) {
        Mat<E<F>> m(X->kdim(n + 1), out.cone->kdim(n));
        for (int i = 0; i < X->kdim(n + 1); ++i) m(i, Y->kdim(n) + i) = ff.one();
        pc.push_back(std::move(m));
    }
    out.proj = make_chain_map(out.cone, SX, 0, std::move(pc), false);
    if (!chain_map_identity_holds(out.incl) || !chain_map_identity_holds(out.proj))
        throw consistency_error("cone: canonical maps failed the chain-map identity");
    return out;
}

// ---------------------------------------------------------------------------
// Exact triangles with stored witnesses.  A triangle is a candidate
// (u : X -> Y, v : Y -> Z, w : Z -> Sigma X) together with a homotopy
// equivalence between Z and cone(u) compatible with the canonical maps.

template <class F>
struct Triangle {
    ChainMap<F> u, v, w;
    CxPtr<F> cone_u;
    ChainMap<F> to_cone;    // Z -> cone(u)
    ChainMap<F> from_cone;  // cone(u) -> Z
    Homotopy<F> cone_roundtrip; // to_cone o from_cone ~ id_cone
    Homotopy<F> z_roundtrip;    // from_cone o to_cone ~ id_Z
    Homotopy<F> v_compat;       // v ~ from_cone o incl
    Homotopy<F> w_compat;       // w ~ proj o to_cone
    bool canonical = false;     // Z literally is cone(u)

    bool verify() const;
};

template <class F>
bool Triangle<F>::verify() const {
    ConeData<F> cd = cone(u);
    if (canonical) {
        for (int n = cd.cone->lo; n <= cd.cone->hi; ++n)
            if (!(v.comp(n) == cd.incl.comp(n)) || !(w.comp(n) == cd.proj.comp(n))) return false;
        return true;
    }
    if (!homotopy_witnesses(cone_roundtrip, compose(to_cone, from_cone), identity_map(cone_u)))
        return false;
    if (!homotopy_witnesses(z_roundtrip, compose(from_cone, to_cone), identity_map(v.Y)))
        return false;
    if (!homotopy_witnesses(v_compat, v, compose(from_cone, cd.incl))) return false;
    if (!homotopy_witnesses(w_compat, w, compose(cd.proj, to_cone))) return false;
    return true;
}

// The defining triangle  X --u--> Y --incl--> cone(u) --proj--> Sigma X.
template <class F>
Triangle<F> defining_triangle(const ChainMap<F>& u) {
    ConeData<F> cd = cone(u);
    Triangle<F> t;
    t.u = u;
    t.v = cd.incl;
    t.w = cd.proj;
    t.cone_u = cd.cone;
    t.to_cone = identity_map(cd.cone);
    t.from_cone = identity_map(cd.cone);
    t.cone_roundtrip = Homotopy<F>{cd.cone, cd.cone, 0, {}};
    t.z_roundtrip = Homotopy<F>{cd.cone, cd.cone, 0, {}};
    t.v_compat = Homotopy<F>{u.Y, cd.cone, 0, {}};
    t.w_compat = Homotopy<F>{cd.cone, shift(u.X, 1), 0, {}};
    t.canonical = true;
    return t;
}

// Certify a candidate triangle: solve for a comparison equivalence
// cone(u) ~ Z under Y and over Sigma X.  Returns nothing if the candidate is
// not exact.
template <class F>
std::optional<Triangle<F>> certify_triangle(const ChainMap<F>& u, const ChainMap<F>& v,
                                            const ChainMap<F>& w) {
    ConeData<F> cd = cone(u);
    auto vu = compose(v, u);
    auto h0 = null_homotopy(vu);
    if (!h0.ok()) return std::nullopt;
    // comparison map [v, h] : cone(u) -> Z
    const auto& Z = v.Y;
    std::vector<Mat<E<F>>> comps;
    for (int n = cd.cone->lo; n <= cd.cone->hi; ++n) {
        Mat<E<F>> m(Z->kdim(n), cd.cone->kdim(n));
        set_block(m, 0, 0, v.comp(n));
        set_block(m, 0, u.Y->kdim(n), h0.h->comp(n + 1));
        comps.push_back(std::move(m));
    }
    ChainMap<F> phi = make_chain_map(cd.cone, Z, 0, std::move(comps));
    auto eq = homotopy_inverse(phi);
    if (!eq) return std::nullopt;

    Triangle<F> t;
    t.u = u;
    t.v = v;
    t.w = w;
    t.cone_u = cd.cone;
    t.from_cone = phi;
    t.to_cone = eq->bwd;
    t.cone_roundtrip = eq->on_src;
    t.z_roundtrip = eq->on_tgt;
    auto hv = homotopy_solve(v, compose(phi, cd.incl));
    if (!hv.ok()) return std::nullopt;
    t.v_compat = *hv.h;
    auto hw = homotopy_solve(w, compose(cd.proj, eq->bwd));
    if (!hw.ok()) return std::nullopt;
    t.w_compat = *hw.h;
    if (!t.verify()) throw consistency_error("certify_triangle: witnesses failed re-verification");
    return t;
}

// ---------------------------------------------------------------------------
// Mapping cylinder: factor f : X -> Y as a degreewise split cofibration
// X >-> cyl(f) followed by a homotopy equivalence cyl(f) -> Y.

template <class F>
struct CylinderData {
    CxPtr<F> cyl;
    ChainMap<F> incl_src;  // X -> cyl, degreewise split injection
    ChainMap<F> incl_tgt;  // Y -> cyl
    ChainMap<F> retract;   // cyl -> Y, retract o incl_tgt = id
    Homotopy<F> deform;    // incl_tgt o retract ~ id_cyl
};

template <class F>
CylinderData<F> cylinder(const ChainMap<F>& f) {
    if (f.deg != 0) throw input_error("cylinder: degree-0 chain map required");
    const auto& X = f.X;
    const auto& Y = f.Y;
    const F& ff = X->ring.f;
    // cyl^n = X^n (+) Y^n (+) X^{n+1}, d = [[d_X, 0, -id], [0, d_Y, f], [0, 0, -d_X]]
    int lo = std::min({X->lo, Y->lo, X->lo - 1});
    int hi = std::max({X->hi, Y->hi, X->hi - 1});
    if (X->is_zero_object()) { lo = Y->lo; hi = Y->hi; }
    std::vector<Term<F>> terms;
    std::vector<Mat<E<F>>> diffs;
    for (int n = lo; n <= hi; ++n)
        terms.push_back(sum_term(X->ring, sum_term(X->ring, X->term(n), Y->term(n)), X->term(n + 1)));
    for (int n = lo; n < hi; ++n) {
        const int xr = X->kdim(n + 1), yr = Y->kdim(n + 1), sr = X->kdim(n + 2);
        const int xc = X->kdim(n), yc = Y->kdim(n), sc = X->kdim(n + 1);
        Mat<E<F>> d(xr + yr + sr, xc + yc + sc);
        set_block(d, 0, 0, X->dmat(n));
        for (int i = 0; i < std::min(xr, sc); ++i) d(i, xc + yc + i) = ff.neg(ff.one());
        set_block(d, xr, xc, Y->dmat(n));
        set_block(d, xr, xc + yc, f.comp(n + 1));
        set_block(d, xr + yr, xc + yc, linalg::neg(ff, X->dmat(n + 1)));
        diffs.push_back(std::move(d));
    }
    CylinderData<F> out;
    out.cyl = make_complex(X->ring, lo, std::move(terms), std::move(diffs));

    std::vector<Mat<E<F>>> a, bmats, c;
    for (int n = X->lo; n <= X->hi; ++n) {
        Mat<E<F>> m(out.cyl->kdim(n), X->kdim(n));
        for (int i = 0; i < X->kdim(n); ++i) m(i, i) = ff.one();
        a.push_back(std::move(m));
    }
    out.incl_src = make_chain_map(X, out.cyl, 0, std::move(a), false);
    for (int n = Y->lo; n <= Y->hi; ++n) {
        Mat<E<F>> m(out.cyl->kdim(n), Y->kdim(n));
        for (int i = 0; i < Y->kdim(n); ++i) m(X->kdim(n) + i, i) = ff.one();
        bmats.push_back(std::move(m));
    }
    out.incl_tgt = make_chain_map(Y, out.cyl, 0, std::move(bmats), false);
    for (int n = out.cyl->lo; n <= out.cyl->hi; ++n) {
        Mat<E<F>> m(Y->kdim(n), out.cyl->kdim(n));
        set_block(m, 0, 0, f.comp(n));
        for (int i = 0; i < Y->kdim(n); ++i) m(i, X->kdim(n) + i) = ff.one();
        c.push_back(std::move(m));
    }
    out.retract = make_chain_map(out.cyl, Y, 0, std::move(c), false);
    if (!chain_map_identity_holds(out.incl_src) || !chain_map_identity_holds(out.incl_tgt) ||
        !chain_map_identity_holds(out.retract))
        throw consistency_error("cylinder: structure maps failed the chain-map identity");

    // deformation: (incl_tgt o retract - id) = d H + H d with H the unit on the
    // X^{n} |-> X^{n} slot of degree -1 (third block <- first block)
    std::vector<Mat<E<F>>> hcomps;
    for (int n = out.cyl->lo; n <= out.cyl->hi; ++n) {
        Mat<E<F>> h(out.cyl->kdim(n - 1), out.cyl->kdim(n));
        const int rowoff = X->kdim(n - 1) + Y->kdim(n - 1);
        for (int i = 0; i < X->kdim(n); ++i) h(rowoff + i, i) = ff.one();
        hcomps.push_back(std::move(h));
    }
    out.deform = Homotopy<F>{out.cyl, out.cyl, 0, std::move(hcomps)};
    if (!homotopy_witnesses(out.deform, compose(out.incl_tgt, out.retract), identity_map(out.cyl)))
        throw consistency_error("cylinder: deformation homotopy failed");
    return out;
}

// ---------------------------------------------------------------------------
// Homotopy cartesian check: the square
//        X --f--> Y
//        |g       |p
//        Z --q--> W
// commuting up to a homotopy h (p f ~ q g) is homotopy cartesian iff the total
// complex cone( [p, -q, h] : cone((f,g)^T : X -> Y (+) Z) -> W ) is
// contractible.

template <class F>
struct CartesianVerdict {
    bool commutes = false;
    bool cartesian = false;
    int first_obstruction_degree = 0;   // meaningful when !commutes
    std::optional<Homotopy<F>> square_homotopy;
    std::optional<Homotopy<F>> contraction; // of the total complex
    CxPtr<F> total;
};

template <class F>
CartesianVerdict<F> homotopy_cartesian_check(const ChainMap<F>& f, const ChainMap<F>& g,
                                             const ChainMap<F>& p, const ChainMap<F>& q,
                                             std::optional<Homotopy<F>> given_homotopy = std::nullopt) {
    CartesianVerdict<F> out;
    const F& ff = f.X->ring.f;
    auto pf = compose(p, f);
    auto qg = compose(q, g);
    if (given_homotopy && homotopy_witnesses(*given_homotopy, pf, qg)) {
        out.commutes = true;
        out.square_homotopy = given_homotopy;
    } else {
        auto h = homotopy_solve(pf, qg);
        if (h.ok()) {
            out.commutes = true;
            out.square_homotopy = h.h;
        } else {
            // name the lowest degree at which the defect is unavoidable
            const auto& X = f.X;
            for (int n = X->lo; n <= X->hi; ++n) {
                auto sub = homotopy_solve(pf, qg, DegreeWindow{X->lo, n});
                if (!sub.ok()) { out.first_obstruction_degree = n; break; }
            }
            return out;
        }
    }
    // alpha = (f, g)^T : X -> Y (+) Z
    auto sum = direct_sum(f.Y, g.Y);
    auto alpha = map_add(compose(sum.incl_left, f), compose(sum.incl_right, g));
    ConeData<F> ca = cone(alpha);
    // beta' = [p, -q, h] : cone(alpha) -> W
    const auto& W = p.Y;
    std::vector<Mat<E<F>>> comps;
    for (int n = ca.cone->lo; n <= ca.cone->hi; ++n) {
        Mat<E<F>> m(W->kdim(n), ca.cone->kdim(n));
        set_block(m, 0, 0, p.comp(n));
        set_block(m, 0, f.Y->kdim(n), linalg::neg(ff, q.comp(n)));
        set_block(m, 0, f.Y->kdim(n) + g.Y->kdim(n), out.square_homotopy->comp(n + 1));
        comps.push_back(std::move(m));
    }
    ChainMap<F> beta = make_chain_map(ca.cone, W, 0, std::move(comps));
    ConeData<F> total = cone(beta);
    out.total = total.cone;
    auto contr = null_homotopy(identity_map(total.cone));
    if (contr.ok()) {
        out.cartesian = true;
        out.contraction = contr.h;
    }
    return out;
}

} // namespace koszul
