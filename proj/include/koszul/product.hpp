#pragma once

#include "koszul/central.hpp"

namespace koszul {

// Functoriality map between cones: given f0 : X -> Y, g0 : X' -> Y' (degree 0),
// vertical maps phiX : X -> X', phiY : Y -> Y' and a homotopy
// h : phiY f0 ~ g0 phiX, the block map [[phiY, h], [0, phiX]] : cone(f0) -> cone(g0).
template <class F>
ChainMap<F> cone_functor_map(const CxPtr<F>& coneF, const ChainMap<F>& f0, const CxPtr<F>& coneG,
                             const ChainMap<F>& phiY, const ChainMap<F>& phiX,
                             const std::optional<Homotopy<F>>& h = std::nullopt) {
    std::vector<Mat<E<F>>> comps;
    for (int n = coneF->lo; n <= coneF->hi; ++n) {
        Mat<E<F>> m(coneG->kdim(n), coneF->kdim(n));
        set_block(m, 0, 0, phiY.comp(n));
        if (h) set_block(m, 0, f0.Y->kdim(n), h->comp(n + 1));
        set_block(m, phiY.Y->kdim(n), f0.Y->kdim(n), phiX.comp(n + 1));
        comps.push_back(std::move(m));
    }
    return make_chain_map(coneF, coneG, 0, std::move(comps));
}

// The map M//x -> N//x induced by f : M -> N for a scalar x; the induced
// square of defining triangles commutes strictly with this block model.
template <class F>
ChainMap<F> koszul_induced_map(const CentralElement<F>& x, const ChainMap<F>& f,
                               const KoszulTower<F>& TM, const KoszulTower<F>& TN) {
    auto fM = action_degree_zero(x, TM.base);
    auto phiY = action_deg0_shifted(f, x.degree);
    // re-target phiY : Sigma^{|x|} M -> Sigma^{|x|} N against fM.Y
    std::vector<Mat<E<F>>> cs;
    for (int n = fM.Y->lo; n <= fM.Y->hi; ++n) cs.push_back(f.comp(n + x.degree));
    auto phiY2 = make_chain_map(fM.Y, shift(TN.base, x.degree), 0, std::move(cs), false);
    return cone_functor_map(TM.stages[1], fM, TN.stages[1], phiY2, f);
}

// ---------------------------------------------------------------------------
// The product triangle  M//y -> M//xy -> Sigma^{|y|} M//x -> Sigma M//y,
// with its compatibility against the three defining triangles recorded.

template <class F>
struct ProductTriangleData {
    CxPtr<F> kos_y, kos_x, kos_xy;
    Triangle<F> triangle;
    ChainMap<F> xy_action; // M -> M of degree |x|+|y|
    struct Check {
        std::string name;
        bool strict = false;
        bool holds = false;
    };
    std::vector<Check> compatibility;
    bool all_compatible() const {
        for (const auto& c : compatibility)
            if (!c.holds) return false;
        return true;
    }
};

template <class F>
ProductTriangleData<F> product_triangle(const CentralElement<F>& x, const CentralElement<F>& y,
                                        const CxPtr<F>& M) {
    if (x.degree % 2 != 0 || y.degree % 2 != 0)
        throw input_error("product_triangle: even-degree elements only");
    const int ey = y.degree;
    const F& ff = M->ring.f;

    auto ax = act(x, M);
    auto ay = act(y, M);
    auto axy = compose(ax, ay); // M -> M, degree |x|+|y|

    auto fy = as_degree_zero(ay);
    auto fx = as_degree_zero(ax);
    auto fxy = as_degree_zero(axy);
    auto ty = defining_triangle(fy);
    auto tx = defining_triangle(fx);
    auto txy = defining_triangle(fxy);

    ProductTriangleData<F> out;
    out.kos_y = ty.cone_u;
    out.kos_x = tx.cone_u;
    out.kos_xy = txy.cone_u;
    out.xy_action = axy;

    // u = [[x, 0], [0, id]] : cone(y) -> cone(xy); strict since (xy) is the composite
    auto x_on_sy = action_deg0_shifted(ax, ey); // Sigma^{ey} M -> Sigma^{ex+ey} M
    {
        std::vector<Mat<E<F>>> cs;
        for (int n = fy.Y->lo; n <= fy.Y->hi; ++n) cs.push_back(x_on_sy.comp(n));
        x_on_sy = make_chain_map(fy.Y, fxy.Y, 0, std::move(cs), false);
    }
    auto u = cone_functor_map(ty.cone_u, fy, txy.cone_u, x_on_sy, identity_map(M));

    // v = [[id, 0], [0, y]] : cone(xy) -> Sigma^{ey} cone(x)
    auto target_v = shift(tx.cone_u, ey);
    std::vector<Mat<E<F>>> vcomps;
    for (int n = txy.cone_u->lo; n <= txy.cone_u->hi; ++n) {
        Mat<E<F>> m(target_v->kdim(n), txy.cone_u->kdim(n));
        const int topdim = M->kdim(n + x.degree + ey);
        for (int i = 0; i < topdim; ++i) m(i, i) = ff.one();
        set_block(m, topdim, topdim, ay.comp(n + 1));
        vcomps.push_back(std::move(m));
    }
    auto v = make_chain_map(txy.cone_u, target_v, 0, std::move(vcomps));

    // w = Sigma(incl_y) o Sigma^{ey}(proj_x), re-targeted onto target_v
    auto w0 = compose(shift_map(ty.v, 1), shift_map(tx.w, ey));
    std::vector<Mat<E<F>>> wc;
    for (int n = target_v->lo; n <= target_v->hi; ++n) wc.push_back(w0.comp(n));
    auto w = make_chain_map(target_v, shift(ty.cone_u, 1), 0, std::move(wc), false);

    auto tri = certify_triangle(u, v, w);
    if (!tri) throw consistency_error("product_triangle: candidate triangle failed certification");
    out.triangle = std::move(*tri);

    auto record = [&](std::string nm, const ChainMap<F>& lhs, const ChainMap<F>& rhs) {
        typename ProductTriangleData<F>::Check c;
        c.name = std::move(nm);
        c.strict = map_is_zero(map_sub(lhs, rhs));
        c.holds = c.strict || homotopy_solve(lhs, rhs).ok();
        out.compatibility.push_back(std::move(c));
    };
    record("u.incl_y = incl_xy.x", compose(u, ty.v), compose(txy.v, x_on_sy));
    record("v.incl_xy = shift_incl_x", compose(v, txy.v), shift_map(tx.v, ey));
    record("w = shift_incl_y.shift_proj_x", w, w0);
    record("proj_xy.u = proj_y", compose(txy.w, u), ty.w);
    record("shift_proj_x.v = shift_y.proj_xy", compose(shift_map(tx.w, ey), v),
           compose(action_deg0_shifted(ay, 1), txy.w));
    return out;
}

// ---------------------------------------------------------------------------
// The strict isomorphism M//(x,y) = M//(y,x) for scalar (strictly commuting)
// pairs: swap the two middle cone blocks and negate the innermost one.

template <class F>
struct CommutationData {
    ChainMap<F> iso; // koszul(M,[x,y]).top -> koszul(M,[y,x]).top
    bool composite_square = false; // compatibility with the composites to M
    bool inclusion_square = false; // anticommutation of the inclusion square
};

// Sigma^{|y|}(incl of the first defining triangle), as a map
// Sigma^{|x|+|y|} M -> Sigma^{|y|} (M // x).
template <class F>
ChainMap<F> action_to_incl_shift(const CentralElement<F>& x, const CentralElement<F>& y,
                                 const KoszulTower<F>& T) {
    (void)x;
    return shift_map(T.defining[0].v, y.degree);
}

template <class F>
CommutationData<F> koszul_commutation(const CentralElement<F>& x, const CentralElement<F>& y,
                                      const KoszulTower<F>& Txy, const KoszulTower<F>& Tyx) {
    const auto& M = Txy.base;
    const F& ff = M->ring.f;
    const int ex = x.degree, ey = y.degree;
    const auto& src = Txy.stages[2];
    const auto& dst = Tyx.stages[2];
    std::vector<Mat<E<F>>> comps;
    for (int n = src->lo; n <= src->hi; ++n) {
        // src^n = M^{n+ex+ey} (+) M^{n+ey+1} (+) M^{n+ex+1} (+) M^{n+2}
        // dst^n = M^{n+ex+ey} (+) M^{n+ex+1} (+) M^{n+ey+1} (+) M^{n+2}
        const int d1 = M->kdim(n + ex + ey);
        const int d2 = M->kdim(n + ey + 1);
        const int d3 = M->kdim(n + ex + 1);
        const int d4 = M->kdim(n + 2);
        Mat<E<F>> m(d1 + d3 + d2 + d4, d1 + d2 + d3 + d4);
        for (int i = 0; i < d1; ++i) m(i, i) = ff.one();
        for (int i = 0; i < d2; ++i) m(d1 + d3 + i, d1 + i) = ff.one();
        for (int i = 0; i < d3; ++i) m(d1 + i, d1 + d2 + i) = ff.one();
        for (int i = 0; i < d4; ++i) m(d1 + d3 + d2 + i, d1 + d2 + d3 + i) = ff.neg(ff.one());
        comps.push_back(std::move(m));
    }
    CommutationData<F> out;
    out.iso = make_chain_map(src, dst, 0, std::move(comps));
    // square 1: the composites to M agree through the isomorphism
    auto lhs = compose(Tyx.composite, shift_map(out.iso, -2));
    out.composite_square = map_is_zero(map_sub(lhs, Txy.composite)) || homotopic(lhs, Txy.composite);
    // square 2: inclusion square anticommutes
    auto path1 = compose(Txy.defining[1].v, action_to_incl_shift(x, y, Txy));
    auto path2 = compose(Tyx.defining[1].v, action_to_incl_shift(y, x, Tyx));
    auto lhs2 = compose(out.iso, path1);
    out.inclusion_square = map_is_zero(map_add(lhs2, path2)) || homotopic(lhs2, map_neg(path2));
    return out;
}

} // namespace koszul
