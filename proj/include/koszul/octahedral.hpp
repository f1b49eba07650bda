#pragma once

#include "koszul/triangle.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Chain-level higher octahedra.  Every f_i is replaced by a cofibration via
// its mapping cylinder; the quotients Qhat(i,j) = Xhat_j / Xhat_{i-1} of the
// resulting filtration realize the cones cone(f_{i,j}), and all structure maps
// are coordinate projections/inclusions, so the middle compatibilities hold
// strictly.  The report verifies:
//   (1) the candidate triangles Q(i,j) -> Q(i,k) -> Q(j+1,k) are exact,
//   (2) u o g = g and (3) h o v = h strictly,
//   (4) the two square families plus the interior square are homotopy cartesian.

template <class F>
struct OctahedralTower {
    int n = 0;
    std::vector<ChainMap<F>> fs;           // f_1..f_n
    std::vector<CxPtr<F>> X;               // X_0..X_n (the given objects)
    std::vector<CxPtr<F>> Xhat;            // cofibrant replacements
    std::vector<ChainMap<F>> incl;         // Xhat_{j-1} -> Xhat_j (split injections)
    std::vector<ChainMap<F>> section;      // X_j -> Xhat_j
    std::vector<ChainMap<F>> retract;      // Xhat_j -> X_j
    std::map<std::pair<int, int>, CxPtr<F>> Q;
    std::map<std::pair<int, int>, ChainMap<F>> g; // X_j -> Q(i,j)
    std::map<std::pair<int, int>, ChainMap<F>> h; // Q(i,j) -> Sigma X_{i-1}
    std::map<std::pair<int, int>, ChainMap<F>> u; // Q(i,j) -> Q(i+1,j)
    std::map<std::pair<int, int>, ChainMap<F>> v; // Q(i,j) -> Q(i,j+1)
    std::map<std::pair<int, int>, Triangle<F>> cone_ident; // (f_{i,j}, g, h) certified

    ChainMap<F> f_composite(int i, int j) const { // f_{i,j} = f_j o ... o f_i
        ChainMap<F> c = fs[static_cast<std::size_t>(i - 1)];
        for (int k = i + 1; k <= j; ++k) c = compose(fs[static_cast<std::size_t>(k - 1)], c);
        return c;
    }
    ChainMap<F> v_composite(int i, int j, int k) const { // Q(i,j) -> Q(i,k)
        ChainMap<F> c = v.at({i, j});
        for (int l = j + 1; l < k; ++l) c = compose(v.at({i, l}), c);
        return c;
    }
    ChainMap<F> u_composite(int i, int j, int k) const { // Q(i,k) -> Q(j+1,k)
        ChainMap<F> c = u.at({i, k});
        for (int l = i + 1; l <= j; ++l) c = compose(u.at({l, k}), c);
        return c;
    }
};

struct OctahedralCheck {
    std::string name;
    bool pass = false;
    bool strict = false;
};

template <class F>
struct OctahedralReport {
    std::vector<OctahedralCheck> triangles;      // item (1)
    std::vector<OctahedralCheck> strict_squares; // items (2), (3)
    std::vector<OctahedralCheck> cartesian;      // items (4) and the interior square
    bool pass = true;
};

namespace detail {

// quotient of a complex by the leading `subdim(n)` coordinates, which form a
// subcomplex; returns the quotient and the projection
template <class F>
std::pair<CxPtr<F>, ChainMap<F>> trailing_quotient(const CxPtr<F>& X,
                                                   const std::function<int(int)>& subdim) {
    const F& f = X->ring.f;
    std::vector<Term<F>> terms;
    std::vector<Mat<E<F>>> diffs;
    for (int n = X->lo; n <= X->hi; ++n) {
        const Term<F> t = X->term(n);
        const int cut = subdim(n);
        const int keep = X->kdim(n) - cut;
        if (t.is_free()) {
            const int unit = X->ring.unit_kdim();
            if (cut % unit != 0)
                throw consistency_error("trailing_quotient: cut is not generator-aligned");
            terms.push_back(Term<F>{t.rank - cut / unit, nullptr});
        } else {
            auto m = std::make_shared<ModulePres<F>>();
            m->alg = X->ring.alg;
            m->dim = keep;
            for (const auto& op : t.pres->ops) m->ops.push_back(get_block(op, cut, cut, keep, keep));
            terms.push_back(Term<F>{0, m});
        }
    }
    for (int n = X->lo; n < X->hi; ++n) {
        auto d = X->dmat(n);
        diffs.push_back(get_block(d, subdim(n + 1), subdim(n), X->kdim(n + 1) - subdim(n + 1),
                                  X->kdim(n) - subdim(n)));
    }
    auto Qc = make_complex(X->ring, X->lo, std::move(terms), std::move(diffs));
    std::vector<Mat<E<F>>> pc;
    for (int n = X->lo; n <= X->hi; ++n) {
        Mat<E<F>> m(Qc->kdim(n), X->kdim(n));
        for (int i = 0; i < Qc->kdim(n); ++i) m(i, subdim(n) + i) = f.one();
        pc.push_back(std::move(m));
    }
    auto proj = make_chain_map(X, Qc, 0, std::move(pc), false);
    if (!chain_map_identity_holds(proj))
        throw consistency_error("trailing_quotient: projection is not a chain map");
    return {Qc, proj};
}

} // namespace detail

template <class F>
OctahedralTower<F> octahedral_tower(std::vector<ChainMap<F>> fs_in) {
    OctahedralTower<F> T;
    T.fs = std::move(fs_in);
    T.n = static_cast<int>(T.fs.size());
    if (T.n < 2) throw input_error("octahedral_tower: at least two composable maps required");
    for (int i = 0; i + 1 < T.n; ++i)
        if (!same_shape(*T.fs[static_cast<std::size_t>(i)].Y, *T.fs[static_cast<std::size_t>(i + 1)].X))
            throw input_error("octahedral_tower: maps are not composable");
    for (const auto& f : T.fs)
        if (f.deg != 0) throw input_error("octahedral_tower: degree-0 maps required");

    T.X.push_back(T.fs[0].X);
    for (const auto& f : T.fs) T.X.push_back(f.Y);

    // cofibrant replacement by iterated mapping cylinders
    T.Xhat.push_back(T.X[0]);
    T.section.push_back(identity_map(T.X[0]));
    T.retract.push_back(identity_map(T.X[0]));
    for (int j = 1; j <= T.n; ++j) {
        auto gj = compose(T.fs[static_cast<std::size_t>(j - 1)], T.retract.back());
        auto cyl = cylinder(gj);
        T.Xhat.push_back(cyl.cyl);
        T.incl.push_back(cyl.incl_src);
        T.section.push_back(cyl.incl_tgt);
        T.retract.push_back(cyl.retract);
    }

    // quotients: Xhat_{i-1} sits inside Xhat_j as the leading coordinates
    for (int i = 1; i <= T.n; ++i)
        for (int j = i; j <= T.n; ++j) {
            const auto& sub = T.Xhat[static_cast<std::size_t>(i - 1)];
            const auto& amb = T.Xhat[static_cast<std::size_t>(j)];
            auto [Qc, proj] = detail::trailing_quotient<F>(amb, [&](int nn) { return sub->kdim(nn); });
            T.Q[{i, j}] = Qc;
            T.g[{i, j}] = compose(proj, T.section[static_cast<std::size_t>(j)]);
            // connecting map: the glue block of the ambient differential,
            // pushed down to Sigma X_{i-1} through the cylinder retraction
            const F& f = amb->ring.f;
            std::vector<Mat<E<F>>> hc;
            auto SX = shift(T.X[static_cast<std::size_t>(i - 1)], 1);
            for (int nn = Qc->lo; nn <= Qc->hi; ++nn) {
                auto d = amb->dmat(nn);
                auto blk = get_block(d, 0, sub->kdim(nn), sub->kdim(nn + 1), Qc->kdim(nn));
                hc.push_back(linalg::mul(f, T.retract[static_cast<std::size_t>(i - 1)].comp(nn + 1), blk));
            }
            T.h[{i, j}] = make_chain_map(Qc, SX, 0, std::move(hc), false);
            if (!chain_map_identity_holds(T.h[{i, j}]))
                throw consistency_error("octahedral_tower: connecting map failed");
        }

    // u and v as coordinate projections/inclusions
    const F& f = T.X[0]->ring.f;
    for (int i = 1; i <= T.n; ++i)
        for (int j = i; j <= T.n; ++j) {
            if (i + 1 <= j) {
                const auto& src = T.Q.at({i, j});
                const auto& dst = T.Q.at({i + 1, j});
                std::vector<Mat<E<F>>> c;
                for (int nn = src->lo; nn <= src->hi; ++nn) {
                    Mat<E<F>> m(dst->kdim(nn), src->kdim(nn));
                    for (int r = 0; r < dst->kdim(nn); ++r)
                        m(r, src->kdim(nn) - dst->kdim(nn) + r) = f.one();
                    c.push_back(std::move(m));
                }
                T.u[{i, j}] = make_chain_map(src, dst, 0, std::move(c));
            }
            if (j + 1 <= T.n) {
                const auto& src = T.Q.at({i, j});
                const auto& dst = T.Q.at({i, j + 1});
                std::vector<Mat<E<F>>> c;
                for (int nn = src->lo; nn <= src->hi; ++nn) {
                    Mat<E<F>> m(dst->kdim(nn), src->kdim(nn));
                    for (int r = 0; r < src->kdim(nn); ++r) m(r, r) = f.one();
                    c.push_back(std::move(m));
                }
                T.v[{i, j}] = make_chain_map(src, dst, 0, std::move(c));
            }
        }

    // certify Q(i,j) ~ cone(f_{i,j}) through the triangles (f_{i,j}, g, h)
    for (int i = 1; i <= T.n; ++i)
        for (int j = i; j <= T.n; ++j) {
            auto tri = certify_triangle(T.f_composite(i, j), T.g.at({i, j}), T.h.at({i, j}));
            if (!tri)
                throw consistency_error("octahedral_tower: quotient failed to realize the cone");
            T.cone_ident[{i, j}] = std::move(*tri);
        }
    return T;
}

template <class F>
OctahedralReport<F> octahedral_report(const OctahedralTower<F>& T) {
    OctahedralReport<F> R;
    auto push = [&](std::vector<OctahedralCheck>& where, std::string nm, bool pass, bool strict) {
        where.push_back({std::move(nm), pass, strict});
        R.pass = R.pass && pass;
    };
    auto tag = [](int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };

    // (1) triangles Q(i,j) -> Q(i,k) -> Q(j+1,k) -> Sigma Q(i,j)
    for (int i = 1; i <= T.n; ++i)
        for (int j = i; j < T.n; ++j)
            for (int k = j + 1; k <= T.n; ++k) {
                auto a = T.v_composite(i, j, k);
                auto b = T.u_composite(i, j, k);
                auto w = compose(shift_map(T.g.at({i, j}), 1), T.h.at({j + 1, k}));
                auto tri = certify_triangle(a, b, w);
                push(R.triangles, "triangle " + tag(i, j) + "->" + tag(i, k) + "->" + tag(j + 1, k),
                     tri.has_value(), false);
            }

    // (2) u o g = g strictly
    for (int i = 1; i < T.n; ++i)
        for (int j = i; j < T.n; ++j) {
            auto lhs = compose(T.u.at({i, j + 1}), T.g.at({i, j + 1}));
            auto rhs = T.g.at({i + 1, j + 1});
            push(R.strict_squares, "u.g=g " + tag(i, j + 1), map_is_zero(map_sub(lhs, rhs)), true);
        }
    // (3) h o v = h strictly
    for (int i = 1; i <= T.n; ++i)
        for (int j = i; j < T.n; ++j) {
            auto lhs = compose(T.h.at({i, j + 1}), T.v.at({i, j}));
            auto rhs = T.h.at({i, j});
            push(R.strict_squares, "h.v=h " + tag(i, j), map_is_zero(map_sub(lhs, rhs)), true);
        }

    // (4) both square families are homotopy cartesian
    for (int i = 1; i <= T.n; ++i)
        for (int j = i; j < T.n; ++j) {
            auto cv = homotopy_cartesian_check(T.fs[static_cast<std::size_t>(j)], T.g.at({i, j}),
                                               T.g.at({i, j + 1}), T.v.at({i, j}));
            push(R.cartesian, "square f/g/v " + tag(i, j), cv.commutes && cv.cartesian, false);
            auto cu = homotopy_cartesian_check(T.u.at({i, j + 1}), T.h.at({i, j + 1}),
                                               T.h.at({i + 1, j + 1}),
                                               shift_map(T.fs[static_cast<std::size_t>(i - 1)], 1));
            push(R.cartesian, "square u/h/f " + tag(i, j + 1), cu.commutes && cu.cartesian, false);
        }
    // interior squares
    for (int i = 2; i < T.n; ++i) {
        auto ci = homotopy_cartesian_check(T.v.at({i - 1, i}), T.u.at({i - 1, i}), T.u.at({i - 1, i + 1}),
                                           T.v.at({i, i}));
        push(R.cartesian, "interior square i=" + std::to_string(i), ci.commutes && ci.cartesian,
             false);
    }
    return R;
}

} // namespace koszul
