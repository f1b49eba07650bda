#pragma once

#include "koszul/central.hpp"
#include "koszul/homcomplex.hpp"
#include "koszul/product.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Window policies.  Verdicts always carry the window they were computed on
// and a proof kind saying how far the claim reaches:
//   PerfectSource — the test object has projective terms and both complexes
//                   are bounded, so the window covers every nonzero degree;
//   Periodic      — a periodicity certificate extends a window claim;
//   WindowOnly    — the claim is exactly the window, nothing more.

enum class ProofKind { PerfectSource, Periodic, WindowOnly };

inline std::string proof_kind_name(ProofKind k) {
    switch (k) {
        case ProofKind::PerfectSource: return "perfect_source";
        case ProofKind::Periodic: return "periodic";
        default: return "window_only";
    }
}

struct WindowPolicy {
    DegreeWindow window;     // empty = derive the full Hom window
    ProofKind kind = ProofKind::WindowOnly;
};

// Is every term of C projective?  Over Z and fields all terms are free; over
// a local monomial algebra projective = free, certified by a minimal cover
// that is bijective.
template <class F>
bool has_projective_terms(const CxPtr<F>& C) {
    if (!C->ring.is_quotient()) return true;
    const F& f = C->ring.f;
    for (int n = C->lo; n <= C->hi; ++n) {
        auto t = C->term(n);
        if (t.is_free()) continue;
        const auto& V = *t.pres;
        int nv = V.alg->nvars();
        Mat<E<F>> rad(V.dim, nv * V.dim);
        for (int v = 0; v < nv; ++v) set_block(rad, 0, v * V.dim, V.ops[static_cast<std::size_t>(v)]);
        int mu = V.dim - linalg::rank(f, rad);
        if (mu * V.alg->dim() != V.dim) return false;
        // the minimal cover A^mu -> V must be injective (equal dimensions force
        // isomorphism); reuse the resolution helpers lazily
        Mat<E<F>> radI(V.dim, nv * V.dim + V.dim);
        set_block(radI, 0, 0, rad);
        for (int i = 0; i < V.dim; ++i) radI(i, nv * V.dim + i) = f.one();
        auto ech = linalg::rref(f, radI);
        std::vector<int> gens;
        for (int pc : ech.pivot_cols)
            if (pc >= nv * V.dim) gens.push_back(pc - nv * V.dim);
        const auto& A = *V.alg;
        Mat<E<F>> eps(V.dim, static_cast<int>(gens.size()) * A.dim());
        for (std::size_t g = 0; g < gens.size(); ++g)
            for (int j = 0; j < A.dim(); ++j) {
                auto actm = V.act_monomial(A.basis[static_cast<std::size_t>(j)]);
                for (int r = 0; r < V.dim; ++r)
                    eps(r, static_cast<int>(g) * A.dim() + j) = actm(r, gens[g]);
            }
        if (linalg::rank(f, eps) != V.dim) return false;
    }
    return true;
}

// The honest default window: every degree where Hom^n(C, M) can be nonzero,
// padded by two.
template <class F>
DegreeWindow full_hom_window(const CxPtr<F>& C, const CxPtr<F>& M) {
    return DegreeWindow{M->lo - C->hi - 2, M->hi - C->lo + 2};
}

template <class F>
WindowPolicy resolve_policy(const CxPtr<F>& C, const CxPtr<F>& M, WindowPolicy p) {
    if (p.window.empty()) p.window = full_hom_window(C, M);
    if (p.kind == ProofKind::PerfectSource && !has_projective_terms(C))
        throw input_error("policy error: perfect_source requested but the test object is not "
                          "projective termwise");
    return p;
}

// ---------------------------------------------------------------------------
// Ghost certificates: per-degree witnesses that Hom*(C, f) = 0.

template <class F>
struct GhostDegreeEntry {
    int n = 0;
    int classes = 0;       // generators of H^n(hom(C, source))
    Mat<E<F>> gen_cycles;  // their cycle representatives
    Mat<E<F>> images;      // image cycles in hom(C, target)^{n+deg}
    Mat<E<F>> preimages;   // d(preimages) = images, the zero-class witnesses
    bool zero = true;
};

template <class F>
struct GhostCertificate {
    WindowPolicy policy;
    int map_degree = 0;
    std::vector<GhostDegreeEntry<F>> entries;
    bool ghost = true;
    int first_nonghost_degree = 0;
};

template <class F>
GhostCertificate<F> ghost_check(const ChainMap<F>& f, const CxPtr<F>& C, WindowPolicy policy_in) {
    const F& ff = f.X->ring.f;
    WindowPolicy policy = resolve_policy(C, f.X, policy_in);
    auto HX = hom_complex(C, f.X);
    auto HY = hom_complex(C, f.Y);
    auto post = hom_induced_post(HX, HY, f);

    GhostCertificate<F> cert;
    cert.policy = policy;
    cert.map_degree = f.deg;
    for (int n = policy.window.lo; n <= policy.window.hi; ++n) {
        GhostDegreeEntry<F> e;
        e.n = n;
        if constexpr (F::is_integers) {
            auto H = homology_z(HX.cx, n);
            std::vector<int> keep;
            for (std::size_t i = 0; i < H.invariants.size(); ++i)
                if (H.invariants[i] != 1) keep.push_back(static_cast<int>(i));
            e.classes = static_cast<int>(keep.size());
            e.gen_cycles = Mat<E<F>>(HX.cx->kdim(n), e.classes);
            for (int j = 0; j < e.classes; ++j)
                for (int r = 0; r < HX.cx->kdim(n); ++r) e.gen_cycles(r, j) = H.gens(r, keep[static_cast<std::size_t>(j)]);
        } else {
            auto H = homology_k(HX.cx, n);
            e.classes = H.dim;
            e.gen_cycles = H.reps;
        }
        if (e.classes == 0) {
            cert.entries.push_back(std::move(e));
            continue;
        }
        e.images = linalg::mul(ff, post.comp(n), e.gen_cycles);
        auto d = HY.cx->dmat(n + f.deg - 1);
        auto sol = linalg::solve(ff, d, e.images);
        if (sol.ok()) {
            e.preimages = *sol.x;
        } else {
            e.zero = false;
            cert.ghost = false;
            cert.first_nonghost_degree = n;
        }
        cert.entries.push_back(std::move(e));
    }
    return cert;
}

// f is M-coghost: precomposition into Hom*(-, G) vanishes.
template <class F>
GhostCertificate<F> coghost_check(const ChainMap<F>& f, const CxPtr<F>& G, WindowPolicy policy_in) {
    const F& ff = f.X->ring.f;
    WindowPolicy policy = policy_in;
    if (policy.window.empty())
        policy.window = window_union(full_hom_window(f.X, G), full_hom_window(f.Y, G));
    auto HX = hom_complex(f.Y, G); // source of the induced map
    auto HY = hom_complex(f.X, G);
    auto pre = hom_induced_pre(HX, HY, f);

    GhostCertificate<F> cert;
    cert.policy = policy;
    cert.map_degree = f.deg;
    for (int n = policy.window.lo; n <= policy.window.hi; ++n) {
        GhostDegreeEntry<F> e;
        e.n = n;
        if constexpr (F::is_integers) {
            auto H = homology_z(HX.cx, n);
            std::vector<int> keep;
            for (std::size_t i = 0; i < H.invariants.size(); ++i)
                if (H.invariants[i] != 1) keep.push_back(static_cast<int>(i));
            e.classes = static_cast<int>(keep.size());
            e.gen_cycles = Mat<E<F>>(HX.cx->kdim(n), e.classes);
            for (int j = 0; j < e.classes; ++j)
                for (int r = 0; r < HX.cx->kdim(n); ++r) e.gen_cycles(r, j) = H.gens(r, keep[static_cast<std::size_t>(j)]);
        } else {
            auto H = homology_k(HX.cx, n);
            e.classes = H.dim;
            e.gen_cycles = H.reps;
        }
        if (e.classes == 0) {
            cert.entries.push_back(std::move(e));
            continue;
        }
        e.images = linalg::mul(ff, pre.comp(n), e.gen_cycles);
        auto d = HY.cx->dmat(n + f.deg - 1);
        auto sol = linalg::solve(ff, d, e.images);
        if (sol.ok()) {
            e.preimages = *sol.x;
        } else {
            e.zero = false;
            cert.ghost = false;
            cert.first_nonghost_degree = n;
        }
        cert.entries.push_back(std::move(e));
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Regular elements: route (0) injectivity of the action on Hom-homology and
// route (1) ghostliness of the connecting map are computed independently and
// must agree.

template <class F>
struct RegularElementVerdict {
    bool regular = false;
    bool injective_route = false; // route (0)
    bool ghost_route = false;     // route (1)
    GhostCertificate<F> connecting_cert;
    WindowPolicy policy;
    int first_noninjective_degree = 0;
};

// injectivity of the induced action on H^*(hom(C, M)) over the window
template <class F>
std::pair<bool, int> action_injective_on_hom(const CentralElement<F>& x, const CxPtr<F>& C,
                                             const CxPtr<F>& M, const DegreeWindow& w) {
    const F& ff = M->ring.f;
    auto H = hom_complex(C, M);
    auto post = hom_induced_post(H, H, act(x, M));
    for (int n = w.lo; n <= w.hi; ++n) {
        if constexpr (F::is_integers) {
            // scalar multiplication on each invariant-factor summand
            auto hz = homology_z(H.cx, n);
            const BigInt s = x.scalar;
            for (const auto& d : hz.invariants) {
                if (d == 1) continue;
                if (d == 0) {
                    if (s == 0) return {false, n};
                } else if (gcd(s, d) != 1) {
                    return {false, n};
                }
            }
        } else {
            auto hs = homology_k(H.cx, n);
            if (hs.dim == 0) continue;
            auto ht = homology_k(H.cx, n + x.degree);
            Mat<E<F>> m(ht.dim, hs.dim);
            for (int j = 0; j < hs.dim; ++j) {
                auto img = linalg::mul(ff, post.comp(n), column(hs.reps, j));
                auto cls = ht.class_of(ff, img);
                for (int i = 0; i < ht.dim; ++i) m(i, j) = cls[static_cast<std::size_t>(i)];
            }
            if (linalg::rank(ff, m) != hs.dim) return {false, n};
        }
    }
    return {true, 0};
}

template <class F>
RegularElementVerdict<F> is_regular_element(const CentralElement<F>& x, const CxPtr<F>& C,
                                            const CxPtr<F>& M, WindowPolicy policy_in) {
    RegularElementVerdict<F> out;
    out.policy = resolve_policy(C, M, policy_in);
    auto [inj, bad] = action_injective_on_hom(x, C, M, out.policy.window);
    out.injective_route = inj;
    out.first_noninjective_degree = bad;

    auto T = koszul_tower(M, {x});
    // ghost window: the connecting map has source Sigma^{-1}(M//x)
    WindowPolicy cpol = out.policy;
    cpol.window = window_union(out.policy.window, full_hom_window(C, shift(T.stages[1], -1)));
    out.connecting_cert = ghost_check(T.connecting[0], C, cpol);
    out.ghost_route = out.connecting_cert.ghost;

    if (out.injective_route != out.ghost_route &&
        (out.policy.kind == ProofKind::PerfectSource || out.policy.kind == ProofKind::Periodic))
        throw consistency_error("is_regular_element: routes (0) and (1) disagree");
    if (out.injective_route != out.ghost_route)
        throw consistency_error("is_regular_element: routes (0) and (1) disagree on the window");
    out.regular = out.injective_route;
    return out;
}

// ---------------------------------------------------------------------------
// Regular sequences.

enum class RegularityVerdict { Regular, WeaklyRegular, NotRegular };

inline std::string verdict_name(RegularityVerdict v) {
    switch (v) {
        case RegularityVerdict::Regular: return "regular";
        case RegularityVerdict::WeaklyRegular: return "weakly_regular";
        default: return "not_regular";
    }
}

template <class F>
struct RegularityReport {
    WindowPolicy policy;
    KoszulTower<F> tower;
    std::vector<RegularElementVerdict<F>> steps;
    int failed_step = -1; // 1-based index of the first non-regular step
    bool weakly_regular = false;
    bool composite_nonzero = false;
    bool source_projective = false; // honesty flag for the non-zero condition
    HomotopyOutcome<F> nonzero_outcome;
    std::vector<GhostCertificate<F>> connecting_ghost; // the t-fold ghost property
    RegularityVerdict verdict = RegularityVerdict::NotRegular;
};

template <class F>
RegularityReport<F> is_regular_sequence(const std::vector<CentralElement<F>>& xs, const CxPtr<F>& C,
                                        const CxPtr<F>& M, WindowPolicy policy_in) {
    RegularityReport<F> rep;
    rep.tower = koszul_tower(M, xs);
    rep.policy = resolve_policy(C, M, policy_in);

    const int t = static_cast<int>(xs.size());
    bool all = true;
    for (int s = 0; s < t && all; ++s) {
        auto step = is_regular_element(xs[static_cast<std::size_t>(s)], C,
                                       rep.tower.stages[static_cast<std::size_t>(s)], rep.policy);
        if (!step.regular) {
            rep.failed_step = s + 1;
            all = false;
        }
        rep.steps.push_back(std::move(step));
    }
    rep.weakly_regular = all;

    // the non-zero condition: the composite must not be null-homotopic
    rep.source_projective = has_projective_terms(rep.tower.top());
    rep.nonzero_outcome = null_homotopy_widening(rep.tower.composite);
    rep.composite_nonzero = !rep.nonzero_outcome.ok();

    if (rep.weakly_regular) {
        rep.verdict = rep.composite_nonzero ? RegularityVerdict::Regular
                                            : RegularityVerdict::WeaklyRegular;
    } else {
        rep.verdict = RegularityVerdict::NotRegular;
    }

    // a regular verdict re-verifies the t-fold C-ghost property of the tower
    if (rep.verdict == RegularityVerdict::Regular) {
        for (int s = 0; s < t; ++s) {
            WindowPolicy cp = rep.policy;
            cp.window = DegreeWindow{}; // full window for each connecting map
            rep.connecting_ghost.push_back(
                ghost_check(rep.tower.connecting[static_cast<std::size_t>(s)], C, cp));
            if (!rep.connecting_ghost.back().ghost)
                throw consistency_error("regular verdict but a connecting map is not C-ghost");
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The non-vanishing ladder for scalar elements: statements (1),(1'),(2),(2'),
// (3),(3') of the equivalence proposition evaluated with explicit powers, and
// the implication diagram asserted.

struct NonzeroLadder {
    int power_cap = 3;
    bool map_zero_1 = false;  // (1)   composite for n = 1 null-homotopic
    bool obj_zero_1 = false;  // (1')  Koszul object contractible, n = 1
    bool map_zero_some = false; // (2)
    bool obj_zero_some = false; // (2')
    bool map_zero_all = false;  // (3)  within the power cap
    bool obj_zero_all = false;  // (3')
    bool implications_hold = true;
    std::vector<std::string> violations;
};

template <class F>
NonzeroLadder nonzero_equivalence_suite(const std::vector<CentralElement<F>>& xs, const CxPtr<F>& M,
                                        int power_cap = 3) {
    for (const auto& x : xs)
        if (!x.is_scalar())
            throw input_error("nonzero_equivalence_suite: scalar elements only");
    NonzeroLadder L;
    L.power_cap = power_cap;
    std::vector<bool> map_zero, obj_zero;
    for (int n = 1; n <= power_cap; ++n) {
        std::vector<CentralElement<F>> pow;
        for (const auto& x : xs) {
            CentralElement<F> xp = x;
            if constexpr (F::is_integers) {
                BigInt acc = 1;
                for (int k = 0; k < n; ++k) acc *= x.scalar;
                xp.scalar = acc;
                xp.name = x.name + "^" + std::to_string(n);
            } else {
                if (M->ring.is_quotient()) {
                    AElt<F> acc = aelt_monomial(*M->ring.alg, std::vector<int>(M->ring.alg->nvars(), 0),
                                                M->ring.f.one());
                    for (int k = 0; k < n; ++k) acc = aelt_mul(*M->ring.alg, acc, *x.ascalar);
                    xp.ascalar = acc;
                } else {
                    typename F::Elt acc = M->ring.f.one();
                    for (int k = 0; k < n; ++k) acc = M->ring.f.mul(acc, x.scalar);
                    xp.scalar = acc;
                }
                xp.name = x.name + "^" + std::to_string(n);
            }
            pow.push_back(std::move(xp));
        }
        auto T = koszul_tower(M, pow);
        map_zero.push_back(null_homotopy(T.composite).ok());
        obj_zero.push_back(is_contractible(T.top()));
    }
    L.map_zero_1 = map_zero[0];
    L.obj_zero_1 = obj_zero[0];
    for (bool b : map_zero) L.map_zero_some = L.map_zero_some || b;
    for (bool b : obj_zero) L.obj_zero_some = L.obj_zero_some || b;
    L.map_zero_all = true;
    L.obj_zero_all = true;
    for (bool b : map_zero) L.map_zero_all = L.map_zero_all && b;
    for (bool b : obj_zero) L.obj_zero_all = L.obj_zero_all && b;

    auto imply = [&](bool a, bool b, const char* name) {
        if (a && !b) {
            L.implications_hold = false;
            L.violations.push_back(name);
        }
    };
    // solid implications
    imply(L.map_zero_some, L.map_zero_1, "(2) => (1)");
    imply(L.map_zero_1, L.map_zero_some, "(1) => (2)");
    imply(L.map_zero_all, L.map_zero_1, "(3) => (1)");
    imply(L.obj_zero_1, L.map_zero_1, "(1') => (1)");
    imply(L.obj_zero_some, L.map_zero_some, "(2') => (2)");
    imply(L.obj_zero_all, L.map_zero_all, "(3') => (3)");
    // dashed implications: scalars are productive and Koszul-exact
    imply(L.map_zero_1, L.obj_zero_1, "(1) => (1')");
    imply(L.map_zero_some, L.obj_zero_some, "(2) => (2')");
    imply(L.map_zero_all, L.obj_zero_all, "(3) => (3')");
    imply(L.obj_zero_1, L.obj_zero_all, "(1') => (3')");
    if (xs.size() == 1) {
        // full equivalence for t = 1
        bool v = L.map_zero_1;
        if (L.obj_zero_1 != v || L.map_zero_some != v || L.obj_zero_some != v ||
            L.map_zero_all != v || L.obj_zero_all != v) {
            L.implications_hold = false;
            L.violations.push_back("t=1 full equivalence");
        }
    }
    return L;
}

} // namespace koszul
