#pragma once

#include <functional>

#include "koszul/regularity_iso.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Graded polynomial rings and degreewise-finite graded module windows.
// Internal degrees are the R-grading; every verdict embeds the window it was
// computed on, since pieces outside are unknowable.

template <class F>
struct GradedRing {
    F f;
    std::vector<std::string> vars;
    std::vector<int> degs; // positive internal degrees

    int var_index(const std::string& s) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == s) return static_cast<int>(i);
        throw input_error("unknown graded variable '" + s + "'");
    }
};

template <class F>
struct GradedWindow {
    GradedRing<F> ring;
    int d0 = 0, d1 = -1;
    std::vector<int> dims; // dims[d - d0]
    // action[v][d] : dims(d + deg_v) x dims(d), for d, d+deg_v in window
    std::vector<std::map<int, Mat<E<F>>>> action;

    int dim(int d) const {
        if (d < d0 || d > d1) return 0;
        return dims[static_cast<std::size_t>(d - d0)];
    }
    Mat<E<F>> act(int v, int d) const {
        auto it = action[static_cast<std::size_t>(v)].find(d);
        if (it != action[static_cast<std::size_t>(v)].end()) return it->second;
        return Mat<E<F>>(dim(d + ring.degs[static_cast<std::size_t>(v)]), dim(d));
    }

    void validate() const {
        const F& f = ring.f;
        const int nv = static_cast<int>(ring.vars.size());
        for (int v = 0; v < nv; ++v)
            for (int w = v + 1; w < nv; ++w)
                for (int d = d0; d <= d1; ++d) {
                    int ev = ring.degs[static_cast<std::size_t>(v)], ew = ring.degs[static_cast<std::size_t>(w)];
                    if (d + ev + ew > d1) continue;
                    auto a = linalg::mul(f, act(w, d + ev), act(v, d));
                    auto b = linalg::mul(f, act(v, d + ew), act(w, d));
                    if (!(a == b)) throw input_error("graded module: actions do not commute");
                }
    }
};

// monomial basis of the free rank-one module (the ring itself), per degree
template <class F>
std::vector<std::vector<int>> graded_monomials(const GradedRing<F>& R, int degree) {
    std::vector<std::vector<int>> out;
    const int nv = static_cast<int>(R.vars.size());
    std::vector<int> cur(static_cast<std::size_t>(nv), 0);
    std::function<void(int, int)> rec = [&](int v, int rem) {
        if (v == nv) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        for (int k = 0; k * R.degs[static_cast<std::size_t>(v)] <= rem; ++k) {
            cur[static_cast<std::size_t>(v)] = k;
            rec(v + 1, rem - k * R.degs[static_cast<std::size_t>(v)]);
        }
        cur[static_cast<std::size_t>(v)] = 0;
    };
    if (degree >= 0) rec(0, degree);
    return out;
}

// the free module R(-twist)^1 ... direct sums via several twists
template <class F>
GradedWindow<F> free_graded_module(const GradedRing<F>& R, const std::vector<int>& twists, int d0,
                                   int d1) {
    GradedWindow<F> M;
    M.ring = R;
    M.d0 = d0;
    M.d1 = d1;
    const int nv = static_cast<int>(R.vars.size());
    // basis at degree d: pairs (j, monomial of degree d - twists[j])
    std::vector<std::vector<std::pair<int, std::vector<int>>>> basis;
    for (int d = d0; d <= d1; ++d) {
        std::vector<std::pair<int, std::vector<int>>> b;
        for (std::size_t j = 0; j < twists.size(); ++j)
            for (auto& m : graded_monomials(R, d - twists[j])) b.push_back({static_cast<int>(j), m});
        M.dims.push_back(static_cast<int>(b.size()));
        basis.push_back(std::move(b));
    }
    M.action.resize(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v)
        for (int d = d0; d <= d1; ++d) {
            int e = R.degs[static_cast<std::size_t>(v)];
            if (d + e > d1) continue;
            const auto& src = basis[static_cast<std::size_t>(d - d0)];
            const auto& dst = basis[static_cast<std::size_t>(d + e - d0)];
            Mat<E<F>> m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
            for (std::size_t c = 0; c < src.size(); ++c) {
                auto tgt = src[c];
                tgt.second[static_cast<std::size_t>(v)] += 1;
                for (std::size_t r = 0; r < dst.size(); ++r)
                    if (dst[r] == tgt) m(static_cast<int>(r), static_cast<int>(c)) = R.f.one();
            }
            M.action[static_cast<std::size_t>(v)][d] = std::move(m);
        }
    return M;
}

// R / (monomial ideal), as a graded window
template <class F>
GradedWindow<F> monomial_quotient_window(const GradedRing<F>& R,
                                         const std::vector<std::vector<int>>& ideal, int d0, int d1) {
    GradedWindow<F> M;
    M.ring = R;
    M.d0 = d0;
    M.d1 = d1;
    const int nv = static_cast<int>(R.vars.size());
    auto killed = [&](const std::vector<int>& m) {
        for (const auto& g : ideal) {
            bool div = true;
            for (int v = 0; v < nv; ++v)
                if (m[static_cast<std::size_t>(v)] < g[static_cast<std::size_t>(v)]) div = false;
            if (div) return true;
        }
        return false;
    };
    std::vector<std::vector<std::vector<int>>> basis;
    for (int d = d0; d <= d1; ++d) {
        std::vector<std::vector<int>> b;
        for (auto& m : graded_monomials(R, d))
            if (!killed(m)) b.push_back(m);
        M.dims.push_back(static_cast<int>(b.size()));
        basis.push_back(std::move(b));
    }
    M.action.resize(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v)
        for (int d = d0; d <= d1; ++d) {
            const int e = R.degs[static_cast<std::size_t>(v)];
            if (d + e > d1) continue;
            const auto& src = basis[static_cast<std::size_t>(d - d0)];
            const auto& dst = basis[static_cast<std::size_t>(d + e - d0)];
            Mat<E<F>> m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
            for (std::size_t c = 0; c < src.size(); ++c) {
                auto tgt = src[c];
                tgt[static_cast<std::size_t>(v)] += 1;
                if (killed(tgt)) continue;
                for (std::size_t r = 0; r < dst.size(); ++r)
                    if (dst[r] == tgt) m(static_cast<int>(r), static_cast<int>(c)) = R.f.one();
            }
            M.action[static_cast<std::size_t>(v)][d] = std::move(m);
        }
    return M;
}

// action of a composite monomial power x_v^k starting at degree d
template <class F>
Mat<E<F>> graded_power_action(const GradedWindow<F>& M, int v, int k, int d) {
    const F& f = M.ring.f;
    const int e = M.ring.degs[static_cast<std::size_t>(v)];
    Mat<E<F>> acc = linalg::identity(f, M.dim(d));
    for (int i = 0; i < k; ++i) acc = linalg::mul(f, M.act(v, d + i * e), acc);
    return acc;
}

// ---------------------------------------------------------------------------
// Stable Koszul (Cech-type) stages: the dual Koszul complex of the n-th powers,
// realized degreewise.  Piece S at cohomological position |S| is M(n * w_S).

// The stage complex for a vector of powers, restricted to internal degree d;
// returns the differential blocks (i -> i+1) as dense matrices.
template <class F>
std::vector<Mat<E<F>>> stable_stage_complex_mixed(const GradedWindow<F>& M,
                                                  const std::vector<int>& gens,
                                                  const std::vector<int>& powers, int d,
                                                  std::vector<int>* dims_out = nullptr) {
    const F& f = M.ring.f;
    const int t = static_cast<int>(gens.size());
    std::vector<std::vector<std::vector<int>>> subsets;
    for (int i = 0; i <= t; ++i) subsets.push_back(detail::subsets_of_size(t, i));
    auto wS = [&](const std::vector<int>& S) {
        int w = 0;
        for (int v : S)
            w += powers[static_cast<std::size_t>(v)] *
                 M.ring.degs[static_cast<std::size_t>(gens[static_cast<std::size_t>(v)])];
        return w;
    };
    std::vector<std::vector<int>> offs(static_cast<std::size_t>(t) + 1);
    std::vector<int> dims(static_cast<std::size_t>(t) + 1, 0);
    for (int i = 0; i <= t; ++i) {
        for (const auto& S : subsets[static_cast<std::size_t>(i)]) {
            offs[static_cast<std::size_t>(i)].push_back(dims[static_cast<std::size_t>(i)]);
            dims[static_cast<std::size_t>(i)] += M.dim(d + wS(S));
        }
    }
    if (dims_out) *dims_out = dims;
    std::vector<Mat<E<F>>> diffs;
    for (int i = 0; i < t; ++i) {
        Mat<E<F>> D(dims[static_cast<std::size_t>(i + 1)], dims[static_cast<std::size_t>(i)]);
        const auto& src = subsets[static_cast<std::size_t>(i)];
        const auto& dst = subsets[static_cast<std::size_t>(i + 1)];
        for (std::size_t c = 0; c < src.size(); ++c) {
            const auto& S = src[c];
            for (int vpos = 0; vpos < t; ++vpos) {
                if (std::find(S.begin(), S.end(), vpos) != S.end()) continue;
                std::vector<int> T = S;
                T.insert(std::lower_bound(T.begin(), T.end(), vpos), vpos);
                int sign_pos = 0;
                for (int u : S)
                    if (u < vpos) ++sign_pos;
                int r = -1;
                for (std::size_t k = 0; k < dst.size(); ++k)
                    if (dst[k] == T) r = static_cast<int>(k);
                const int var = gens[static_cast<std::size_t>(vpos)];
                auto blk = graded_power_action(M, var, powers[static_cast<std::size_t>(vpos)],
                                               d + wS(S));
                if (sign_pos % 2 == 1) blk = linalg::neg(f, blk);
                set_block(D, offs[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(r)],
                          offs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)], blk);
            }
        }
        diffs.push_back(std::move(D));
    }
    return diffs;
}

template <class F>
std::vector<Mat<E<F>>> stable_stage_complex(const GradedWindow<F>& M, const std::vector<int>& gens,
                                            int n, int d, std::vector<int>* dims_out = nullptr) {
    return stable_stage_complex_mixed(M, gens, std::vector<int>(gens.size(), n), d, dims_out);
}

// transition map on the cohomological-degree-i term between two power vectors
// (componentwise increasing)
template <class F>
Mat<E<F>> stable_transition_mixed(const GradedWindow<F>& M, const std::vector<int>& gens,
                                  const std::vector<int>& from, const std::vector<int>& to, int i,
                                  int d) {
    const F& f = M.ring.f;
    const int t = static_cast<int>(gens.size());
    auto subsets = detail::subsets_of_size(t, i);
    auto wS = [&](const std::vector<int>& S, const std::vector<int>& powers) {
        int w = 0;
        for (int v : S)
            w += powers[static_cast<std::size_t>(v)] *
                 M.ring.degs[static_cast<std::size_t>(gens[static_cast<std::size_t>(v)])];
        return w;
    };
    int sdim = 0, tdim = 0;
    std::vector<int> soff, toff;
    for (const auto& S : subsets) {
        soff.push_back(sdim);
        toff.push_back(tdim);
        sdim += M.dim(d + wS(S, from));
        tdim += M.dim(d + wS(S, to));
    }
    Mat<E<F>> U(tdim, sdim);
    for (std::size_t k = 0; k < subsets.size(); ++k) {
        const auto& S = subsets[k];
        // multiply componentwise by prod_{v in S} x_v^{to_v - from_v}
        Mat<E<F>> blk = linalg::identity(f, M.dim(d + wS(S, from)));
        int cur = d + wS(S, from);
        for (int v : S) {
            const int var = gens[static_cast<std::size_t>(v)];
            const int diff = to[static_cast<std::size_t>(v)] - from[static_cast<std::size_t>(v)];
            if (diff < 0) throw input_error("stable transition: powers must be increasing");
            blk = linalg::mul(f, graded_power_action(M, var, diff, cur), blk);
            cur += diff * M.ring.degs[static_cast<std::size_t>(var)];
        }
        set_block(U, toff[k], soff[k], blk);
    }
    return U;
}

template <class F>
Mat<E<F>> stable_transition(const GradedWindow<F>& M, const std::vector<int>& gens, int n, int i,
                            int d) {
    return stable_transition_mixed(M, gens, std::vector<int>(gens.size(), n),
                                   std::vector<int>(gens.size(), n + 1), i, d);
}

// homology of a short complex of matrices at position i
template <class F>
int complex_homology_dim(const F& f, const std::vector<int>& dims,
                         const std::vector<Mat<E<F>>>& diffs, int i) {
    const int t = static_cast<int>(diffs.size());
    int rk_out = i < t ? linalg::rank(f, diffs[static_cast<std::size_t>(i)]) : 0;
    int rk_in = i > 0 ? linalg::rank(f, diffs[static_cast<std::size_t>(i - 1)]) : 0;
    return dims[static_cast<std::size_t>(i)] - rk_out - rk_in;
}

// ---------------------------------------------------------------------------
// Local cohomology by stabilized stable-Koszul stages.

enum class Stabilization { Isomorphism, RankStable, Inconclusive };

template <class F>
struct LocalCohomology {
    int i = 0;
    DegreeWindow internal;           // queried internal-degree window
    std::map<int, int> dims;         // stabilized dimensions per internal degree
    Stabilization how = Stabilization::Inconclusive;
    int stage = 0;                   // stage at which stabilization was certified
    bool conclusive() const { return how != Stabilization::Inconclusive; }
};

// H^i dimension of stage n at internal degree d, plus the rank of the induced
// map into stage n + steps
template <class F>
std::pair<int, int> stable_h_map_rank(const GradedWindow<F>& M, const std::vector<int>& gens,
                                      int n, int steps, int i, int d) {
    const F& f = M.ring.f;
    const int t = static_cast<int>(gens.size());
    std::vector<int> dn, dm;
    auto Cn = stable_stage_complex(M, gens, n, d, &dn);
    auto Cm = stable_stage_complex(M, gens, n + steps, d, &dm);
    Mat<E<F>> dout = i < t ? Cn[static_cast<std::size_t>(i)] : Mat<E<F>>(0, dn[static_cast<std::size_t>(i)]);
    Mat<E<F>> din = i > 0 ? Cn[static_cast<std::size_t>(i - 1)] : Mat<E<F>>(dn[static_cast<std::size_t>(i)], 0);
    Mat<E<F>> dinm = i > 0 ? Cm[static_cast<std::size_t>(i - 1)] : Mat<E<F>>(dm[static_cast<std::size_t>(i)], 0);
    auto Zn = linalg::kernel_basis(f, dout);
    const int hn = Zn.cols - (din.cols ? linalg::rank(f, din) : 0);
    Mat<E<F>> U = linalg::identity(f, dn[static_cast<std::size_t>(i)]);
    for (int s = 0; s < steps; ++s) {
        auto step = stable_transition(M, gens, n + s, i, d);
        U = linalg::mul(f, step, U);
    }
    auto UZ = linalg::mul(f, U, Zn);
    Mat<E<F>> W(UZ.rows, UZ.cols + dinm.cols);
    set_block(W, 0, 0, UZ);
    set_block(W, 0, UZ.cols, dinm);
    int rk = linalg::rank(f, W) - (dinm.cols ? linalg::rank(f, dinm) : 0);
    return {hn, rk};
}

template <class F>
LocalCohomology<F> local_cohomology(const GradedWindow<F>& M, const std::vector<int>& gens, int i,
                                    DegreeWindow internal, int power_cap) {
    if (i < 0) throw input_error("local_cohomology: nonnegative degree required");
    LocalCohomology<F> out;
    out.i = i;
    out.internal = internal;
    int wfull = 0;
    for (int v : gens) wfull += M.ring.degs[static_cast<std::size_t>(v)];
    for (int n = 1; n < power_cap; ++n) {
        if (internal.hi + (n + 2) * std::max(wfull, 1) > M.d1 || internal.lo < M.d0)
            throw input_error("local_cohomology: module window too small to certify stabilization "
                              "at this power cap");
        bool iso = true;
        bool rank_stable = true;
        std::map<int, int> dims;
        for (int d = internal.lo; d <= internal.hi; ++d) {
            auto [hn, rk1] = stable_h_map_rank(M, gens, n, 1, i, d);
            auto [hn1, rk1b] = stable_h_map_rank(M, gens, n + 1, 1, i, d);
            auto [hn_again, rk2] = stable_h_map_rank(M, gens, n, 2, i, d);
            (void)hn_again;
            if (!(hn == hn1 && rk1 == hn)) iso = false;
            if (!(rk1 == rk1b && rk1b == rk2)) rank_stable = false;
            dims[d] = iso ? hn : rk2;
        }
        if (iso) {
            out.dims = std::move(dims);
            out.how = Stabilization::Isomorphism;
            out.stage = n;
            return out;
        }
        if (rank_stable) {
            out.dims = std::move(dims);
            out.how = Stabilization::RankStable;
            out.stage = n;
            return out;
        }
    }
    return out; // inconclusive at the cap
}

// least nonvanishing local cohomology index, cross-checked against the longest
// weakly regular sequence found among the generators
template <class F>
struct GradeReport {
    std::optional<int> grade;           // none = no nonvanishing index in window
    int longest_regular = 0;
    bool cross_check = false;
    std::vector<LocalCohomology<F>> per_index;
};

// classical weak regularity of a variable sequence on a graded window
template <class F>
bool graded_sequence_weakly_regular(const GradedWindow<F>& M, const std::vector<int>& seq,
                                    DegreeWindow internal) {
    const F& f = M.ring.f;
    // quotient chain: maintain submodule spans per degree
    std::map<int, Mat<E<F>>> sub;
    for (int d = internal.lo; d <= internal.hi; ++d) sub[d] = Mat<E<F>>(M.dim(d), 0);
    for (int v : seq) {
        const int e = M.ring.degs[static_cast<std::size_t>(v)];
        for (int d = internal.lo; d + e <= internal.hi; ++d) {
            if (M.dim(d) == 0) continue;
            auto mat = M.act(v, d);
            const auto& st = sub.at(d + e);
            const auto& ss = sub.at(d);
            Mat<E<F>> W(mat.rows, mat.cols + st.cols);
            set_block(W, 0, 0, mat);
            set_block(W, 0, mat.cols, st);
            auto K = linalg::kernel_basis(f, W);
            Mat<E<F>> pre(mat.cols, K.cols + ss.cols);
            for (int j = 0; j < K.cols; ++j)
                for (int r = 0; r < mat.cols; ++r) pre(r, j) = K(r, j);
            set_block(pre, 0, K.cols, ss);
            if (linalg::rank(f, pre) != linalg::rank(f, ss)) return false;
        }
        for (int d = internal.lo; d <= internal.hi; ++d) {
            if (d - e < internal.lo) continue;
            auto mat = M.act(v, d - e);
            Mat<E<F>> bigger(M.dim(d), sub.at(d).cols + mat.cols);
            set_block(bigger, 0, 0, sub.at(d));
            set_block(bigger, 0, sub.at(d).cols, mat);
            sub[d] = std::move(bigger);
        }
    }
    return true;
}

template <class F>
GradeReport<F> grade(const GradedWindow<F>& M, const std::vector<int>& gens, DegreeWindow internal,
                     int power_cap) {
    GradeReport<F> rep;
    const int t = static_cast<int>(gens.size());
    for (int i = 0; i <= t; ++i) {
        auto lc = local_cohomology(M, gens, i, internal, power_cap);
        if (!lc.conclusive())
            throw input_error("grade: stabilization inconclusive at index " + std::to_string(i));
        bool nonzero = false;
        for (const auto& [d, v] : lc.dims) nonzero = nonzero || v > 0;
        rep.per_index.push_back(std::move(lc));
        if (nonzero && !rep.grade) rep.grade = i;
    }
    // longest weakly regular sequence among permutations of the generators
    std::vector<int> perm = gens;
    std::sort(perm.begin(), perm.end());
    int best = 0;
    do {
        for (int len = t; len >= 1; --len) {
            std::vector<int> seq(perm.begin(), perm.begin() + len);
            if (graded_sequence_weakly_regular(M, seq, internal)) {
                best = std::max(best, len);
                break;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    rep.longest_regular = best;
    rep.cross_check = rep.grade.has_value() ? (*rep.grade == best) : true;
    return rep;
}

} // namespace koszul
