#pragma once

#include <functional>

#include "koszul/complex.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// The classical Koszul complex Kos(x_1..x_t; V) of commuting operators on a
// module term, placed in cohomological degrees [-t, 0].  Serves as the
// independent oracle for the iterated-cone Koszul objects and as the carrier
// of the truncation-map statements.

namespace detail {

inline std::vector<std::vector<int>> subsets_of_size(int t, int j) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == j) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < t; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

} // namespace detail

template <class F>
CxPtr<F> classical_koszul(const Ring<F>& ring, const Term<F>& base,
                          const std::vector<Mat<E<F>>>& actions) {
    const F& f = ring.f;
    const int t = static_cast<int>(actions.size());
    const int d0 = term_kdim(ring, base);
    for (const auto& a : actions)
        if (a.rows != d0 || a.cols != d0) throw input_error("classical_koszul: action shape mismatch");

    std::vector<std::vector<std::vector<int>>> subs; // subs[j] = size-j subsets
    for (int j = 0; j <= t; ++j) subs.push_back(detail::subsets_of_size(t, j));

    auto copies = [&](int count) {
        Term<F> acc;
        for (int c = 0; c < count; ++c) acc = c == 0 ? base : sum_term(ring, acc, base);
        return acc;
    };

    std::vector<Term<F>> terms;
    for (int j = t; j >= 0; --j) terms.push_back(copies(static_cast<int>(subs[static_cast<std::size_t>(j)].size())));

    std::vector<Mat<E<F>>> diffs;
    for (int j = t; j >= 1; --j) {
        const auto& src = subs[static_cast<std::size_t>(j)];
        const auto& dst = subs[static_cast<std::size_t>(j - 1)];
        auto index_of = [&](const std::vector<int>& s) {
            for (std::size_t k = 0; k < dst.size(); ++k)
                if (dst[k] == s) return static_cast<int>(k);
            throw consistency_error("classical_koszul: subset index");
        };
        Mat<E<F>> d(static_cast<int>(dst.size()) * d0, static_cast<int>(src.size()) * d0);
        for (std::size_t c = 0; c < src.size(); ++c) {
            for (std::size_t p = 0; p < src[c].size(); ++p) {
                std::vector<int> rest = src[c];
                rest.erase(rest.begin() + static_cast<long>(p));
                int r = index_of(rest);
                auto blk = actions[static_cast<std::size_t>(src[c][p])];
                if (p % 2 == 1) blk = linalg::neg(f, blk);
                set_block(d, r * d0, static_cast<int>(c) * d0, blk);
            }
        }
        diffs.push_back(std::move(d));
    }
    return make_complex(ring, -t, std::move(terms), std::move(diffs));
}

// Koszul complex of ring scalars on a module term.
template <class F>
CxPtr<F> classical_koszul_scalars(const Ring<F>& ring, const Term<F>& base,
                                  const std::vector<AElt<F>>& xs) {
    std::vector<Mat<E<F>>> acts;
    for (const auto& x : xs) {
        if (base.pres) {
            acts.push_back(base.pres->act(x));
        } else {
            // free term: block-diagonal multiplication
            auto reg = regular_representation(ring.alg);
            auto m = reg->act(x);
            Mat<E<F>> blk(term_kdim(ring, base), term_kdim(ring, base));
            for (long g = 0; g < base.rank; ++g)
                set_block(blk, static_cast<int>(g) * ring.alg->dim(), static_cast<int>(g) * ring.alg->dim(), m);
            acts.push_back(std::move(blk));
        }
    }
    return classical_koszul(ring, base, acts);
}

inline CxPtr<ZZ> classical_koszul_integers(const std::vector<long long>& xs, int rank = 1) {
    ZZ z;
    auto ring = Ring<ZZ>::integers();
    std::vector<Mat<BigInt>> acts;
    for (long long x : xs) acts.push_back(linalg::scale(z, z.from_int(x), linalg::identity(z, rank)));
    return classical_koszul(ring, Term<ZZ>{rank, nullptr}, acts);
}

} // namespace koszul
