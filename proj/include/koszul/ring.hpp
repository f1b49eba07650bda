#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "koszul/linalg.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// Finite-dimensional monomial quotient algebra
//   A = k[x_1..x_v] / (x_1^{a_1}, ..., x_v^{a_v}, extra monomials).
// Pure-power bounds make normal forms confluent without Groebner machinery;
// the monomial basis and multiplication table are verified at construction.

template <class F>
struct Algebra {
    F f;
    std::vector<std::string> vars;
    std::vector<int> bound;                // x_i^{bound_i} = 0, bound_i >= 1
    std::vector<std::vector<int>> extra;   // extra monomial relations (exponents)
    std::vector<std::vector<int>> basis;   // exponent vectors, degree-then-lex order
    std::map<std::vector<int>, int> index;

    int dim() const { return static_cast<int>(basis.size()); }
    int nvars() const { return static_cast<int>(vars.size()); }

    int var_index(const std::string& name) const {
        for (int i = 0; i < nvars(); ++i)
            if (vars[i] == name) return i;
        throw input_error("unknown variable '" + name + "'");
    }

    bool killed(const std::vector<int>& e) const {
        for (int i = 0; i < nvars(); ++i)
            if (e[i] >= bound[i]) return true;
        for (const auto& r : extra) {
            bool div = true;
            for (int i = 0; i < nvars(); ++i)
                if (e[i] < r[i]) { div = false; break; }
            if (div) return true;
        }
        return false;
    }

    // basis index of a monomial exponent vector, or -1 if it reduces to zero
    int monomial_index(const std::vector<int>& e) const {
        if (killed(e)) return -1;
        auto it = index.find(e);
        if (it == index.end()) throw consistency_error("monomial basis incomplete");
        return it->second;
    }

    static std::shared_ptr<const Algebra> create(F f, std::vector<std::string> vars,
                                                 std::vector<int> bound,
                                                 std::vector<std::vector<int>> extra = {}) {
        auto A = std::make_shared<Algebra>();
        A->f = f;
        A->vars = std::move(vars);
        A->bound = std::move(bound);
        A->extra = std::move(extra);
        const int v = A->nvars();
        if (static_cast<int>(A->bound.size()) != v)
            throw input_error("quotient algebra: one exponent bound per variable required");
        for (int b : A->bound)
            if (b < 1) throw input_error("quotient algebra: exponent bounds must be >= 1");
        for (const auto& r : A->extra)
            if (static_cast<int>(r.size()) != v)
                throw input_error("quotient algebra: malformed extra relation");

        std::vector<int> e(v, 0);
        for (;;) {
            if (!A->killed(e)) A->basis.push_back(e);
            int i = 0;
            while (i < v) {
                if (++e[i] < A->bound[i]) break;
                e[i] = 0;
                ++i;
            }
            if (i == v) break;
        }
        auto deg = [](const std::vector<int>& x) { return std::accumulate(x.begin(), x.end(), 0); };
        std::sort(A->basis.begin(), A->basis.end(),
                  [&](const auto& a, const auto& b) {
                      int da = deg(a), db = deg(b);
                      return da != db ? da < db : a < b;
                  });
        for (int i = 0; i < A->dim(); ++i) A->index[A->basis[i]] = i;
        if (A->basis.empty() || deg(A->basis[0]) != 0)
            throw input_error("quotient algebra: unit monomial missing from basis");

        A->verify_table();
        return A;
    }

    // exhaustive associativity/commutativity check on basis triples
    void verify_table() const {
        const int n = dim();
        auto mul_idx = [&](int i, int j) {
            std::vector<int> e(nvars());
            for (int t = 0; t < nvars(); ++t) e[t] = basis[i][t] + basis[j][t];
            return killed(e) ? -1 : index.at(e);
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (mul_idx(i, j) != mul_idx(j, i))
                    throw consistency_error("algebra multiplication not commutative");
                for (int k = 0; k < n; ++k) {
                    int ij = mul_idx(i, j);
                    int jk = mul_idx(j, k);
                    int l = ij < 0 ? -1 : mul_idx(ij, k);
                    int r = jk < 0 ? -1 : mul_idx(i, jk);
                    if (l != r) throw consistency_error("algebra multiplication not associative");
                }
            }
    }
};

// Element of a quotient algebra: dense coefficients over the monomial basis.
template <class F>
struct AElt {
    std::vector<typename F::Elt> c;
};

template <class F>
AElt<F> aelt_zero(const Algebra<F>& A) {
    AElt<F> r;
    r.c.assign(A.dim(), A.f.zero());
    return r;
}

template <class F>
AElt<F> aelt_monomial(const Algebra<F>& A, const std::vector<int>& e, typename F::Elt coeff) {
    AElt<F> r = aelt_zero(A);
    int i = A.monomial_index(e);
    if (i >= 0) r.c[i] = coeff;
    return r;
}

// normal form of a monomial-with-coefficient: a basis expansion (possibly zero)
template <class F>
AElt<F> normal_form(const Algebra<F>& A, const std::vector<std::pair<std::string, int>>& mono,
                    typename F::Elt coeff) {
    std::vector<int> e(A.nvars(), 0);
    for (const auto& [name, exp] : mono) {
        if (exp < 0) throw input_error("negative exponent in monomial");
        e[A.var_index(name)] += exp;
    }
    return aelt_monomial(A, e, coeff);
}

template <class F>
AElt<F> aelt_add(const Algebra<F>& A, const AElt<F>& x, const AElt<F>& y) {
    AElt<F> r = aelt_zero(A);
    for (int i = 0; i < A.dim(); ++i) r.c[i] = A.f.add(x.c[i], y.c[i]);
    return r;
}

template <class F>
AElt<F> aelt_mul(const Algebra<F>& A, const AElt<F>& x, const AElt<F>& y) {
    AElt<F> r = aelt_zero(A);
    for (int i = 0; i < A.dim(); ++i) {
        if (A.f.is_zero(x.c[i])) continue;
        for (int j = 0; j < A.dim(); ++j) {
            if (A.f.is_zero(y.c[j])) continue;
            std::vector<int> e(A.nvars());
            for (int t = 0; t < A.nvars(); ++t) e[t] = A.basis[i][t] + A.basis[j][t];
            int k = A.monomial_index(e);
            if (k >= 0) r.c[k] = A.f.add(r.c[k], A.f.mul(x.c[i], y.c[j]));
        }
    }
    return r;
}

template <class F>
bool aelt_is_zero(const Algebra<F>& A, const AElt<F>& x) {
    for (const auto& v : x.c)
        if (!A.f.is_zero(v)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Module presentations: a k-space with one commuting operator per variable.

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> violations;
    void fail(std::string what) {
        pass = false;
        violations.push_back(std::move(what));
    }
};

template <class F>
struct ModulePres {
    std::shared_ptr<const Algebra<F>> alg;
    int dim = 0;
    std::vector<Mat<typename F::Elt>> ops; // one per variable, dim x dim

    // action of a monomial exponent vector
    Mat<typename F::Elt> act_monomial(const std::vector<int>& e) const {
        const F& f = alg->f;
        Mat<typename F::Elt> m = linalg::identity(f, dim);
        for (int v = 0; v < alg->nvars(); ++v)
            for (int k = 0; k < e[v]; ++k) m = linalg::mul(f, ops[v], m);
        return m;
    }

    Mat<typename F::Elt> act(const AElt<F>& x) const {
        const F& f = alg->f;
        Mat<typename F::Elt> m(dim, dim);
        for (int i = 0; i < alg->dim(); ++i) {
            if (f.is_zero(x.c[i])) continue;
            m = linalg::add(f, m, linalg::scale(f, x.c[i], act_monomial(alg->basis[i])));
        }
        return m;
    }

    ValidationReport validate() const {
        const F& f = alg->f;
        ValidationReport rep;
        const int v = alg->nvars();
        for (int i = 0; i < v; ++i) {
            if (ops[i].rows != dim || ops[i].cols != dim) {
                rep.fail("operator " + alg->vars[i] + " has wrong shape");
                continue;
            }
            for (int j = i + 1; j < v; ++j) {
                auto ab = linalg::mul(f, ops[i], ops[j]);
                auto ba = linalg::mul(f, ops[j], ops[i]);
                if (!(ab == ba))
                    rep.fail("operators " + alg->vars[i] + ", " + alg->vars[j] + " do not commute");
            }
            // pure power relation
            auto p = linalg::identity(f, dim);
            for (int k = 0; k < alg->bound[i]; ++k) p = linalg::mul(f, ops[i], p);
            if (!linalg::is_zero(f, p))
                rep.fail("relation " + alg->vars[i] + "^" + std::to_string(alg->bound[i]) +
                         " does not annihilate");
        }
        std::vector<int> probe(v, 0);
        for (const auto& r : alg->extra) {
            Mat<typename F::Elt> m = linalg::identity(f, dim);
            for (int i = 0; i < v; ++i)
                for (int k = 0; k < r[i]; ++k) m = linalg::mul(f, ops[i], m);
            if (!linalg::is_zero(f, m)) rep.fail("extra monomial relation does not annihilate");
        }
        return rep;
    }
};

template <class F>
std::shared_ptr<const ModulePres<F>> regular_representation(std::shared_ptr<const Algebra<F>> alg) {
    auto M = std::make_shared<ModulePres<F>>();
    M->alg = alg;
    M->dim = alg->dim();
    const F& f = alg->f;
    for (int v = 0; v < alg->nvars(); ++v) {
        Mat<typename F::Elt> op(M->dim, M->dim);
        for (int j = 0; j < alg->dim(); ++j) {
            std::vector<int> e = alg->basis[j];
            e[v] += 1;
            int i = alg->monomial_index(e);
            if (i >= 0) op(i, j) = f.one();
        }
        M->ops.push_back(std::move(op));
    }
    if (!M->validate().pass) throw consistency_error("regular representation failed validation");
    return M;
}

template <class F>
std::shared_ptr<const ModulePres<F>> residue_field_module(std::shared_ptr<const Algebra<F>> alg) {
    auto M = std::make_shared<ModulePres<F>>();
    M->alg = alg;
    M->dim = 1;
    for (int v = 0; v < alg->nvars(); ++v) M->ops.emplace_back(1, 1);
    return M;
}

// ---------------------------------------------------------------------------
// Base rings for the complex machinery.

enum class RingKind { Integers, Field, Quotient };

template <class F>
struct Ring {
    RingKind kind = RingKind::Field;
    F f;
    std::shared_ptr<const Algebra<F>> alg; // Quotient only

    static Ring integers() {
        static_assert(F::is_integers, "integer ring needs the Z backend");
        Ring r;
        r.kind = RingKind::Integers;
        return r;
    }
    static Ring field(F f) {
        static_assert(F::is_field, "field ring needs a field backend");
        Ring r;
        r.kind = RingKind::Field;
        r.f = f;
        return r;
    }
    static Ring quotient(std::shared_ptr<const Algebra<F>> alg) {
        static_assert(F::is_field, "quotient algebras are defined over a field backend");
        Ring r;
        r.kind = RingKind::Quotient;
        r.f = alg->f;
        r.alg = std::move(alg);
        return r;
    }

    bool is_quotient() const { return kind == RingKind::Quotient; }
    int unit_kdim() const { return is_quotient() ? alg->dim() : 1; }
    int nvars() const { return is_quotient() ? alg->nvars() : 0; }

    bool same_as(const Ring& o) const {
        if (kind != o.kind) return false;
        if constexpr (!F::is_integers)
            if constexpr (std::is_same_v<F, Fp>)
                if (f.p != o.f.p) return false;
        if (is_quotient()) return alg == o.alg || (alg && o.alg && alg->basis == o.alg->basis &&
                                                   alg->vars == o.alg->vars);
        return true;
    }
};

} // namespace koszul
