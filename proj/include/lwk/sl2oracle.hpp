#ifndef LWK_SL2ORACLE_HPP
#define LWK_SL2ORACLE_HPP

#include "lwk/cartan.hpp"
#include "lwk/laurent.hpp"
#include "lwk/lweight.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <mutex>
#include <vector>

namespace lwk {

using Rational = boost::multiprecision::cpp_rational;

namespace detail {

// Phi_l as a monic polynomial in t.
inline const Laurent& cyclotomic(long l)
{
    static std::mutex mu;
    static std::map<long, Laurent> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    Laurent p = Laurent::mono(l) - Laurent::mono(0);
    for (long d = 1; d < l; ++d) {
        if (l % d) continue;
        Laurent phi = Laurent::mono(d) - Laurent::mono(0);
        for (long e = 1; e < d; ++e)
            if (d % e == 0) {
                auto sub = cache.find(e);
                if (sub == cache.end()) throw Error("internal: cyclotomic cache miss");
                phi = polydiv(phi, sub->second);
            }
        cache.emplace(d, phi);
        p = polydiv(p, phi);
    }
    return cache.emplace(l, p).first->second;
}

} // namespace detail

// Element of Z[q, q^-1] (l = 0) or of Z[zeta] = Z[q]/Phi_l(q).
struct CycInt {
    long l = 0;
    Laurent v;

    CycInt() = default;
    CycInt(long order, Laurent p) : l(order), v(std::move(p)) { normalize(); }

    static CycInt constant(long order, Int k) { return {order, Laurent::mono(0, std::move(k))}; }
    static CycInt q_pow(long order, long e) { return {order, Laurent::mono(e)}; }

    // [m] = (q^m - q^-m)/(q - q^-1)
    static CycInt quantum(long order, long m)
    {
        Laurent p;
        long s = m < 0 ? -1 : 1, a = m < 0 ? -m : m;
        for (long k = 0; k < a; ++k) p.add(a - 1 - 2 * k, s);
        return {order, p};
    }

    long degree() const { return l ? detail::cyclotomic(l).hi() : 0; }

    void normalize()
    {
        if (!l) return;
        Laurent r = v.reduced_mod(l);
        if (!r.zero()) polydiv(r, detail::cyclotomic(l));
        v = std::move(r);
    }

    bool is_zero() const { return v.zero(); }
    bool operator==(const CycInt& o) const { return l == o.l && v == o.v; }
    friend CycInt operator+(const CycInt& a, const CycInt& b) { return {a.l, a.v + b.v}; }
    friend CycInt operator-(const CycInt& a, const CycInt& b) { return {a.l, a.v - b.v}; }
    friend CycInt operator*(const CycInt& a, const CycInt& b) { return {a.l, a.v * b.v}; }
    std::string str() const
    {
        if (v.zero()) return "0";
        std::string s;
        for (const auto& [e, k] : v.c) {
            if (!s.empty()) s += k < 0 ? " - " : " + ";
            else if (k < 0) s += "-";
            Int a = k < 0 ? Int(-k) : k;
            if (e == 0) {
                s += a.str();
                continue;
            }
            if (a != 1) s += a.str() + "*";
            s += e == 1 ? "q" : "q^" + std::to_string(e);
        }
        return s;
    }
};

// W(lambda, a) for sl2 with lambda(h) = lam and a = q^aexp.
struct EvalModule {
    long lam = 1;
    long aexp = 0;
};

enum class Gen2 { XPlus, XMinus, PsiPlus };

struct ActionTerm {
    CycInt coef;
    long target = -1; // -1: the image is zero
};

inline ActionTerm eval_action(long order, const EvalModule& m, Gen2 g, long r, long k)
{
    if (m.lam < 0) throw Error("module length must be nonnegative");
    if (k < 0 || k > m.lam) throw Error("basis index out of range");
    auto zero = [&] { return ActionTerm{CycInt::constant(order, 0), -1}; };
    switch (g) {
    case Gen2::XPlus:
        if (k == 0) return zero();
        return {CycInt::q_pow(order, (m.aexp + m.lam - 2 * k + 2) * r) * CycInt::quantum(order, m.lam - k + 1), k - 1};
    case Gen2::XMinus:
        if (k == m.lam) return zero();
        return {CycInt::q_pow(order, (m.aexp + m.lam - 2 * k) * r) * CycInt::quantum(order, k + 1), k + 1};
    case Gen2::PsiPlus:
        if (r <= 0) throw Error("psi^+_s needs s > 0");
        if (k != 0) throw Error("psi^+_s is only given on the highest-weight vector");
        return {(CycInt::q_pow(order, 1) - CycInt::q_pow(order, -1)) * CycInt::q_pow(order, (m.aexp + m.lam) * r) *
                    CycInt::quantum(order, m.lam),
                0};
    }
    throw Error("unknown generator");
}

namespace detail {

inline long rational_rank(std::vector<std::vector<Rational>> M)
{
    long rank = 0;
    std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    for (std::size_t c = 0; c < cols && std::size_t(rank) < rows; ++c) {
        std::size_t p = std::size_t(rank);
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[std::size_t(rank)]);
        const auto& piv = M[std::size_t(rank)];
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == std::size_t(rank) || M[i][c] == 0) continue;
            Rational f = M[i][c] / piv[c];
            for (std::size_t j = c; j < cols; ++j) M[i][j] -= f * piv[j];
        }
        ++rank;
    }
    return rank;
}

// Rank over Q(q) or Q(zeta).
inline long cyc_rank(long order, const std::vector<std::vector<CycInt>>& M)
{
    std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    if (order) {
        // Q(zeta)-rank = Q-rank of the regular representation / degree
        long d = detail::cyclotomic(order).hi();
        std::vector<std::vector<Rational>> R(rows * std::size_t(d), std::vector<Rational>(cols * std::size_t(d)));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                for (long t = 0; t < d; ++t) {
                    CycInt x = M[i][j] * CycInt::q_pow(order, t);
                    for (const auto& [e, k] : x.v.c) R[i * std::size_t(d) + std::size_t(e)][j * std::size_t(d) + std::size_t(t)] = Rational(k);
                }
        long r = rational_rank(std::move(R));
        if (r % d) throw Error("internal: cyclotomic rank is not a multiple of the degree");
        return r / d;
    }
    // Rows are made polynomial; every minor then has coefficients bounded by the product
    // of the row l1-norms, so q = bound + 2 is beyond all their roots.
    Int bound = 1;
    std::vector<long> lo(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        Int norm = 0;
        bool any = false;
        for (const auto& x : M[i])
            for (const auto& [e, k] : x.v.c) {
                lo[i] = any ? std::min(lo[i], e) : e;
                any = true;
                norm += k < 0 ? Int(-k) : k;
            }
        if (norm > 1) bound *= norm;
    }
    Int t = bound + 2;
    std::vector<std::vector<Rational>> R(rows, std::vector<Rational>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            Int s = 0;
            for (const auto& [e, k] : M[i][j].v.c) s += k * boost::multiprecision::pow(t, unsigned(e - lo[i]));
            R[i][j] = Rational(s);
        }
    return rational_rank(std::move(R));
}

} // namespace detail

struct RankResult {
    long rank = 0;
    long size = 0;
    bool full() const { return rank == size; }
};

// Rank of the coefficients of x^-_r (v_0 (x) ... (x) v_0), r = 0..m-1, on the first
// level below the top; a drop means the tensor product is not generated by its top vector.
inline RankResult tensor_first_level_rank(long order, const std::vector<EvalModule>& factors)
{
    const std::size_t m = factors.size();
    for (const auto& f : factors)
        if (f.lam < 1) throw Error("tensor factors must have positive length");
    auto q = [&](long e) { return CycInt::q_pow(order, e); };
    // psi^+ series of each factor, degrees 0..m-1
    auto psi = [&](const EvalModule& f) {
        std::vector<CycInt> s(m, CycInt::constant(order, 0));
        s[0] = q(f.lam);
        for (std::size_t k = 1; k < m; ++k) s[k] = eval_action(order, f, Gen2::PsiPlus, long(k), 0).coef;
        return s;
    };
    std::vector<std::vector<CycInt>> M(m, std::vector<CycInt>(m));
    std::vector<CycInt> right(m, CycInt::constant(order, 0));
    right[0] = CycInt::constant(order, 1);
    for (std::size_t p = m; p-- > 0;) {
        for (std::size_t r = 0; r < m; ++r) {
            CycInt x = CycInt::constant(order, 0);
            for (std::size_t j = 0; j <= r; ++j)
                x = x + eval_action(order, factors[p], Gen2::XMinus, long(r - j), 0).coef * right[j];
            M[r][p] = x;
        }
        auto s = psi(factors[p]);
        std::vector<CycInt> next(m, CycInt::constant(order, 0));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; a + b < m; ++b) next[a + b] = next[a + b] + s[a] * right[b];
        right = std::move(next);
    }
    return {detail::cyc_rank(order, M), long(m)};
}

// Drinfeld l-weight of the evaluation module V(lambda, a) in type A (m(lambda) = 0), or of its
// dual variant with the chain reversed from the last node.
inline LWeight ev_drinfeld(const CartanData& C, const GroundField& F, const Weight& lambda, const SpectralParam& a,
                           bool dual = false)
{
    if (C.letter != 'A') throw Error("evaluation modules are only defined in type A");
    if (long(lambda.size()) != C.n) throw Error("weight has the wrong rank");
    if (!is_dominant(lambda)) throw Error("evaluation modules need a dominant weight");
    std::vector<long> e(std::size_t(C.n), 0);
    if (!dual) {
        for (int i = 1; i < C.n; ++i) e[std::size_t(i)] = e[std::size_t(i - 1)] + lambda[std::size_t(i - 1)] + lambda[std::size_t(i)] + 1;
    } else {
        for (int i = C.n - 1; i >= 1; --i)
            e[std::size_t(i - 1)] = e[std::size_t(i)] + lambda[std::size_t(i - 1)] + lambda[std::size_t(i)] + 1;
    }
    LWeight r(F);
    for (int i = 1; i <= C.n; ++i) r = mul(r, omega_string(C, F, i, shift(F, a, e[std::size_t(i - 1)]), lambda[std::size_t(i - 1)]));
    return r;
}

} // namespace lwk

#endif
