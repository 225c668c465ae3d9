#ifndef LWK_LWEIGHT_HPP
#define LWK_LWEIGHT_HPP

#include "lwk/cartan.hpp"
#include "lwk/ground.hpp"
#include "lwk/qfactor.hpp"

#include <map>
#include <utility>
#include <vector>

namespace lwk {

struct LKey {
    int node = 1;
    SpectralParam a;
    auto operator<=>(const LKey&) const = default;
    bool operator==(const LKey&) const = default;
};

// A Laurent monomial in the fundamental l-weights omega_{i,a}. In root-of-unity
// mode `frob` holds Frobenius blocks (1 - b u^l) at node i whose base b is not
// an l-th power inside the symbol group; decomposable blocks are expanded.
struct LWeight {
    GroundField F;
    std::map<LKey, long> terms;
    std::map<LKey, long> frob;

    LWeight() = default;
    explicit LWeight(GroundField f) : F(f) {}

    bool is_identity() const { return terms.empty() && frob.empty(); }
    bool operator==(const LWeight& o) const { return F == o.F && terms == o.terms && frob == o.frob; }
    bool operator<(const LWeight& o) const
    {
        if (terms != o.terms) return terms < o.terms;
        return frob < o.frob;
    }
};

namespace detail {

inline void bump(std::map<LKey, long>& m, const LKey& k, long e)
{
    if (e == 0) return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, e);
    } else if ((it->second += e) == 0) {
        m.erase(it);
    }
}

} // namespace detail

inline void add_omega(LWeight& w, int i, const SpectralParam& a, long e)
{
    detail::bump(w.terms, {i, canon(w.F, a)}, e);
}

// Adds block(i,b)^e and expands it when b = c^l.
inline void add_block(LWeight& w, int i, const SpectralParam& b, long e)
{
    if (w.F.mode != Mode::Root) {
        add_omega(w, i, b, e);
        return;
    }
    SpectralParam bb = canon(w.F, b);
    long l = w.F.l;
    if (bb.xi == 0 && base_divisible(bb.base, l)) {
        Base c = base_div(bb.base, l);
        for (long k = 0; k < l; ++k) add_omega(w, i, {c, k}, e);
        return;
    }
    detail::bump(w.frob, {i, bb}, e);
}

inline LWeight identity(const GroundField& F) { return LWeight(F); }

inline LWeight omega(const GroundField& F, int i, const SpectralParam& a, long e = 1)
{
    LWeight w(F);
    add_omega(w, i, a, e);
    return w;
}

inline LWeight block(const GroundField& F, int i, const SpectralParam& b, long e = 1)
{
    LWeight w(F);
    add_block(w, i, b, e);
    return w;
}

inline LWeight mul(const LWeight& x, const LWeight& y, long ey = 1)
{
    require_same(x.F, y.F);
    LWeight r = x;
    for (const auto& [k, e] : y.terms) detail::bump(r.terms, k, ey * e);
    for (const auto& [k, e] : y.frob) detail::bump(r.frob, k, ey * e);
    return r;
}

inline LWeight div(const LWeight& x, const LWeight& y) { return mul(x, y, -1); }

inline LWeight pow(const LWeight& x, long k)
{
    LWeight r(x.F);
    if (k == 0) return r;
    for (const auto& [key, e] : x.terms) r.terms[key] = e * k;
    for (const auto& [key, e] : x.frob) r.frob[key] = e * k;
    return r;
}

inline LWeight inv(const LWeight& x) { return pow(x, -1); }

inline void check_nodes(const CartanData& C, const LWeight& w)
{
    for (const auto& [k, e] : w.terms) C.check_node(k.node);
    for (const auto& [k, e] : w.frob) C.check_node(k.node);
}

inline bool is_dominant(const LWeight& w)
{
    for (const auto& [k, e] : w.terms)
        if (e < 0) return false;
    for (const auto& [k, e] : w.frob)
        if (e < 0) return false;
    return true;
}

inline Weight wt(const CartanData& C, const LWeight& w)
{
    Weight v(C.n, 0);
    for (const auto& [k, e] : w.terms) {
        C.check_node(k.node);
        v[k.node - 1] += e;
    }
    for (const auto& [k, e] : w.frob) {
        C.check_node(k.node);
        v[k.node - 1] += long(w.F.l) * e;
    }
    return v;
}

// omega_{i,a,r} = prod_{j<r} omega_{i, a xi_i^{r-1-2j}}
inline LWeight omega_string(const CartanData& C, const GroundField& F, int i, const SpectralParam& a, long r)
{
    C.check_node(i);
    if (r < 0) throw Error("string length must be nonnegative");
    LWeight w(F);
    long d = C.di(i);
    for (long j = 0; j < r; ++j) add_omega(w, i, shift(F, a, d * (r - 1 - 2 * j)), 1);
    return w;
}

inline LWeight omega_lambda(const CartanData& C, const GroundField& F, const Weight& lambda, const SpectralParam& a)
{
    LWeight w(F);
    for (int i = 1; i <= C.n; ++i) add_omega(w, i, a, lambda[i - 1]);
    return w;
}

// The node-i part of a dominant l-weight as a factorized polynomial in xi_i.
inline QFactorization node_factorization(const CartanData& C, const LWeight& w, int i)
{
    RootMultiset roots;
    std::vector<SpectralParam> frob;
    for (const auto& [k, e] : w.terms) {
        if (k.node != i) continue;
        if (e < 0) throw Error("node polynomial requested for a non-dominant l-weight");
        for (long t = 0; t < e; ++t) roots.push_back(k.a);
    }
    for (const auto& [k, e] : w.frob) {
        if (k.node != i) continue;
        if (e < 0) throw Error("node polynomial requested for a non-dominant l-weight");
        for (long t = 0; t < e; ++t) frob.push_back(k.a);
    }
    return xi_factorize(w.F, roots, frob, C.di(i));
}

inline LWeight from_factorization(const CartanData& C, const GroundField& F, int i, const QFactorization& f)
{
    LWeight w(F);
    for (const auto& s : f.quantum) w = mul(w, omega_string(C, F, i, s.a, s.r));
    for (const auto& b : f.frobenius) add_block(w, i, b, 1);
    return w;
}

// lambda = lambda' phi_l(lambda'') with lambda' xi-regular at every node.
struct FrobSplit {
    LWeight regular;
    LWeight classical; // omega_{i,b} for every Frobenius factor (1 - b u^l)
};

inline FrobSplit frobenius_split(const CartanData& C, const LWeight& w)
{
    if (w.F.mode != Mode::Root) throw Error("frobenius_split needs a root of unity");
    if (!is_dominant(w)) throw Error("frobenius_split needs a dominant l-weight");
    FrobSplit s{LWeight(w.F), LWeight(w.F)};
    for (int i = 1; i <= C.n; ++i) {
        QFactorization f = node_factorization(C, w, i);
        for (const auto& q : f.quantum) s.regular = mul(s.regular, omega_string(C, w.F, i, q.a, q.r));
        for (const auto& b : f.frobenius) add_omega(s.classical, i, b, 1);
    }
    return s;
}

inline LWeight phi_l(const LWeight& w)
{
    if (w.F.mode != Mode::Root) throw Error("phi_l needs a root of unity");
    if (!w.frob.empty()) throw Error("phi_l input must not contain Frobenius blocks");
    LWeight r(w.F);
    for (const auto& [k, e] : w.terms) add_block(r, k.node, k.a, e);
    return r;
}

inline LWeight specialize_lweight(const LWeight& w, const GroundField& target)
{
    if (w.F.mode != Mode::Generic) throw Error("specialization source must be the formal field");
    LWeight r(target);
    for (const auto& [k, e] : w.terms) add_omega(r, k.node, specialize_param(w.F, k.a, target), e);
    return r;
}

// (lambda*)_i(u) = lambda_{w0.i}(xi^{r h} u), extended multiplicatively.
inline LWeight dual_star_any(const CartanData& C, const LWeight& w)
{
    LWeight r(w.F);
    for (const auto& [k, e] : w.terms) add_omega(r, C.w0inv[k.node - 1], shift(w.F, k.a, C.rh()), e);
    for (const auto& [k, e] : w.frob) add_block(r, C.w0inv[k.node - 1], k.a, e);
    return r;
}

inline LWeight dual_star(const CartanData& C, const LWeight& w)
{
    if (!is_dominant(w)) throw Error("dual_star needs a dominant l-weight");
    return dual_star_any(C, w);
}

// Node-wise root multiset and polynomial factorization of a fundamental product.
struct Fundamental {
    int node;
    SpectralParam a;
};

inline std::vector<Fundamental> fundamental_factors(const LWeight& w)
{
    if (!w.frob.empty()) throw Error("Frobenius blocks are not products of fundamental l-weights");
    std::vector<Fundamental> out;
    for (const auto& [k, e] : w.terms) {
        if (e < 0) throw Error("l-weight is not dominant");
        for (long t = 0; t < e; ++t) out.push_back({k.node, k.a});
    }
    return out;
}

} // namespace lwk

#endif
