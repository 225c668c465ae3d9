#ifndef LWK_QCHAR_HPP
#define LWK_QCHAR_HPP

#include "lwk/braid.hpp"
#include "lwk/cartan.hpp"
#include "lwk/lroots.hpp"
#include "lwk/lweight.hpp"

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lwk {

// Multiset of l-weights with positive multiplicities.
struct QCharacter {
    GroundField F;
    std::map<LWeight, long> terms;

    QCharacter() = default;
    explicit QCharacter(GroundField f) : F(f) {}

    void add(const LWeight& w, long m = 1)
    {
        require_same(F, w.F);
        if (m <= 0) throw Error("q-character multiplicities must be positive");
        terms[w] += m;
    }
    long count(const LWeight& w) const
    {
        auto it = terms.find(w);
        return it == terms.end() ? 0 : it->second;
    }
    long dim() const
    {
        long s = 0;
        for (const auto& [w, m] : terms) s += m;
        return s;
    }
    bool operator==(const QCharacter& o) const { return F == o.F && terms == o.terms; }
};

inline QCharacter singleton(const LWeight& w, long m = 1)
{
    QCharacter q(w.F);
    q.add(w, m);
    return q;
}

// Pointwise order.
inline bool qchar_le(const QCharacter& x, const QCharacter& y)
{
    for (const auto& [w, m] : x.terms)
        if (y.count(w) < m) return false;
    return true;
}

inline QCharacter qchar_mul(const QCharacter& x, const QCharacter& y)
{
    require_same(x.F, y.F);
    QCharacter r(x.F);
    for (const auto& [u, m] : x.terms)
        for (const auto& [v, k] : y.terms) r.add(mul(u, v), m * k);
    return r;
}

inline QCharacter specialize_qchar(const QCharacter& x, const GroundField& target)
{
    if (target.mode == Mode::Generic) throw Error("specialization target must be a root of unity or 1");
    if (x.F.mode != Mode::Generic) throw Error("specialization source must be the formal field");
    QCharacter r(target);
    for (const auto& [w, m] : x.terms) r.add(specialize_lweight(w, target), m);
    return r;
}

// term k = omega_{1,a,r} prod_{j=1}^k alpha_{1, a xi^{r+1-2j}}^{-1}
inline QCharacter sl2_weyl_qchar(const GroundField& F, const SpectralParam& a, long r)
{
    if (r < 0) throw Error("string length must be nonnegative");
    auto A1 = build_cartan('A', 1);
    QCharacter q(F);
    LWeight cur = omega_string(A1, F, 1, a, r);
    q.add(cur);
    for (long j = 1; j <= r; ++j) {
        cur = div(cur, simple_lroot(A1, F, 1, shift(F, a, r + 1 - 2 * j)));
        q.add(cur);
    }
    return q;
}

// Same character in string form: term k = omega_{1,a,r} prod_{j=1}^k omega_{1, a xi^{r-2j+2}, 2}^{-1}.
inline QCharacter sl2_weyl_qchar_strings(const GroundField& F, const SpectralParam& a, long r)
{
    if (r < 0) throw Error("string length must be nonnegative");
    auto A1 = build_cartan('A', 1);
    QCharacter q(F);
    LWeight top = omega_string(A1, F, 1, a, r);
    for (long k = 0; k <= r; ++k) {
        LWeight t = top;
        for (long j = 1; j <= k; ++j) t = div(t, omega_string(A1, F, 1, shift(F, a, r - 2 * j + 2), 2));
        q.add(t);
    }
    return q;
}

struct FrobeniusFactor {
    LWeight regular;   // lambda'
    LWeight pullback;  // phi_l(lambda'')
    LWeight classical; // lambda''
    // V(lambda) = V(lambda') (x) Fr*(V(lambda'')); the second factor is trivial when lambda'' is
    bool has_pullback() const { return !classical.is_identity(); }
};

inline FrobeniusFactor frobenius_simple_factor(const CartanData& C, const LWeight& lambda)
{
    auto s = frobenius_split(C, lambda);
    LWeight pb(lambda.F);
    for (const auto& [k, e] : s.classical.terms) add_block(pb, k.node, k.a, e);
    return {s.regular, pb, s.classical};
}

// q-character of Fr*(V) from the q-character of a loop-algebra module V (xi = 1).
inline QCharacter frobenius_pullback(const QCharacter& classical, const GroundField& F)
{
    if (F.mode != Mode::Root) throw Error("Frobenius pullback needs a root of unity");
    if (classical.F.mode != Mode::One) throw Error("Frobenius pullback source must be over xi = 1");
    QCharacter r(F);
    for (const auto& [w, m] : classical.terms) {
        LWeight t(F);
        for (const auto& [k, e] : w.terms) add_block(t, k.node, SpectralParam{k.a.base, 0}, e);
        r.add(t, m);
    }
    return r;
}

struct BoundResult {
    QCharacter chi;
    bool saturated = false;
    std::size_t steps = 0;
};

// Lower bound for the q-character of V(omega_{i,a}) from braid invariance and node descents.
inline BoundResult bginv_lower_bound(const CartanData& C, const GroundField& F, int i, const SpectralParam& a,
                                     std::size_t max_steps = 10000)
{
    if (C.letter < 'A' || C.letter > 'D') throw Error("braid-invariance bound needs a classical type");
    C.check_node(i);
    std::map<LWeight, long> S;
    std::deque<LWeight> todo;
    auto raise = [&](const LWeight& w, long m) {
        auto [it, fresh] = S.emplace(w, m);
        if (fresh || it->second < m) {
            it->second = std::max(it->second, m);
            todo.push_back(w);
        }
    };
    raise(omega(F, i, a), 1);
    std::map<Weight, std::vector<CosetRep>> reps;
    auto coset_reps = [&](const Weight& dom) -> const std::vector<CosetRep>& {
        auto it = reps.find(dom);
        if (it == reps.end()) it = reps.emplace(dom, min_coset_reps(C, dom)).first;
        return it->second;
    };

    BoundResult res;
    while (!todo.empty()) {
        if (res.steps >= max_steps) break;
        ++res.steps;
        LWeight mu = todo.front();
        todo.pop_front();
        long m = S[mu];
        Weight v = wt(C, mu);
        Weight dom = dominant_rep(C, v);
        const auto& cr = coset_reps(dom);
        if (v == dom) {
            for (const auto& r : cr) raise(braid_Tw(C, r.word, mu), m);
        } else {
            for (const auto& r : cr)
                if (r.image == v) {
                    LWeight top = braid_Tw_inv(C, r.word, mu);
                    raise(top, m);
                    break;
                }
        }
        for (int j = 1; j <= C.n; ++j) {
            bool poly = true, any = false;
            for (const auto& [k, e] : mu.terms)
                if (k.node == j) {
                    any = true;
                    if (e < 0) poly = false;
                }
            for (const auto& [k, e] : mu.frob)
                if (k.node == j && e < 0) poly = false;
            if (!poly || !any) continue;
            auto f = node_factorization(C, mu, j);
            for (const auto& q : f.quantum) {
                long same = 0;
                for (const auto& s : f.quantum) same += (s == q);
                auto top = shift(F, q.a, long(C.di(j)) * (q.r - 1));
                raise(div(mu, simple_lroot(C, F, j, top)), same);
            }
        }
    }
    res.saturated = todo.empty();
    res.chi = QCharacter(F);
    for (const auto& [w, k] : S) res.chi.add(w, k);
    return res;
}

// Sum of T_w(omega_{i,a}) over minimal coset representatives of W / W_{omega_i}.
inline QCharacter orbit_qchar(const CartanData& C, const GroundField& F, int i, const SpectralParam& a)
{
    QCharacter q(F);
    LWeight top = omega(F, i, a);
    for (const auto& r : min_coset_reps(C, fundamental(C, i))) q.add(braid_Tw(C, r.word, top));
    return q;
}

namespace detail {

inline void require_dn2(const CartanData& C)
{
    if (C.letter != 'D' || C.n < 4) throw Error("this computation is for type D_n, n >= 4");
}

} // namespace detail

// Zero-weight l-weights mu_1..mu_n of V(omega_{2,a}) in type D_n (omega_0 = 1).
inline LWeight dn_mu(const CartanData& C, const GroundField& F, const SpectralParam& a, int j)
{
    detail::require_dn2(C);
    const int n = C.n;
    LWeight m(F);
    if (j >= 1 && j <= n - 2) {
        if (j > 1) {
            add_omega(m, j - 1, shift(F, a, j + 1), -1);
            add_omega(m, j - 1, shift(F, a, 2L * n - j - 3), 1);
        }
        add_omega(m, j, shift(F, a, j), 1);
        add_omega(m, j, shift(F, a, 2L * n - j - 2), -1);
    } else if (j == n - 1 || j == n) {
        add_omega(m, j, shift(F, a, n - 3), 1);
        add_omega(m, j, shift(F, a, n + 1), -1);
    } else {
        throw Error("mu index out of range");
    }
    return m;
}

// The word w_j of the orbit with w_j(omega_2) = alpha_j.
inline WeylWord dn_word(const CartanData& C, int j)
{
    detail::require_dn2(C);
    C.check_node(j);
    Weight target = simple_root(C, j);
    for (const auto& r : min_coset_reps(C, fundamental(C, 2)))
        if (r.image == target) return r.word;
    throw Error("no orbit element maps omega_2 to alpha_j");
}

inline QCharacter dn_node2_generic(const CartanData& C, const SpectralParam& a)
{
    detail::require_dn2(C);
    auto G = GroundField::generic();
    QCharacter q = orbit_qchar(C, G, 2, a);
    for (int j = 1; j <= C.n; ++j) q.add(dn_mu(C, G, a, j), j == C.n - 2 ? 2 : 1);
    return q;
}

// q-character of V(omega_{2,a}) in type D_n: the closed form at infinite order; its
// specialization otherwise, with mu_1 removed when the order of xi divides n-2.
inline QCharacter dn_node2_qchar(const CartanData& C, const SpectralParam& a, const GroundField& F)
{
    detail::require_dn2(C);
    SpectralParam lifted{a.base, a.xi};
    auto gen = dn_node2_generic(C, lifted);
    if (F.mode == Mode::Generic) return gen;
    QCharacter q = specialize_qchar(gen, F);
    long l = F.order();
    if ((C.n - 2) % l == 0) {
        LWeight m1 = specialize_lweight(dn_mu(C, GroundField::generic(), lifted, 1), F);
        auto it = q.terms.find(m1);
        if (it == q.terms.end()) throw Error("specialized mu_1 missing from the character");
        if (--it->second == 0) q.terms.erase(it);
    }
    return q;
}

// True iff the specialized support has no dominant l-weight other than lambda-bar.
inline bool no_dominant_other(const LWeight& lambda_bar, const QCharacter& chi, const GroundField& target)
{
    auto sp = chi.F == target ? chi : specialize_qchar(chi, target);
    for (const auto& [w, m] : sp.terms)
        if (is_dominant(w) && !(w == lambda_bar)) return false;
    return true;
}

// Whether W(omega_{i,a}) is irreducible, where this is known: minuscule nodes always; D_n node 2
// unless the order of xi divides n-2. Otherwise nullopt.
inline std::optional<bool> fundamental_weyl_irreducible(const CartanData& C, const GroundField& F, int i);

// Classical characters over the weight lattice.
using Character = std::map<Weight, Int>;

inline Character char_mul(const Character& x, const Character& y)
{
    Character r;
    for (const auto& [u, m] : x)
        for (const auto& [v, k] : y) {
            Weight s(u.size());
            for (std::size_t t = 0; t < u.size(); ++t) s[t] = u[t] + v[t];
            r[s] += m * k;
        }
    return r;
}

inline Int char_dim(const Character& x)
{
    Int s = 0;
    for (const auto& [w, m] : x) s += m;
    return s;
}

inline bool is_w_invariant(const CartanData& C, const Character& x)
{
    for (const auto& [w, m] : x)
        for (int i = 1; i <= C.n; ++i) {
            auto it = x.find(weyl_reflect(C, i, w));
            if (it == x.end() || it->second != m) return false;
        }
    return true;
}

// Characters of V(omega_{i,1}) as U(g)-modules, per node.
struct FundCharTable {
    std::string type;
    std::map<int, Character> nodes;
};

// omega_i is minuscule iff every weight in its orbit pairs with every simple coroot in {-1,0,1}.
inline std::optional<Character> minuscule_character(const CartanData& C, int i)
{
    Character ch;
    for (const auto& r : min_coset_reps(C, fundamental(C, i))) {
        for (long x : r.image)
            if (x < -1 || x > 1) return std::nullopt;
        ch[r.image] = 1;
    }
    return ch;
}

inline FundCharTable builtin_fund_table(const CartanData& C)
{
    FundCharTable t{C.name(), {}};
    for (int i = 1; i <= C.n; ++i)
        if (auto ch = minuscule_character(C, i)) t.nodes[i] = *ch;
    return t;
}

// prod_i ch(V(omega_{i,1}))^{s_i} with s_i = wt(lambda)(h_i).
inline Character weyl_top_character(const CartanData& C, const LWeight& lambda, const FundCharTable& table)
{
    if (!table.type.empty() && table.type != C.name()) throw Error("character table is for " + table.type);
    Weight s = wt(C, lambda);
    Character r{{Weight(C.n, 0), 1}};
    for (int i = 1; i <= C.n; ++i) {
        if (s[i - 1] < 0) throw Error("weyl_top_character needs a dominant l-weight");
        if (s[i - 1] == 0) continue;
        auto it = table.nodes.find(i);
        if (it == table.nodes.end()) throw Error("no character for node " + std::to_string(i) + " of " + C.name());
        for (long k = 0; k < s[i - 1]; ++k) r = char_mul(r, it->second);
    }
    return r;
}

inline std::optional<bool> fundamental_weyl_irreducible(const CartanData& C, const GroundField& F, int i)
{
    C.check_node(i);
    if (minuscule_character(C, i)) return true;
    if (C.letter == 'D' && C.n >= 4 && i == 2) {
        if (F.mode == Mode::Generic) return true;
        return (C.n - 2) % F.order() != 0;
    }
    return std::nullopt;
}

} // namespace lwk

#endif
