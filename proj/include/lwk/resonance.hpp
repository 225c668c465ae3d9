#ifndef LWK_RESONANCE_HPP
#define LWK_RESONANCE_HPP

#include "lwk/braid.hpp"
#include "lwk/cartan.hpp"
#include "lwk/lweight.hpp"
#include "lwk/qfactor.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lwk {

// cond: 'a' node pair, 'b' transported pair at a word step, 'c' transported regularity
struct Violation {
    char cond = 'a';
    int node = 1;
    long step = 0;         // 1-based word step for 'b' and 'c'
    std::size_t first = 0; // tuple positions of the offending pair
    std::size_t second = 0;
    bool operator==(const Violation&) const = default;
};

struct PairCheck {
    bool ok = true;
    std::vector<Violation> violations;
};

namespace detail {

inline LWeight regular_part(const CartanData& C, const LWeight& w)
{
    return w.F.mode == Mode::Root ? frobenius_split(C, w).regular : w;
}

// Product of all node polynomials, used at xi = 1.
inline QFactorization product_polynomial(const LWeight& w)
{
    RootMultiset roots;
    std::vector<SpectralParam> frob;
    for (const auto& [k, e] : w.terms)
        for (long t = 0; t < e; ++t) roots.push_back(k.a);
    for (const auto& [k, e] : w.frob)
        for (long t = 0; t < e; ++t) frob.push_back(k.a);
    return xi_factorize(w.F, roots, frob, 1);
}

inline void require_dominant(const CartanData& C, const LWeight& w)
{
    check_nodes(C, w);
    if (!is_dominant(w)) throw Error("resonance checks need dominant l-weights");
}

inline PairCheck condition_a(const CartanData& C, const LWeight& lam, const LWeight& mu, Strength s)
{
    PairCheck r;
    if (lam.F.mode == Mode::One) {
        if (!pair_resonant(lam.F, product_polynomial(lam), product_polynomial(mu), s, 1)) {
            r.ok = false;
            r.violations.push_back({'a', 0});
        }
        return r;
    }
    for (int i = 1; i <= C.n; ++i)
        if (!pair_resonant(lam.F, node_factorization(C, lam, i), node_factorization(C, mu, i), s, C.di(i))) {
            r.ok = false;
            r.violations.push_back({'a', i});
        }
    return r;
}

// Conditions (b) and (c) along `word` = s_{i_N} ... s_{i_1}.
inline PairCheck conditions_bc(const CartanData& C, const LWeight& lam_reg, const LWeight& mu_reg, const WeylWord& word,
                               Strength s, bool stop_early)
{
    PairCheck r;
    LWeight cur = lam_reg;
    long N = long(word.size());
    for (long j = 1; j <= N; ++j) {
        int i = word[std::size_t(N - j)];
        LWeight comp(cur.F);
        for (const auto& [k, e] : cur.terms)
            if (k.node == i) add_omega(comp, i, k.a, e);
        for (const auto& [k, e] : cur.frob)
            if (k.node == i) add_block(comp, i, k.a, e);
        if (!is_dominant(comp)) throw Error("internal: transported node polynomial is not a polynomial");
        QFactorization f = node_factorization(C, comp, i);
        if (!pair_resonant(cur.F, f, node_factorization(C, mu_reg, i), s, C.di(i))) {
            r.ok = false;
            r.violations.push_back({'b', i, j});
        }
        if (!poly_regular(cur.F, f)) {
            r.ok = false;
            r.violations.push_back({'c', i, j});
        }
        if (!r.ok && stop_early) return r;
        cur = braid_T(C, i, cur);
    }
    return r;
}

} // namespace detail

// Checks the resonance conditions for one reduced word of w0.
inline PairCheck lw_pair_resonant(const CartanData& C, const LWeight& lam, const LWeight& mu, const WeylWord& word,
                                  Strength s)
{
    require_same(lam.F, mu.F);
    detail::require_dominant(C, lam);
    detail::require_dominant(C, mu);
    if (word.size() != num_positive_roots(C) || !is_reduced(C, word) || !same_element(C, word, longest_element(C)))
        throw Error("word is not a reduced expression for w0");
    PairCheck r = detail::condition_a(C, lam, mu, s);
    if (lam.F.mode == Mode::One) return r;
    PairCheck bc = detail::conditions_bc(C, detail::regular_part(C, lam), detail::regular_part(C, mu), word, s, false);
    r.ok = r.ok && bc.ok;
    r.violations.insert(r.violations.end(), bc.violations.begin(), bc.violations.end());
    return r;
}

enum class Verdict { Proven, RefutedForAllTested, Unknown };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Proven: return "proven";
    case Verdict::RefutedForAllTested: return "refuted";
    case Verdict::Unknown: return "unknown";
    }
    return "?";
}

struct PairWitness {
    std::size_t first = 0, second = 0;
    WeylWord word; // empty at xi = 1
};

struct ResonanceVerdict {
    Verdict status = Verdict::Proven;
    std::vector<PairWitness> witnesses;
    std::vector<std::size_t> permutation; // lw_regular: order of the fundamental factors
    std::vector<Violation> violations;
};

// Verdict for one ordered pair, searching reduced words of w0 within the budget.
inline ResonanceVerdict lw_ordered_pair(const CartanData& C, const LWeight& lam, const LWeight& mu, Strength s,
                                        std::size_t budget = default_budget())
{
    require_same(lam.F, mu.F);
    detail::require_dominant(C, lam);
    detail::require_dominant(C, mu);
    ResonanceVerdict v;
    PairCheck a = detail::condition_a(C, lam, mu, s);
    if (!a.ok) {
        v.status = Verdict::RefutedForAllTested;
        v.violations = a.violations;
        return v;
    }
    if (lam.F.mode == Mode::One) {
        v.witnesses.push_back({0, 1, {}});
        return v;
    }
    LWeight lr = detail::regular_part(C, lam), mr = detail::regular_part(C, mu);
    std::optional<WeylWord> found;
    std::vector<Violation> first_failure;
    bool exhaustive = for_each_reduced_word(C, longest_element(C), budget, [&](const WeylWord& w) {
        PairCheck bc = detail::conditions_bc(C, lr, mr, w, s, true);
        if (bc.ok) {
            found = w;
            return false;
        }
        if (first_failure.empty()) first_failure = bc.violations;
        return true;
    });
    if (found) {
        v.witnesses.push_back({0, 1, *found});
        return v;
    }
    v.status = exhaustive ? Verdict::RefutedForAllTested : Verdict::Unknown;
    v.violations = first_failure;
    return v;
}

inline ResonanceVerdict lw_tuple_resonant(const CartanData& C, const std::vector<LWeight>& ls, Strength s,
                                          std::size_t budget = default_budget())
{
    ResonanceVerdict out;
    bool unknown = false, refuted = false;
    for (std::size_t j = 0; j < ls.size(); ++j)
        for (std::size_t k = j + 1; k < ls.size(); ++k) {
            ResonanceVerdict p = lw_ordered_pair(C, ls[j], ls[k], s, budget);
            for (auto x : p.violations) {
                x.first = j;
                x.second = k;
                out.violations.push_back(x);
            }
            if (p.status == Verdict::Proven) {
                out.witnesses.push_back({j, k, p.witnesses.front().word});
            } else if (p.status == Verdict::Unknown) {
                unknown = true;
            } else {
                refuted = true;
            }
        }
    out.status = refuted ? Verdict::RefutedForAllTested : unknown ? Verdict::Unknown : Verdict::Proven;
    if (out.status != Verdict::Proven) out.witnesses.clear();
    return out;
}

// Within each xi^Z-coset, descending exponent; cosets in order of appearance.
inline std::vector<std::size_t> cyclic_order(const GroundField& F, const std::vector<SpectralParam>& ps)
{
    if (F.mode != Mode::Generic) throw Error("cyclic_order needs the formal field");
    std::vector<Base> cosets;
    for (const auto& p : ps)
        if (std::find(cosets.begin(), cosets.end(), p.base) == cosets.end()) cosets.push_back(p.base);
    std::vector<std::size_t> perm(ps.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    auto rank = [&](const Base& b) { return std::find(cosets.begin(), cosets.end(), b) - cosets.begin(); };
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
        auto rx = rank(ps[x].base), ry = rank(ps[y].base);
        if (rx != ry) return rx < ry;
        return ps[x].xi > ps[y].xi;
    });
    return perm;
}

// Searches an ordering of the fundamental factors in strict resonant order.
// A factor can go first iff it is resonant ahead of every remaining factor, and
// any such choice keeps the rest solvable, so the greedy search is exact.
inline ResonanceVerdict lw_regular(const CartanData& C, const LWeight& lam, std::size_t budget = default_budget())
{
    detail::require_dominant(C, lam);
    auto fs = fundamental_factors(lam);
    std::size_t m = fs.size();
    std::vector<LWeight> ws;
    for (const auto& f : fs) ws.push_back(omega(lam.F, f.node, f.a));

    std::map<std::pair<std::size_t, std::size_t>, ResonanceVerdict> cache;
    std::map<std::pair<LKey, LKey>, Verdict> by_value;
    auto pair = [&](std::size_t x, std::size_t y) -> Verdict {
        std::pair<LKey, LKey> key{{fs[x].node, fs[x].a}, {fs[y].node, fs[y].a}};
        auto it = by_value.find(key);
        if (it != by_value.end()) return it->second;
        auto v = lw_ordered_pair(C, ws[x], ws[y], Strength::Strict, budget);
        cache[{x, y}] = v;
        by_value[key] = v.status;
        return v.status;
    };

    ResonanceVerdict out;
    std::vector<std::size_t> rest(m);
    for (std::size_t k = 0; k < m; ++k) rest[k] = k;
    bool unknown = false;
    while (!rest.empty()) {
        bool placed = false;
        for (std::size_t t = 0; t < rest.size() && !placed; ++t) {
            bool ok = true;
            for (std::size_t u = 0; u < rest.size() && ok; ++u) {
                if (u == t) continue;
                Verdict v = pair(rest[t], rest[u]);
                if (v == Verdict::Unknown) unknown = true;
                ok = v == Verdict::Proven;
            }
            if (ok) {
                out.permutation.push_back(rest[t]);
                rest.erase(rest.begin() + long(t));
                placed = true;
            }
        }
        if (!placed) {
            out.status = unknown ? Verdict::Unknown : Verdict::RefutedForAllTested;
            out.permutation.clear();
            for (const auto& [xy, v] : cache)
                for (auto x : v.violations) {
                    x.first = xy.first;
                    x.second = xy.second;
                    out.violations.push_back(x);
                }
            return out;
        }
    }
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
            auto v = lw_ordered_pair(C, ws[out.permutation[j]], ws[out.permutation[k]], Strength::Strict, budget);
            out.witnesses.push_back({out.permutation[j], out.permutation[k],
                                     v.witnesses.empty() ? WeylWord{} : v.witnesses.front().word});
        }
    return out;
}

enum class HlwVerdict { Guaranteed, No, Unknown };

inline const char* to_string(HlwVerdict v)
{
    switch (v) {
    case HlwVerdict::Guaranteed: return "highest-l-weight";
    case HlwVerdict::No: return "no";
    case HlwVerdict::Unknown: return "unknown";
    }
    return "?";
}

struct HlwResult {
    HlwVerdict status = HlwVerdict::Unknown;
    ResonanceVerdict resonance;
    bool exact = false; // decided by the sl2 fundamental criterion
};

inline HlwResult hlw_tensor_verdict(const CartanData& C, const std::vector<LWeight>& ls,
                                    std::size_t budget = default_budget())
{
    HlwResult r;
    bool sl2_fund = C.letter == 'A' && C.n == 1 && !ls.empty();
    for (const auto& w : ls)
        if (!(w.frob.empty() && w.terms.size() == 1 && w.terms.begin()->second == 1)) sl2_fund = false;
    if (sl2_fund) {
        r.exact = true;
        r.status = HlwVerdict::Guaranteed;
        for (std::size_t j = 0; j < ls.size(); ++j)
            for (std::size_t k = j + 1; k < ls.size(); ++k) {
                const auto& a = ls[j].terms.begin()->first.a;
                const auto& b = ls[k].terms.begin()->first.a;
                auto ratio = ratio_xi_power(ls[j].F, a, b);
                if (ratio && ratio->contains(-2)) {
                    r.status = HlwVerdict::No;
                    r.resonance.violations.push_back({'a', 1, 0, j, k});
                }
            }
        r.resonance.status = r.status == HlwVerdict::No ? Verdict::RefutedForAllTested : Verdict::Proven;
        return r;
    }
    r.resonance = lw_tuple_resonant(C, ls, Strength::Strict, budget);
    r.status = r.resonance.status == Verdict::Proven ? HlwVerdict::Guaranteed : HlwVerdict::Unknown;
    return r;
}

enum class Tri { Yes, No, Unknown };

inline const char* to_string(Tri t)
{
    switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
    }
    return "?";
}

// Irreducibility of W(omega_{i,a}) for the factors of lambda, where known.
using IrreducibilityFlags = std::map<LKey, bool>;

struct WeylTensorResult {
    Tri status = Tri::Unknown;
    ResonanceVerdict regular;
    std::string reason;
};

inline WeylTensorResult weyl_is_fundamental_tensor(const CartanData& C, const LWeight& lam,
                                                   const IrreducibilityFlags& flags = {},
                                                   std::size_t budget = default_budget())
{
    WeylTensorResult r;
    r.regular = lw_regular(C, lam, budget);
    if (C.letter == 'A' && C.n == 1) {
        r.status = r.regular.status == Verdict::Proven              ? Tri::Yes
                   : r.regular.status == Verdict::RefutedForAllTested ? Tri::No
                                                                      : Tri::Unknown;
        r.reason = "sl2 criterion: regularity";
        return r;
    }
    auto fs = fundamental_factors(lam);
    // fundamental Weyl modules are irreducible at infinite order and for minuscule weights
    bool vacuous = lam.F.mode == Mode::Generic || C.letter == 'A';
    if (!vacuous) {
        for (const auto& f : fs) {
            auto it = flags.find({f.node, canon(lam.F, f.a)});
            if (it == flags.end()) {
                r.reason = "missing irreducibility flag for node " + std::to_string(f.node);
                return r;
            }
            if (!it->second) {
                if (fs.size() == 1) {
                    r.status = Tri::No;
                    r.reason = "fundamental Weyl module is reducible";
                } else {
                    r.reason = "a fundamental Weyl module is reducible";
                }
                return r;
            }
        }
    }
    if (r.regular.status == Verdict::Proven) {
        r.status = Tri::Yes;
        r.reason = "regular with irreducible fundamental Weyl modules";
    } else {
        r.reason = "not shown regular; the criterion is only sufficient";
    }
    return r;
}

} // namespace lwk

#endif
