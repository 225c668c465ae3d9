#ifndef LWK_BRAID_HPP
#define LWK_BRAID_HPP

#include "lwk/cartan.hpp"
#include "lwk/lweight.hpp"

#include <cstdlib>
#include <vector>

namespace lwk {

// Shifts s_k = d_i + |c_ji| + 1 - 2k, k = 1..|c_ji|, spreading node-i content into node j.
inline std::vector<long> neighbor_shifts(const CartanData& C, int i, int j)
{
    std::vector<long> s;
    long cji = std::labs(C.c(j, i));
    for (long k = 1; k <= cji; ++k) s.push_back(C.di(i) + cji + 1 - 2 * k);
    return s;
}

inline LWeight braid_T(const CartanData& C, int i, const LWeight& w)
{
    C.check_node(i);
    const GroundField& F = w.F;
    LWeight r(F);
    auto nb = C.neighbors(i);
    for (const auto& [k, e] : w.terms) {
        if (k.node != i) {
            add_omega(r, k.node, k.a, e);
            continue;
        }
        add_omega(r, i, shift(F, k.a, 2L * C.di(i)), -e);
        for (int j : nb)
            for (long s : neighbor_shifts(C, i, j)) add_omega(r, j, shift(F, k.a, s), e);
    }
    for (const auto& [k, e] : w.frob) {
        if (k.node != i) {
            add_block(r, k.node, k.a, e);
            continue;
        }
        add_block(r, i, k.a, -e);
        for (int j : nb) add_block(r, j, k.a, e * std::labs(C.c(j, i)));
    }
    return r;
}

inline LWeight braid_T_inv(const CartanData& C, int i, const LWeight& w)
{
    C.check_node(i);
    const GroundField& F = w.F;
    LWeight r(F);
    auto nb = C.neighbors(i);
    for (const auto& [k, e] : w.terms) {
        if (k.node != i) {
            add_omega(r, k.node, k.a, e);
            continue;
        }
        SpectralParam a = shift(F, k.a, -2L * C.di(i));
        add_omega(r, i, a, -e);
        for (int j : nb)
            for (long s : neighbor_shifts(C, i, j)) add_omega(r, j, shift(F, a, s), e);
    }
    for (const auto& [k, e] : w.frob) {
        if (k.node != i) {
            add_block(r, k.node, k.a, e);
            continue;
        }
        add_block(r, i, k.a, -e);
        for (int j : nb) add_block(r, j, k.a, e * std::labs(C.c(j, i)));
    }
    return r;
}

// braid_Tw([i2, i1], w) = T_{i2}(T_{i1} w)
inline LWeight braid_Tw(const CartanData& C, const WeylWord& word, LWeight w)
{
    for (auto it = word.rbegin(); it != word.rend(); ++it) w = braid_T(C, *it, w);
    return w;
}

inline LWeight braid_Tw_inv(const CartanData& C, const WeylWord& word, LWeight w)
{
    for (int i : word) w = braid_T_inv(C, i, w);
    return w;
}

// Node-i0 content of T_w(lambda); all exponents must be nonnegative when
// l(s_{i0} w) = l(w) + 1 and lambda is dominant.
inline LWeight dominant_component(const CartanData& C, const WeylWord& w, int i0, const LWeight& lambda)
{
    C.check_node(i0);
    if (!is_reduced(C, w)) throw Error("dominant_component needs a reduced word");
    WeylWord sw{i0};
    sw.insert(sw.end(), w.begin(), w.end());
    if (word_length(C, sw) != w.size() + 1) throw Error("dominant_component: l(s_i0 w) != l(w) + 1");
    if (!is_dominant(lambda)) throw Error("dominant_component needs a dominant l-weight");
    LWeight t = braid_Tw(C, w, lambda);
    LWeight r(lambda.F);
    for (const auto& [k, e] : t.terms)
        if (k.node == i0) add_omega(r, i0, k.a, e);
    for (const auto& [k, e] : t.frob)
        if (k.node == i0) add_block(r, i0, k.a, e);
    if (!is_dominant(r)) throw Error("internal: transported node polynomial is not a polynomial");
    return r;
}

} // namespace lwk

#endif
