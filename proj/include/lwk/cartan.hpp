#ifndef LWK_CARTAN_HPP
#define LWK_CARTAN_HPP

#include "lwk/ground.hpp"
#include "lwk/zlattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lwk {

// Coordinates over the fundamental weights, (lambda(h_i))_i.
using Weight = std::vector<long>;
// s_{w[0]} s_{w[1]} ... ; the last letter acts first. Nodes are 1-based.
using WeylWord = std::vector<int>;

struct CartanData {
    char letter = 'A';
    int n = 1;
    std::vector<std::vector<int>> cm; // cm[i][j] = alpha_j(h_i), 0-based
    std::vector<int> d;
    int lacing = 1;
    int hvee = 2;
    std::vector<int> ibullet;
    std::vector<int> w0inv; // w0inv[i-1] = w0.i
    std::vector<std::vector<long>> T; // T_1..T_k; empty for D_n, n even
    bool d_even = false;

    int rank() const { return n; }
    int c(int i, int j) const { return cm[i - 1][j - 1]; }
    int di(int i) const { return d[i - 1]; }
    long rh() const { return long(lacing) * hvee; }
    std::string name() const { return std::string(1, letter) + std::to_string(n); }

    void check_node(int i) const
    {
        if (i < 1 || i > n) throw Error("node " + std::to_string(i) + " out of range for " + name());
    }

    std::vector<int> neighbors(int i) const
    {
        std::vector<int> r;
        for (int j = 1; j <= n; ++j)
            if (j != i && c(j, i) != 0) r.push_back(j);
        return r;
    }
};

namespace detail {

inline void link(CartanData& C, int i, int j, int cij, int cji)
{
    C.cm[i - 1][j - 1] = cij;
    C.cm[j - 1][i - 1] = cji;
}

} // namespace detail

inline Weight weyl_reflect(const CartanData& C, int i, Weight v)
{
    C.check_node(i);
    long vi = v[i - 1];
    if (vi == 0) return v;
    for (int j = 1; j <= C.n; ++j) v[j - 1] -= vi * C.c(j, i);
    return v;
}

inline Weight weyl_act(const CartanData& C, const WeylWord& w, Weight v)
{
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = weyl_reflect(C, *it, std::move(v));
    return v;
}

inline Weight rho(const CartanData& C) { return Weight(C.n, 1); }

inline Weight fundamental(const CartanData& C, int i)
{
    C.check_node(i);
    Weight w(C.n, 0);
    w[i - 1] = 1;
    return w;
}

// alpha_i in fundamental-weight coordinates.
inline Weight simple_root(const CartanData& C, int i)
{
    Weight w(C.n);
    for (int j = 1; j <= C.n; ++j) w[j - 1] = C.c(j, i);
    return w;
}

inline bool is_dominant(const Weight& w)
{
    return std::all_of(w.begin(), w.end(), [](long x) { return x >= 0; });
}

// Canonical reduced word of the element sending rho to mu.
inline WeylWord word_from_rho_image(const CartanData& C, Weight mu)
{
    WeylWord w;
    for (;;) {
        int i = 0;
        for (int k = 1; k <= C.n; ++k)
            if (mu[k - 1] < 0) {
                i = k;
                break;
            }
        if (i == 0) break;
        mu = weyl_reflect(C, i, std::move(mu));
        w.push_back(i);
    }
    return w;
}

inline WeylWord reduce_word(const CartanData& C, const WeylWord& w)
{
    return word_from_rho_image(C, weyl_act(C, w, rho(C)));
}

inline std::size_t word_length(const CartanData& C, const WeylWord& w) { return reduce_word(C, w).size(); }

inline bool same_element(const CartanData& C, const WeylWord& a, const WeylWord& b)
{
    return weyl_act(C, a, rho(C)) == weyl_act(C, b, rho(C));
}

inline bool is_reduced(const CartanData& C, const WeylWord& w) { return word_length(C, w) == w.size(); }

inline WeylWord longest_element(const CartanData& C) { return word_from_rho_image(C, Weight(C.n, -1)); }

inline std::size_t num_positive_roots(const CartanData& C) { return longest_element(C).size(); }

// Enumerates reduced words of w (canonical word first, then a DFS over left
// descents) until the callback returns false or `budget` words were produced.
// Returns true iff the enumeration was exhaustive.
inline bool for_each_reduced_word(const CartanData& C, const WeylWord& w, std::size_t budget,
                                  const std::function<bool(const WeylWord&)>& visit)
{
    WeylWord canonical = reduce_word(C, w);
    std::size_t produced = 0;
    if (budget == 0) return false;
    if (!visit(canonical)) return false;
    ++produced;
    bool stopped = false;
    WeylWord cur;
    std::function<void(const Weight&)> dfs = [&](const Weight& mu) {
        if (stopped) return;
        bool any = false;
        for (int i = 1; i <= C.n && !stopped; ++i) {
            if (mu[i - 1] >= 0) continue;
            any = true;
            cur.push_back(i);
            dfs(weyl_reflect(C, i, mu));
            cur.pop_back();
        }
        if (!any && !stopped) {
            if (cur == canonical) return;
            if (produced >= budget) {
                stopped = true;
                return;
            }
            ++produced;
            if (!visit(cur)) stopped = true;
        }
    };
    dfs(weyl_act(C, canonical, rho(C)));
    return !stopped;
}

inline std::size_t default_budget()
{
    if (const char* s = std::getenv("LWK_BUDGET")) {
        long v = std::strtol(s, nullptr, 10);
        if (v > 0) return std::size_t(v);
    }
    return 4096;
}

// Reduced words for w0: exhaustive for rank <= 4 (within the budget).
struct WordCatalog {
    std::vector<WeylWord> words;
    bool exhaustive = false;
};

inline WordCatalog w0_catalog(const CartanData& C, std::size_t budget = default_budget())
{
    WordCatalog cat;
    std::size_t cap = C.n <= 4 ? budget : std::min<std::size_t>(budget, 64);
    cat.exhaustive = for_each_reduced_word(C, longest_element(C), cap, [&](const WeylWord& w) {
        cat.words.push_back(w);
        return true;
    });
    return cat;
}

// Minimal-length representatives w of W/W(lambda), as words with w.lambda distinct; BFS order.
struct CosetRep {
    WeylWord word;
    Weight image;
};

inline std::vector<CosetRep> min_coset_reps(const CartanData& C, const Weight& lambda)
{
    if (!is_dominant(lambda)) throw Error("min_coset_reps needs a dominant weight");
    std::vector<CosetRep> out{{{}, lambda}};
    std::set<Weight> seen{lambda};
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (int i = 1; i <= C.n; ++i) {
            if (out[k].image[i - 1] <= 0) continue;
            Weight nu = weyl_reflect(C, i, out[k].image);
            if (!seen.insert(nu).second) continue;
            WeylWord w{i};
            w.insert(w.end(), out[k].word.begin(), out[k].word.end());
            out.push_back({std::move(w), std::move(nu)});
        }
    }
    return out;
}

// Coordinates of a weight in the simple-root basis when integral.
inline std::optional<std::vector<long>> root_coords(const CartanData& C, const Weight& v)
{
    IMat A(C.n, IVec(C.n));
    for (int i = 0; i < C.n; ++i)
        for (int j = 0; j < C.n; ++j) A[i][j] = C.cm[i][j];
    auto s = solve_integer(A, to_ivec(v), C.n);
    if (!s) return std::nullopt;
    std::vector<long> r;
    for (auto& x : s->particular) r.push_back(static_cast<long>(x));
    return r;
}

// mu <= lambda iff lambda - mu lies in Q^+.
inline bool dominance_le(const CartanData& C, const Weight& mu, const Weight& lambda)
{
    Weight diff(C.n);
    for (int i = 0; i < C.n; ++i) diff[i] = lambda[i] - mu[i];
    auto v = root_coords(C, diff);
    return v && std::all_of(v->begin(), v->end(), [](long x) { return x >= 0; });
}

inline Weight dominant_rep(const CartanData& C, Weight v)
{
    for (;;) {
        int i = 0;
        for (int k = 1; k <= C.n; ++k)
            if (v[k - 1] < 0) {
                i = k;
                break;
            }
        if (i == 0) return v;
        v = weyl_reflect(C, i, std::move(v));
    }
}

inline CartanData build_cartan(char letter, int n)
{
    CartanData C;
    C.letter = letter;
    C.n = n;
    auto bad = [&] { return Error("invalid Cartan type " + std::string(1, letter) + std::to_string(n)); };
    bool ok = (letter == 'A' && n >= 1) || (letter == 'B' && n >= 2) || (letter == 'C' && n >= 2)
        || (letter == 'D' && n >= 3) || (letter == 'E' && n >= 6 && n <= 8) || (letter == 'F' && n == 4)
        || (letter == 'G' && n == 2);
    if (!ok) throw bad();
    C.cm.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) C.cm[i][i] = 2;
    C.d.assign(n, 1);
    auto chain = [&](int from, int to) {
        for (int i = from; i < to; ++i) detail::link(C, i, i + 1, -1, -1);
    };
    auto span = [](long step, long count) {
        std::vector<long> t;
        for (long k = 0; k < count; ++k) t.push_back(step * k);
        return t;
    };
    switch (letter) {
    case 'A':
        chain(1, n);
        C.hvee = n + 1;
        C.ibullet = {1};
        C.T = {span(2, n + 1)};
        break;
    case 'B':
        chain(1, n - 1);
        detail::link(C, n - 1, n, -1, -2);
        for (int i = 0; i < n - 1; ++i) C.d[i] = 2;
        C.hvee = 2 * n - 1;
        C.ibullet = {n};
        C.T = {{0, 4L * n - 2}};
        break;
    case 'C':
        chain(1, n - 1);
        detail::link(C, n - 1, n, -2, -1);
        C.d[n - 1] = 2;
        C.hvee = n + 1;
        C.ibullet = {1};
        C.T = {{0, 2L * n + 2}};
        break;
    case 'D':
        chain(1, n - 1);
        detail::link(C, n - 2, n, -1, -1);
        C.hvee = 2 * n - 2;
        if (n % 2 == 0) {
            C.d_even = true;
            C.ibullet = {n - 1, n};
        } else {
            C.ibullet = {n};
            C.T = {{0, 2, 2L * n - 2, 2L * n}};
        }
        break;
    case 'E':
        chain(1, n - 1);
        detail::link(C, n - 3, n, -1, -1);
        C.ibullet = {1};
        if (n == 6) {
            C.hvee = 12;
            C.T = {{0, 8, 16}, {0, 2, 4, 12, 14, 16}};
        } else if (n == 7) {
            C.hvee = 18;
            C.T = {{0, 18}, {0, 2, 12, 14, 24, 26}};
        } else {
            C.hvee = 30;
            C.T = {{0, 30}, {0, 20, 40}, {0, 12, 24, 36, 48}};
        }
        break;
    case 'F':
        detail::link(C, 1, 2, -1, -1);
        detail::link(C, 2, 3, -2, -1);
        detail::link(C, 3, 4, -1, -1);
        C.d = {1, 1, 2, 2};
        C.hvee = 9;
        C.ibullet = {1};
        C.T = {{0, 18}, {0, 12, 24}};
        break;
    case 'G':
        detail::link(C, 1, 2, -3, -1);
        C.d = {1, 3};
        C.hvee = 4;
        C.ibullet = {1};
        C.T = {{0, 12}, {0, 8, 16}};
        break;
    }
    C.lacing = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) C.lacing = std::max(C.lacing, C.cm[i][j] * C.cm[j][i]);
    WeylWord w0 = longest_element(C);
    C.w0inv.resize(n);
    for (int i = 1; i <= n; ++i) {
        Weight img = weyl_act(C, w0, fundamental(C, i));
        for (int j = 1; j <= n; ++j)
            if (img[j - 1] == -1) C.w0inv[i - 1] = j;
    }
    return C;
}

inline CartanData parse_cartan(const std::string& letter, int n)
{
    if (letter.size() != 1) throw Error("type letter must be one of A..G");
    char c = letter[0];
    if (c >= 'a' && c <= 'g') c = char(c - 'a' + 'A');
    return build_cartan(c, n);
}

inline GroundField field_for(const CartanData& C, Mode m, int l)
{
    switch (m) {
    case Mode::Generic: return GroundField::generic(C.lacing);
    case Mode::One: return GroundField::one(C.lacing);
    case Mode::Root: return GroundField::root(l, C.lacing);
    }
    return GroundField::generic(C.lacing);
}

} // namespace lwk

#endif
