#ifndef LWK_QFACTOR_HPP
#define LWK_QFACTOR_HPP

#include "lwk/ground.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace lwk {

// f_{a,r}(u) = prod_{j<r} (1 - a xi_i^{r-1-2j} u)
struct QString {
    SpectralParam a;
    long r = 1;
    auto operator<=>(const QString&) const = default;
    bool operator==(const QString&) const = default;
};

// Product of quantum strings and Frobenius factors (1 - b u^l).
struct QFactorization {
    std::vector<QString> quantum;
    std::vector<SpectralParam> frobenius;
    bool operator==(const QFactorization&) const = default;

    void sort()
    {
        std::sort(quantum.begin(), quantum.end());
        std::sort(frobenius.begin(), frobenius.end());
    }
};

using RootMultiset = std::vector<SpectralParam>;

inline long mod_pos(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline long mod_inverse(long a, long m)
{
    a = mod_pos(a, m);
    for (long x = 1; x < m; ++x)
        if ((a * x) % m == 1) return x;
    throw Error("no modular inverse");
}

// Roots of the quantum part; step d means xi_i = xi^d.
inline RootMultiset expand(const GroundField& F, const QFactorization& f, long d = 1)
{
    RootMultiset out;
    for (const auto& s : f.quantum)
        for (long j = 0; j < s.r; ++j) out.push_back(shift(F, s.a, d * (s.r - 1 - 2 * j)));
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Peels maximal runs from counts laid out on a line; emits (start, length).
template <class Emit>
void peel_runs(std::vector<long> cnt, Emit emit)
{
    for (;;) {
        std::size_t p = 0;
        while (p < cnt.size() && cnt[p] == 0) ++p;
        if (p == cnt.size()) return;
        std::size_t q = p;
        while (q < cnt.size() && cnt[q] > 0) --cnt[q++];
        emit(long(p), long(q - p));
    }
}

// True iff xi^{m} can equal the ratio for some m in `cands`.
inline bool ratio_hits(const XiRatio& r, const std::vector<long>& cands)
{
    return std::any_of(cands.begin(), cands.end(), [&](long m) { return r.contains(m); });
}

} // namespace detail

// Forbidden exponents for the separation condition between two strings.
inline bool strings_separated(const GroundField& F, const QString& x, const QString& y, long d)
{
    auto r = ratio_xi_power(F, x.a, y.a);
    if (!r) return true;
    std::vector<long> bad;
    for (long p = 0; p < std::min(x.r, y.r); ++p) {
        bad.push_back(d * (x.r + y.r - 2 * p));
        bad.push_back(-d * (x.r + y.r - 2 * p));
    }
    return !detail::ratio_hits(*r, bad);
}

inline void validate_factorization(const GroundField& F, const QFactorization& f, long d = 1)
{
    if (F.mode == Mode::One && !f.quantum.empty()) throw Error("quantum strings present at xi = 1");
    for (const auto& s : f.quantum) {
        if (s.r <= 0) throw Error("string length must be positive");
        if (F.mode == Mode::Root && s.r >= F.l) throw Error("string length must be below the order of xi");
    }
    for (std::size_t i = 0; i < f.quantum.size(); ++i)
        for (std::size_t j = i + 1; j < f.quantum.size(); ++j)
            if (!strings_separated(F, f.quantum[i], f.quantum[j], d))
                throw Error("internal: xi-factorization violates the separation condition");
}

inline QFactorization xi_factorize(const GroundField& F, const RootMultiset& roots,
                                   const std::vector<SpectralParam>& frob_in = {}, long d = 1)
{
    QFactorization out;
    out.frobenius = frob_in;
    std::map<Base, std::vector<long>> by_base;
    for (const auto& a : roots) by_base[a.base].push_back(F.reduce(a.xi));

    for (const auto& [base, exps] : by_base) {
        switch (F.mode) {
        case Mode::One:
            for (std::size_t k = 0; k < exps.size(); ++k) out.frobenius.push_back({base, 0});
            break;
        case Mode::Generic: {
            long step = 2 * d;
            std::map<long, std::vector<long>> by_res;
            for (long k : exps) by_res[mod_pos(k, step)].push_back(k);
            for (const auto& [res, ks] : by_res) {
                long lo = *std::min_element(ks.begin(), ks.end());
                long hi = *std::max_element(ks.begin(), ks.end());
                long p_lo = (lo - res) / step;
                std::vector<long> cnt((hi - lo) / step + 1, 0);
                for (long k : ks) ++cnt[(k - res) / step - p_lo];
                detail::peel_runs(cnt, [&](long s, long len) {
                    long p0 = p_lo + s, p1 = p0 + len - 1;
                    out.quantum.push_back({{base, res + d * (p0 + p1)}, len});
                });
            }
            break;
        }
        case Mode::Root: {
            long l = F.l;
            long inv = mod_inverse(2 * d, l);
            std::vector<long> cnt(l, 0);
            for (long k : exps) ++cnt[mod_pos(k * inv, l)];
            long m = *std::min_element(cnt.begin(), cnt.end());
            Base fb = base_pow(base, l);
            for (long k = 0; k < m; ++k) out.frobenius.push_back({fb, 0});
            for (auto& c : cnt) c -= m;
            long z = long(std::find(cnt.begin(), cnt.end(), 0) - cnt.begin());
            std::vector<long> lin(l);
            for (long k = 0; k < l; ++k) lin[k] = cnt[(z + k) % l];
            detail::peel_runs(lin, [&](long s, long len) {
                long p0 = z + s;
                out.quantum.push_back({{base, F.reduce(2 * d * p0 + d * (len - 1))}, len});
            });
            break;
        }
        }
    }
    out.sort();
    validate_factorization(F, out, d);
    return out;
}

inline QFactorization canonicalize(const GroundField& F, const QFactorization& f, long d = 1)
{
    return xi_factorize(F, expand(F, f, d), f.frobenius, d);
}

enum class Strength { Strict, Weak };

inline bool pair_resonant(const GroundField& F, const QFactorization& f, const QFactorization& g,
                          Strength s, long d = 1)
{
    for (const auto& b : f.frobenius)
        if (std::find(g.frobenius.begin(), g.frobenius.end(), b) != g.frobenius.end()) return false;
    for (const auto& x : f.quantum)
        for (const auto& y : g.quantum) {
            auto r = ratio_xi_power(F, x.a, y.a);
            if (!r) continue;
            long top = s == Strength::Strict ? x.r : std::min(x.r, y.r);
            for (long p = 0; p < top; ++p)
                if (r->contains(-d * (x.r + y.r - 2 * p))) return false;
        }
    return true;
}

inline bool general_position(const GroundField& F, const QFactorization& f, const QFactorization& g, long d = 1)
{
    return pair_resonant(F, f, g, Strength::Weak, d) && pair_resonant(F, g, f, Strength::Weak, d);
}

inline bool tuple_resonant(const GroundField& F, const std::vector<QFactorization>& fs, Strength s, long d = 1)
{
    for (std::size_t j = 0; j < fs.size(); ++j)
        for (std::size_t k = j + 1; k < fs.size(); ++k)
            if (!pair_resonant(F, fs[j], fs[k], s, d)) return false;
    return true;
}

inline bool poly_regular(const GroundField& F, const QFactorization& f)
{
    switch (F.mode) {
    case Mode::Generic: return true;
    case Mode::Root: return f.frobenius.empty();
    case Mode::One: {
        auto b = f.frobenius;
        std::sort(b.begin(), b.end());
        return std::adjacent_find(b.begin(), b.end()) == b.end();
    }
    }
    return true;
}

} // namespace lwk

#endif
