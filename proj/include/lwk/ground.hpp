#ifndef LWK_GROUND_HPP
#define LWK_GROUND_HPP

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lwk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { Generic, Root, One };

// Ground parameter: formal q, a primitive l-th root of unity, or 1.
struct GroundField {
    Mode mode = Mode::Generic;
    int l = 1;
    int lacing = 1;

    static GroundField generic(int lacing = 1) { return {Mode::Generic, 1, lacing}; }
    static GroundField one(int lacing = 1) { return {Mode::One, 1, lacing}; }
    static GroundField root(int l, int lacing = 1)
    {
        if (l < 3 || l % 2 == 0)
            throw Error("root of unity order must be odd and >= 3, got " + std::to_string(l));
        if (std::gcd(l, lacing) != 1)
            throw Error("root of unity order " + std::to_string(l) + " is not coprime to the lacing number "
                        + std::to_string(lacing));
        return {Mode::Root, l, lacing};
    }

    // Order of xi; 1 when xi is formal or trivial.
    int order() const { return mode == Mode::Root ? l : 1; }

    long reduce(long k) const
    {
        switch (mode) {
        case Mode::Generic: return k;
        case Mode::One: return 0;
        case Mode::Root: {
            long r = k % l;
            return r < 0 ? r + l : r;
        }
        }
        return k;
    }

    bool operator==(const GroundField& o) const { return mode == o.mode && (mode != Mode::Root || l == o.l); }

    std::string str() const
    {
        switch (mode) {
        case Mode::Generic: return "q";
        case Mode::One: return "one";
        case Mode::Root: return "zeta:" + std::to_string(l);
        }
        return "?";
    }
};

inline void require_same(const GroundField& a, const GroundField& b)
{
    if (!(a == b))
        throw Error("field mismatch: " + a.str() + " vs " + b.str());
}

// Exponent vector over named symbols, sorted by name, no zero entries.
using Base = std::vector<std::pair<std::string, long>>;

inline Base base_mul(const Base& a, const Base& b, long sb = 1)
{
    Base r;
    r.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            r.push_back(*i++);
        } else if (i == a.end() || j->first < i->first) {
            r.emplace_back(j->first, sb * j->second);
            ++j;
        } else {
            long e = i->second + sb * j->second;
            if (e != 0) r.emplace_back(i->first, e);
            ++i;
            ++j;
        }
    }
    return r;
}

// Sorts, merges repeated symbols and drops zero exponents.
inline Base normalize_base(Base b)
{
    std::sort(b.begin(), b.end());
    Base r;
    for (auto& p : b) {
        if (!r.empty() && r.back().first == p.first)
            r.back().second += p.second;
        else
            r.push_back(p);
        if (r.back().second == 0) r.pop_back();
    }
    return r;
}

inline Base base_pow(const Base& a, long k)
{
    if (k == 0) return {};
    Base r = a;
    for (auto& p : r) p.second *= k;
    return r;
}

inline bool base_divisible(const Base& a, long k)
{
    return std::all_of(a.begin(), a.end(), [k](const auto& p) { return p.second % k == 0; });
}

inline Base base_div(const Base& a, long k)
{
    Base r = a;
    for (auto& p : r) p.second /= k;
    return r;
}

// base * xi^xi; xi is kept reduced for the ambient field by the helpers below.
struct SpectralParam {
    Base base;
    long xi = 0;

    auto operator<=>(const SpectralParam&) const = default;
    bool operator==(const SpectralParam&) const = default;
};

inline SpectralParam sym(const std::string& s, long xi = 0) { return {{{s, 1}}, xi}; }
inline SpectralParam xi_pow(const GroundField& F, long k) { return {{}, F.reduce(k)}; }
inline SpectralParam canon(const GroundField& F, SpectralParam p)
{
    p.xi = F.reduce(p.xi);
    return p;
}

inline SpectralParam param_mul(const GroundField& F, const SpectralParam& a, const SpectralParam& b)
{
    return {base_mul(a.base, b.base), F.reduce(a.xi + b.xi)};
}

inline SpectralParam param_inv(const GroundField& F, const SpectralParam& a)
{
    return {base_pow(a.base, -1), F.reduce(-a.xi)};
}

inline SpectralParam shift(const GroundField& F, const SpectralParam& a, long k)
{
    return {a.base, F.reduce(a.xi + k)};
}

// The set of m with a/b = xi^m: {k} (modulus 0), k + lZ (modulus l) or Z (modulus 1).
struct XiRatio {
    long k = 0;
    long modulus = 0;

    bool contains(long m) const
    {
        if (modulus == 0) return m == k;
        long d = (m - k) % modulus;
        return d == 0;
    }
};

inline std::optional<XiRatio> ratio_xi_power(const GroundField& F, const SpectralParam& a, const SpectralParam& b)
{
    if (a.base != b.base) return std::nullopt;
    switch (F.mode) {
    case Mode::Generic: return XiRatio{a.xi - b.xi, 0};
    case Mode::Root: return XiRatio{F.reduce(a.xi - b.xi), F.l};
    case Mode::One: return XiRatio{0, 1};
    }
    return std::nullopt;
}

inline SpectralParam specialize_param(const GroundField& from, const SpectralParam& p, const GroundField& target)
{
    if (from.mode != Mode::Generic) throw Error("specialization source must be the formal field");
    if (target.mode == Mode::Generic) throw Error("specialization target must be a root of unity or 1");
    return {p.base, target.reduce(p.xi)};
}

} // namespace lwk

#endif
