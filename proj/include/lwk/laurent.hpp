#ifndef LWK_LAURENT_HPP
#define LWK_LAURENT_HPP

#include "lwk/ground.hpp"
#include "lwk/zlattice.hpp"

#include <map>
#include <string>

namespace lwk {

// Integer Laurent polynomial in t (t = multiplication by xi on an orbit).
struct Laurent {
    std::map<long, Int> c;

    Laurent() = default;
    static Laurent mono(long e, Int k = 1)
    {
        Laurent p;
        if (k != 0) p.c[e] = std::move(k);
        return p;
    }

    bool zero() const { return c.empty(); }
    long lo() const { return c.begin()->first; }
    long hi() const { return c.rbegin()->first; }
    const Int& lead() const { return c.rbegin()->second; }

    void add(long e, const Int& k)
    {
        if (k == 0) return;
        auto it = c.find(e);
        if (it == c.end()) {
            c.emplace(e, k);
        } else if ((it->second += k) == 0) {
            c.erase(it);
        }
    }

    Laurent& operator+=(const Laurent& o)
    {
        for (const auto& [e, k] : o.c) add(e, k);
        return *this;
    }
    Laurent& operator-=(const Laurent& o)
    {
        for (const auto& [e, k] : o.c) add(e, -k);
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b)
    {
        Laurent r;
        for (const auto& [e, k] : a.c)
            for (const auto& [f, m] : b.c) r.add(e + f, k * m);
        return r;
    }
    Laurent shifted(long s) const
    {
        Laurent r;
        for (const auto& [e, k] : c) r.c.emplace(e + s, k);
        return r;
    }
    bool operator==(const Laurent&) const = default;

    // +-t^e
    bool is_unit() const { return c.size() == 1 && (c.begin()->second == 1 || c.begin()->second == -1); }
    Laurent unit_inverse() const { return mono(-lo(), c.begin()->second); }

    Laurent reduced_mod(long order) const
    {
        if (order <= 0) return *this;
        Laurent r;
        for (const auto& [e, k] : c) r.add(mod_pos_l(e, order), k);
        return r;
    }

    static long mod_pos_l(long a, long m)
    {
        long r = a % m;
        return r < 0 ? r + m : r;
    }

    std::string str() const
    {
        if (c.empty()) return "0";
        std::string s;
        for (const auto& [e, k] : c) {
            if (!s.empty()) s += " + ";
            s += k.str() + "*t^" + std::to_string(e);
        }
        return s;
    }
};

// Polynomial long division by b with leading coefficient +-1; both arguments
// must have nonnegative exponents. Returns the quotient; `a` becomes the remainder.
inline Laurent polydiv(Laurent& a, const Laurent& b)
{
    Laurent q;
    long db = b.hi();
    const Int& lb = b.lead();
    if (lb != 1 && lb != -1) throw Error("internal: divisor is not monic");
    while (!a.zero() && a.hi() >= db) {
        long da = a.hi();
        Int k = a.lead() * lb;
        q.add(da - db, k);
        a -= b.shifted(da - db) * Laurent::mono(0, k);
    }
    return q;
}

} // namespace lwk

#endif
