#ifndef LWK_LROOTS_HPP
#define LWK_LROOTS_HPP

#include "lwk/braid.hpp"
#include "lwk/cartan.hpp"
#include "lwk/lweight.hpp"
#include "lwk/zlattice.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace lwk {

// alpha_{i,a} = omega_{i,a} (T_i omega_{i,a})^{-1}
inline LWeight simple_lroot(const CartanData& C, const GroundField& F, int i, const SpectralParam& a)
{
    LWeight w = omega(F, i, a);
    return div(w, braid_T(C, i, w));
}

// Terms of alpha_{i, c xi^m} as (node, shift relative to m, exponent).
struct RootTerm {
    int node;
    long shift;
    long coef;
};

inline std::vector<RootTerm> alpha_terms(const CartanData& C, int i)
{
    std::vector<RootTerm> t{{i, 0, 1}, {i, 2L * C.di(i), 1}};
    for (int j : C.neighbors(i))
        for (long s : neighbor_shifts(C, i, j)) t.push_back({j, s, -1});
    return t;
}

// One factor alpha_{node, c}^exp. When `root_of` is set the factor is
// alpha_{node, b^{1/l} xi^k} with b = c and k = root_shift; such factors only
// expand as complete Frobenius blocks.
struct CertEntry {
    int node = 1;
    SpectralParam c;
    long exp = 0;
    bool root_of = false;
    long root_shift = 0;
    bool operator==(const CertEntry&) const = default;
};

using Certificate = std::vector<CertEntry>;

inline LWeight expand_certificate(const CartanData& C, const GroundField& F, const Certificate& cert)
{
    LWeight r(F);
    std::map<std::pair<SpectralParam, int>, std::map<long, long>> pseudo; // (b, node) -> k -> exponent
    for (const auto& e : cert) {
        if (!e.root_of) {
            r = mul(r, simple_lroot(C, F, e.node, e.c), e.exp);
            continue;
        }
        if (F.mode != Mode::Root) throw Error("Frobenius certificate entry outside root-of-unity mode");
        for (const auto& t : alpha_terms(C, e.node)) {
            long k = F.reduce(e.root_shift + t.shift);
            pseudo[{canon(F, e.c), t.node}][k] += t.coef * e.exp;
        }
    }
    for (const auto& [key, row] : pseudo) {
        std::vector<long> v(F.l, 0);
        for (const auto& [k, x] : row) v[k] = x;
        for (long k = 1; k < F.l; ++k)
            if (v[k] != v[0]) throw Error("certificate does not close up to Frobenius blocks");
        add_block(r, key.second, key.first, v[0]);
    }
    return r;
}

enum class Membership { Yes, No, NoWithinWindow };

inline const char* to_string(Membership m)
{
    switch (m) {
    case Membership::Yes: return "yes";
    case Membership::No: return "no";
    case Membership::NoWithinWindow: return "no-within-window";
    }
    return "?";
}

struct MembershipResult {
    Membership status = Membership::No;
    Certificate cert;
    bool exact = true; // false when a bounded search was used for a negative answer
};

namespace detail {

struct Orbit {
    // (node, position) -> exponent; positions are xi exponents (generic) or residues
    std::map<std::pair<int, long>, long> rhs;
};

// Triangular elimination in the formal case; the solution is unique.
inline std::optional<Certificate> solve_generic_orbit(const CartanData& C, const Base& base, const Orbit& o)
{
    std::map<std::pair<long, int>, long> rem;
    long maxxi = 0;
    bool first = true;
    for (const auto& [k, e] : o.rhs) {
        rem[{k.second, k.first}] = e;
        maxxi = first ? k.second : std::max(maxxi, k.second);
        first = false;
    }
    std::vector<std::vector<RootTerm>> terms(C.n + 1);
    for (int i = 1; i <= C.n; ++i) terms[i] = alpha_terms(C, i);
    Certificate cert;
    while (!rem.empty()) {
        long m = rem.begin()->first.first;
        if (m > maxxi) return std::nullopt;
        while (!rem.empty() && rem.begin()->first.first == m) {
            auto [key, e] = *rem.begin();
            int j = key.second;
            cert.push_back({j, {base, m}, e});
            for (const auto& t : terms[j]) {
                auto& slot = rem[{m + t.shift, t.node}];
                slot -= e * t.coef;
                if (slot == 0) rem.erase({m + t.shift, t.node});
            }
        }
    }
    return cert;
}

struct FiniteOrbitSolution {
    IVec particular;
    IMat kernel;
};

// The system over Z/P positions (P = l, or 1 at xi = 1).
inline std::optional<FiniteOrbitSolution> solve_finite_orbit(const CartanData& C, long P, const Orbit& o)
{
    std::size_t N = std::size_t(C.n) * P;
    IMat A(N, IVec(N));
    for (int i = 1; i <= C.n; ++i)
        for (long k = 0; k < P; ++k) {
            std::size_t u = std::size_t(i - 1) * P + k;
            for (const auto& t : alpha_terms(C, i)) {
                std::size_t eq = std::size_t(t.node - 1) * P + mod_pos(k + t.shift, P);
                A[eq][u] += t.coef;
            }
        }
    IVec b(N);
    for (const auto& [k, e] : o.rhs) b[std::size_t(k.first - 1) * P + mod_pos(k.second, P)] += e;
    auto s = solve_integer(A, b, N);
    if (!s) return std::nullopt;
    return FiniteOrbitSolution{s->particular, s->kernel};
}

inline bool nonneg(const IVec& v)
{
    for (const auto& x : v)
        if (x < 0) return false;
    return true;
}

// Searches particular + kernel * z >= 0 over growing boxes.
inline std::optional<IVec> search_nonneg(const FiniteOrbitSolution& s, std::size_t budget)
{
    if (nonneg(s.particular)) return s.particular;
    std::size_t r = s.kernel.size();
    if (r == 0) return std::nullopt;
    std::size_t spent = 0;
    for (long B = 1; B <= 16; B *= 2) {
        std::vector<long> z(r, -B);
        for (;;) {
            if (++spent > budget) return std::nullopt;
            IVec v = s.particular;
            for (std::size_t k = 0; k < r; ++k) axpy(v, Int(z[k]), s.kernel[k]);
            if (nonneg(v)) return v;
            std::size_t p = 0;
            while (p < r && z[p] == B) z[p++] = -B;
            if (p == r) break;
            ++z[p];
        }
    }
    return std::nullopt;
}

} // namespace detail

// Decides nu in Q_xi (signed) or nu in Q_xi^+ (cone), with a certificate.
inline MembershipResult lattice_member(const CartanData& C, const LWeight& nu, bool cone,
                                       std::size_t budget = 1u << 18)
{
    const GroundField& F = nu.F;
    check_nodes(C, nu);
    MembershipResult res;
    if (!root_coords(C, wt(C, nu))) return res;
    if (cone && !dominance_le(C, Weight(C.n, 0), wt(C, nu))) return res;

    std::map<Base, detail::Orbit> orbits;
    for (const auto& [k, e] : nu.terms) orbits[k.a.base].rhs[{k.node, k.a.xi}] += e;
    std::map<SpectralParam, detail::Orbit> blocks;
    for (const auto& [k, e] : nu.frob)
        for (long p = 0; p < F.l; ++p) blocks[k.a].rhs[{k.node, p}] += e;

    bool window_used = false;
    if (F.mode == Mode::Generic) {
        for (const auto& [base, o] : orbits) {
            auto cert = detail::solve_generic_orbit(C, base, o);
            if (!cert) return res;
            for (const auto& e : *cert) {
                if (cone && e.exp < 0) return res;
                res.cert.push_back(e);
            }
        }
        res.status = Membership::Yes;
        return res;
    }

    long P = F.mode == Mode::Root ? F.l : 1;
    auto handle = [&](const detail::Orbit& o, auto&& emit) -> bool {
        auto s = detail::solve_finite_orbit(C, P, o);
        if (!s) return false;
        IVec x = s->particular;
        if (cone) {
            auto v = detail::search_nonneg(*s, budget);
            if (!v) {
                if (!s->kernel.empty()) window_used = true;
                return false;
            }
            x = *v;
        }
        for (int i = 1; i <= C.n; ++i)
            for (long k = 0; k < P; ++k) {
                const Int& c = x[std::size_t(i - 1) * P + k];
                if (c != 0) emit(i, k, static_cast<long>(c));
            }
        return true;
    };
    for (const auto& [base, o] : orbits) {
        bool ok = handle(o, [&](int i, long k, long e) { res.cert.push_back({i, {base, k}, e}); });
        if (!ok) {
            res.status = window_used ? Membership::NoWithinWindow : Membership::No;
            res.exact = !window_used;
            res.cert.clear();
            return res;
        }
    }
    for (const auto& [b, o] : blocks) {
        bool ok = handle(o, [&](int i, long k, long e) { res.cert.push_back({i, b, e, true, k}); });
        if (!ok) {
            res.status = window_used ? Membership::NoWithinWindow : Membership::No;
            res.exact = !window_used;
            res.cert.clear();
            return res;
        }
    }
    res.status = Membership::Yes;
    return res;
}

inline MembershipResult signed_lattice_member(const CartanData& C, const LWeight& nu)
{
    return lattice_member(C, nu, false);
}

// mu <= lambda iff lambda mu^{-1} is a product of simple l-roots.
inline MembershipResult cone_member(const CartanData& C, const LWeight& lambda, const LWeight& mu)
{
    return lattice_member(C, div(lambda, mu), true);
}

} // namespace lwk

#endif
