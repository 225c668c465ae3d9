#ifndef LWK_BLOCKS_HPP
#define LWK_BLOCKS_HPP

#include "lwk/cartan.hpp"
#include "lwk/laurent.hpp"
#include "lwk/lroots.hpp"
#include "lwk/lweight.hpp"
#include "lwk/zlattice.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace lwk {

// A spectral orbit: base * xi^Z, or (frob) the l-th roots of a Frobenius base.
struct OrbitKey {
    Base base;
    bool frob = false;
    long fxi = 0;
    auto operator<=>(const OrbitKey&) const = default;
    bool operator==(const OrbitKey&) const = default;
};

// Canonical residues per orbit; zero residues are dropped.
struct EllipticClass {
    std::map<OrbitKey, IVec> orbits;
    bool zero() const { return orbits.empty(); }
    bool operator==(const EllipticClass&) const = default;
};

namespace detail {

using LVec = std::vector<Laurent>; // indexed by node, slot 0 unused

// P = sum_i Q_i A_i, A_i the orbit vector of alpha_i
struct ElimEq {
    LVec P, Q;
};

struct Elimination {
    std::vector<std::pair<int, ElimEq>> pivots; // unit pivot on the node, in order
    std::vector<ElimEq> relations;              // supported on the black nodes
};

inline void sub_multiple(ElimEq& x, const Laurent& f, const ElimEq& y)
{
    for (std::size_t u = 0; u < x.P.size(); ++u) {
        if (!y.P[u].zero()) x.P[u] -= f * y.P[u];
        if (!y.Q[u].zero()) x.Q[u] -= f * y.Q[u];
    }
}

inline Elimination eliminate(const CartanData& C)
{
    int n = C.n;
    std::vector<ElimEq> eqs;
    for (int i = 1; i <= n; ++i) {
        ElimEq e{LVec(n + 1), LVec(n + 1)};
        for (const auto& t : alpha_terms(C, i)) e.P[t.node].add(t.shift, t.coef);
        e.Q[i] = Laurent::mono(0);
        eqs.push_back(std::move(e));
    }
    std::vector<int> todo;
    for (int v = 1; v <= n; ++v)
        if (std::find(C.ibullet.begin(), C.ibullet.end(), v) == C.ibullet.end()) todo.push_back(v);

    Elimination out;
    for (int guard = 0; !todo.empty(); ++guard) {
        if (guard > 10000) throw Error("internal: elimination did not terminate for " + C.name());
        bool done = false;
        for (std::size_t ei = 0; ei < eqs.size() && !done; ++ei)
            for (std::size_t ti = 0; ti < todo.size() && !done; ++ti) {
                int v = todo[ti];
                if (!eqs[ei].P[v].is_unit()) continue;
                ElimEq piv = eqs[ei];
                Laurent uinv = piv.P[v].unit_inverse();
                eqs.erase(eqs.begin() + long(ei));
                for (auto& e : eqs)
                    if (!e.P[v].zero()) sub_multiple(e, e.P[v] * uinv, piv);
                out.pivots.emplace_back(v, std::move(piv));
                todo.erase(todo.begin() + long(ti));
                done = true;
            }
        if (done) continue;

        // Euclidean step on one variable's coefficients
        for (int v : todo) {
            std::vector<std::size_t> idx;
            for (std::size_t k = 0; k < eqs.size(); ++k)
                if (!eqs[k].P[v].zero()) idx.push_back(k);
            if (idx.size() < 2) continue;
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
                return eqs[x].P[v].hi() - eqs[x].P[v].lo() < eqs[y].P[v].hi() - eqs[y].P[v].lo();
            });
            const Laurent b = eqs[idx[0]].P[v];
            if (b.lead() != 1 && b.lead() != -1) continue;
            Laurent bn = b.shifted(-b.lo());
            for (std::size_t k = 1; k < idx.size(); ++k) {
                const Laurent& a = eqs[idx[k]].P[v];
                Laurent an = a.shifted(-a.lo());
                if (an.hi() < bn.hi()) continue;
                Laurent q = polydiv(an, bn);
                sub_multiple(eqs[idx[k]], q.shifted(a.lo() - b.lo()), eqs[idx[0]]);
                done = true;
            }
            if (done) break;
        }
        if (!done) throw Error("internal: elimination to the black nodes stalled for " + C.name());
    }
    out.relations = std::move(eqs);
    return out;
}

inline const Elimination& elimination(const CartanData& C)
{
    static std::mutex mtx;
    static std::map<std::string, Elimination> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(C.name());
    if (it == cache.end()) it = cache.emplace(C.name(), eliminate(C)).first;
    return it->second;
}

// Applies the pivots; afterwards N is supported on the black nodes and
// N_before = N_after + sum_i kappa_i A_i.
inline void push_to_ibullet(const Elimination& E, LVec& N, LVec& kappa)
{
    for (const auto& [v, eq] : E.pivots) {
        if (N[v].zero()) continue;
        Laurent f = N[v] * eq.P[v].unit_inverse();
        for (std::size_t u = 0; u < N.size(); ++u) {
            if (!eq.P[u].zero()) N[u] -= f * eq.P[u];
            if (!eq.Q[u].zero()) kappa[u] += f * eq.Q[u];
        }
    }
}

// Orbit vectors of an l-weight, exponents lifted to integers.
inline std::map<OrbitKey, LVec> orbit_vectors(const CartanData& C, const LWeight& w)
{
    check_nodes(C, w);
    std::map<OrbitKey, LVec> out;
    auto slot = [&](const OrbitKey& k) -> LVec& {
        auto it = out.find(k);
        if (it == out.end()) it = out.emplace(k, LVec(C.n + 1)).first;
        return it->second;
    };
    for (const auto& [k, e] : w.terms) slot({k.a.base, false, 0})[k.node].add(k.a.xi, e);
    for (const auto& [k, e] : w.frob) {
        LVec& v = slot({k.a.base, true, k.a.xi});
        for (long m = 0; m < w.F.l; ++m) v[k.node].add(m, e);
    }
    return out;
}

inline long period(const GroundField& F)
{
    switch (F.mode) {
    case Mode::Generic: return 0;
    case Mode::Root: return F.l;
    case Mode::One: return 1;
    }
    return 0;
}

// The relation module on the black-node generators, reduced modulo a monic p.
struct Reducer {
    struct Gen {
        int k;        // tau index, or 0 for a t^P - 1 multiple
        long m;       // shift
        int comp = 0; // component of a periodic generator
    };

    int comps = 1;
    long D = 0;
    long P = 0;
    Laurent p;
    std::vector<Laurent> rel;   // rel[k-1] for components; single-component types use component 0
    std::vector<Laurent> rel_b; // second component of the relations (D even)
    std::vector<Gen> info;
    IMat gens;
    Lattice L;
    std::vector<IVec> pos, neg; // t^m mod p for m >= 0 and m < 0

    IVec pow_mod(long m)
    {
        if (m >= 0) {
            while (long(pos.size()) <= m) {
                IVec v(D);
                if (pos.empty()) {
                    v[0] = 1;
                } else {
                    const IVec& u = pos.back();
                    for (long j = D - 1; j >= 1; --j) v[j] = u[j - 1];
                    Int top = u[D - 1];
                    if (top != 0)
                        for (long j = 0; j < D; ++j) {
                            auto it = p.c.find(j);
                            if (it != p.c.end()) v[j] -= top * it->second;
                        }
                }
                pos.push_back(std::move(v));
            }
            return pos[m];
        }
        long idx = -m - 1;
        while (long(neg.size()) <= idx) {
            const IVec& u = neg.empty() ? pow_mod(0) : neg.back();
            IVec v(D);
            for (long j = 0; j + 1 < D; ++j) v[j] = u[j + 1];
            Int low = u[0];
            if (low != 0)
                for (long j = 0; j < D; ++j) {
                    auto it = p.c.find(j + 1);
                    if (it != p.c.end()) v[j] -= low * it->second;
                }
            neg.push_back(std::move(v));
        }
        return neg[idx];
    }

    IVec vec(const std::vector<Laurent>& f)
    {
        IVec out(std::size_t(comps) * D);
        for (int c = 0; c < comps; ++c)
            for (const auto& [e, k] : f[c].c) {
                IVec t = pow_mod(e);
                for (long j = 0; j < D; ++j) out[std::size_t(c) * D + j] += k * t[j];
            }
        return out;
    }

    // The polynomial vector of generator g.
    std::vector<Laurent> gen_poly(const Gen& g) const
    {
        std::vector<Laurent> f(comps);
        if (g.k == 0) {
            f[g.comp] = Laurent::mono(g.m + P) - Laurent::mono(g.m);
        } else {
            f[0] = rel[g.k - 1].shifted(g.m);
            if (comps == 2) f[1] = rel_b[g.k - 1].shifted(g.m);
        }
        return f;
    }

    IVec normal(const std::vector<Laurent>& f) { return L.reduce(vec(f)); }
};

inline Laurent poly_of(const std::vector<long>& exps)
{
    Laurent p;
    for (long j : exps) p.add(j, 1);
    return p;
}

inline Reducer build_reducer(const CartanData& C, long P)
{
    Reducer R;
    R.P = P;
    if (C.d_even) {
        long h = 2L * C.n - 2;
        R.comps = 2;
        R.rel = {poly_of({0, h}), Laurent(), poly_of({0, 2})};
        R.rel_b = {Laurent(), poly_of({0, h}), poly_of({h, h + 2})};
        R.p = R.rel[0];
    } else {
        for (const auto& t : C.T) R.rel.push_back(poly_of(t));
        R.p = R.rel[0];
    }
    if (R.p.lo() != 0 || R.p.c.begin()->second != 1 || R.p.lead() != 1) throw Error("internal: bad relation modulus");
    R.D = R.p.hi();
    std::size_t first = C.d_even ? 2 : 1;
    for (std::size_t k = first; k < R.rel.size(); ++k)
        for (long m = 0; m < R.D; ++m) R.info.push_back({int(k + 1), m});
    if (P > 0)
        for (int c = 0; c < R.comps; ++c)
            for (long m = 0; m < R.D; ++m) R.info.push_back({0, m, c});
    for (const auto& g : R.info) R.gens.push_back(R.vec(R.gen_poly(g)));
    R.L = Lattice(std::size_t(R.comps) * R.D, R.gens);
    return R;
}

inline Reducer& reducer(const CartanData& C, const GroundField& F)
{
    static std::mutex mtx;
    static std::map<std::pair<std::string, long>, Reducer> cache;
    std::lock_guard<std::mutex> lock(mtx);
    std::pair<std::string, long> key{C.name(), period(F)};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_reducer(C, key.second)).first;
    return it->second;
}

inline long to_long(const Int& x)
{
    if (x > Int(std::numeric_limits<long>::max()) || x < Int(std::numeric_limits<long>::min()))
        throw Error("exponent overflow");
    return static_cast<long>(x);
}

} // namespace detail

// Relations among the black-node generators derived by eliminating the other
// nodes; one vector of polynomials (indexed like CartanData::ibullet) each.
inline std::vector<std::vector<Laurent>> derived_relations(const CartanData& C)
{
    std::vector<std::vector<Laurent>> out;
    for (const auto& eq : detail::elimination(C).relations) {
        for (int v = 1; v <= C.n; ++v)
            if (!eq.P[v].zero() && std::find(C.ibullet.begin(), C.ibullet.end(), v) == C.ibullet.end())
                throw Error("internal: relation not supported on the black nodes");
        std::vector<Laurent> r;
        for (int b : C.ibullet) r.push_back(eq.P[b]);
        out.push_back(std::move(r));
    }
    return out;
}

inline int num_tau(const CartanData& C) { return C.d_even ? 3 : int(C.T.size()); }

inline LWeight tau(const CartanData& C, const GroundField& F, int k, const SpectralParam& a)
{
    if (k < 1 || k > num_tau(C)) throw Error("tau index " + std::to_string(k) + " is not valid for " + C.name());
    LWeight w(F);
    if (C.d_even) {
        long h = 2L * C.n - 2;
        int m = C.n - 1, p = C.n;
        if (k == 1) {
            add_omega(w, m, a, 1);
            add_omega(w, m, shift(F, a, h), 1);
        } else if (k == 2) {
            add_omega(w, p, a, 1);
            add_omega(w, p, shift(F, a, h), 1);
        } else {
            add_omega(w, m, a, 1);
            add_omega(w, m, shift(F, a, 2), 1);
            add_omega(w, p, shift(F, a, h), 1);
            add_omega(w, p, shift(F, a, h + 2), 1);
        }
        return w;
    }
    for (long r : C.T[k - 1]) add_omega(w, C.ibullet[0], shift(F, a, r), 1);
    return w;
}

struct IBulletForm {
    LWeight lambda;   // supported on the black nodes
    Certificate cert; // original = lambda * expand_certificate(cert)
};

inline IBulletForm to_ibullet(const CartanData& C, const LWeight& w)
{
    const GroundField& F = w.F;
    const auto& E = detail::elimination(C);
    IBulletForm out{LWeight(F), {}};
    for (auto& [key, N] : detail::orbit_vectors(C, w)) {
        detail::LVec kappa(C.n + 1);
        detail::push_to_ibullet(E, N, kappa);
        std::map<std::pair<int, long>, Int> cert;
        for (int i = 1; i <= C.n; ++i)
            for (const auto& [m, c] : kappa[i].c) cert[{i, key.frob ? mod_pos(m, F.l) : F.reduce(m)}] += c;
        for (const auto& [k, c] : cert) {
            if (c == 0) continue;
            if (key.frob)
                out.cert.push_back({k.first, {key.base, key.fxi}, detail::to_long(c), true, k.second});
            else
                out.cert.push_back({k.first, {key.base, k.second}, detail::to_long(c)});
        }
        for (int b : C.ibullet) {
            if (!key.frob) {
                for (const auto& [m, c] : N[b].c) add_omega(out.lambda, b, {key.base, m}, detail::to_long(c));
                continue;
            }
            Laurent r = N[b].reduced_mod(F.l);
            Int c0 = r.c.count(0) ? r.c.at(0) : Int(0);
            for (long m = 0; m < F.l; ++m) {
                Int cm = r.c.count(m) ? r.c.at(m) : Int(0);
                if (cm != c0) throw Error("internal: Frobenius orbit lost its block shape");
            }
            add_block(out.lambda, b, {key.base, key.fxi}, detail::to_long(c0));
        }
    }
    return out;
}

inline EllipticClass elliptic_char(const CartanData& C, const LWeight& w)
{
    const auto& E = detail::elimination(C);
    auto& R = detail::reducer(C, w.F);
    EllipticClass cls;
    for (auto& [key, N] : detail::orbit_vectors(C, w)) {
        detail::LVec kappa(C.n + 1);
        detail::push_to_ibullet(E, N, kappa);
        std::vector<Laurent> chi;
        for (int b : C.ibullet) chi.push_back(N[b]);
        IVec v = R.normal(chi);
        if (std::any_of(v.begin(), v.end(), [](const Int& x) { return x != 0; })) cls.orbits.emplace(key, std::move(v));
    }
    return cls;
}

inline bool same_block(const CartanData& C, const LWeight& x, const LWeight& y)
{
    require_same(x.F, y.F);
    return elliptic_char(C, div(x, y)).zero();
}

// omega_j / omega_{j+1} = tau(k, a)^eps
struct TauMove {
    int k = 1;
    SpectralParam a;
    int eps = 1;
    bool operator==(const TauMove&) const = default;
};

struct LinkingSequence {
    std::vector<TauMove> moves;
    bool dominant = true; // every intermediate l-weight is dominant
};

inline LinkingSequence linking_sequence(const CartanData& C, const LWeight& lambda, const LWeight& mu)
{
    require_same(lambda.F, mu.F);
    const GroundField& F = lambda.F;
    for (const LWeight* w : {&lambda, &mu}) {
        if (!is_dominant(*w)) throw Error("linking_sequence needs dominant l-weights");
        for (const auto& [k, e] : w->terms)
            if (std::find(C.ibullet.begin(), C.ibullet.end(), k.node) == C.ibullet.end())
                throw Error("linking_sequence needs l-weights supported on the black nodes");
        for (const auto& [k, e] : w->frob)
            if (std::find(C.ibullet.begin(), C.ibullet.end(), k.node) == C.ibullet.end())
                throw Error("linking_sequence needs l-weights supported on the black nodes");
    }
    LWeight nu = div(lambda, mu);
    if (!nu.frob.empty()) throw Error("linking sequences through Frobenius blocks are not supported");
    if (!elliptic_char(C, nu).zero()) throw Error("l-weights are not in the same block");

    auto& R = detail::reducer(C, F);
    std::map<std::pair<int, SpectralParam>, Int> coef;
    for (auto& [key, N] : detail::orbit_vectors(C, nu)) {
        std::vector<Laurent> g;
        for (int b : C.ibullet) g.push_back(N[b]);
        long s = 0;
        bool any = false;
        for (const auto& x : g)
            if (!x.zero()) {
                s = any ? std::min(s, x.lo()) : x.lo();
                any = true;
            }
        if (!any) continue;
        for (auto& x : g) x = x.shifted(-s);

        // g = sum_c q_c p e_c + r
        std::vector<Laurent> cpoly(R.rel.size());
        IVec r(std::size_t(R.comps) * R.D);
        for (int c = 0; c < R.comps; ++c) {
            Laurent rem = g[c];
            cpoly[c] = polydiv(rem, R.p);
            for (const auto& [e, k] : rem.c) r[std::size_t(c) * R.D + e] = k;
        }
        IMat A(r.size(), IVec(R.gens.size()));
        for (std::size_t j = 0; j < R.gens.size(); ++j)
            for (std::size_t i = 0; i < r.size(); ++i) A[i][j] = R.gens[j][i];
        auto sol = solve_integer(A, r, R.gens.size());
        if (!sol) throw Error("internal: residue not in the relation lattice");
        for (std::size_t j = 0; j < R.info.size(); ++j) {
            const Int& y = sol->particular[j];
            if (y == 0) continue;
            auto G = R.gen_poly(R.info[j]);
            for (int c = 0; c < R.comps; ++c) {
                Laurent rem = G[c];
                Laurent q = polydiv(rem, R.p);
                cpoly[c] -= q * Laurent::mono(0, y);
            }
            if (R.info[j].k != 0) cpoly[R.info[j].k - 1].add(R.info[j].m, y);
        }
        for (std::size_t k = 0; k < cpoly.size(); ++k)
            for (const auto& [m, c] : cpoly[k].c) coef[{int(k + 1), canon(F, {key.base, m + s})}] += c;
    }

    LinkingSequence out;
    for (int sign : {-1, 1})
        for (const auto& [ka, c] : coef)
            if ((sign < 0 && c < 0) || (sign > 0 && c > 0))
                for (Int t = 0; t < (c < 0 ? Int(-c) : c); ++t) out.moves.push_back({ka.first, ka.second, sign});

    LWeight cur = lambda;
    for (const auto& mv : out.moves) {
        cur = mul(cur, tau(C, F, mv.k, mv.a), -mv.eps);
        if (!is_dominant(cur)) out.dominant = false;
    }
    if (!(cur == mu)) throw Error("internal: linking sequence does not end at the target");
    return out;
}

} // namespace lwk

#endif
