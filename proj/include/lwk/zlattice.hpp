#ifndef LWK_ZLATTICE_HPP
#define LWK_ZLATTICE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace lwk {

using Int = boost::multiprecision::cpp_int;
using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;

inline Int floor_div(const Int& a, const Int& b)
{
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline void axpy(IVec& y, const Int& k, const IVec& x)
{
    if (k == 0) return;
    for (std::size_t c = 0; c < y.size(); ++c) y[c] += k * x[c];
}

// Row echelon form over Z by unimodular row operations, pivoting only in the
// first `pivot_cols` columns. Pivots are positive and entries above each pivot
// are reduced into [0, pivot). Rows that vanish on the pivot columns are kept
// after the echelon rows (they carry augmented data). Returns the pivot columns.
inline std::vector<std::size_t> echelon(IMat& m, std::size_t pivot_cols)
{
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < m.size(); ++c) {
        for (;;) {
            std::size_t best = m.size();
            for (std::size_t k = r; k < m.size(); ++k)
                if (m[k][c] != 0 && (best == m.size() || abs(m[k][c]) < abs(m[best][c]))) best = k;
            if (best == m.size()) break;
            std::swap(m[r], m[best]);
            bool clean = true;
            for (std::size_t k = r + 1; k < m.size(); ++k) {
                if (m[k][c] == 0) continue;
                Int q = floor_div(m[k][c], m[r][c]);
                axpy(m[k], -q, m[r]);
                if (m[k][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (r < m.size() && m[r][c] != 0) {
            if (m[r][c] < 0)
                for (auto& x : m[r]) x = -x;
            for (std::size_t k = 0; k < r; ++k) axpy(m[k], -floor_div(m[k][c], m[r][c]), m[r]);
            piv.push_back(c);
            ++r;
        }
    }
    return piv;
}

// A lattice in Z^n held in Hermite normal form.
struct Lattice {
    std::size_t dim = 0;
    IMat basis;
    std::vector<std::size_t> pivots;

    Lattice() = default;
    Lattice(std::size_t n, IMat gens) : dim(n)
    {
        pivots = echelon(gens, n);
        gens.resize(pivots.size());
        basis = std::move(gens);
    }

    // Canonical representative of v + L.
    IVec reduce(IVec v) const
    {
        for (std::size_t k = 0; k < basis.size(); ++k) axpy(v, -floor_div(v[pivots[k]], basis[k][pivots[k]]), basis[k]);
        return v;
    }

    // Coefficients y with v = sum y_k basis_k, if v lies in the lattice.
    std::optional<IVec> coords(IVec v) const
    {
        IVec y(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const Int& p = basis[k][pivots[k]];
            if (v[pivots[k]] % p != 0) return std::nullopt;
            y[k] = v[pivots[k]] / p;
            axpy(v, -y[k], basis[k]);
        }
        for (const auto& x : v)
            if (x != 0) return std::nullopt;
        return y;
    }

    bool contains(const IVec& v) const { return coords(v).has_value(); }
};

// Integer solutions of A x = b (A is rows x n): one particular solution and a kernel basis.
struct IntSolution {
    IVec particular;
    IMat kernel;
};

inline std::optional<IntSolution> solve_integer(const IMat& A, const IVec& b, std::size_t n)
{
    std::size_t m = A.size();
    // rows of [A^T | I_n]
    IMat aug(n, IVec(m + n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) aug[j][i] = A[i][j];
        aug[j][m + j] = 1;
    }
    auto piv = echelon(aug, m);
    IVec rest = b;
    IVec x(n);
    for (std::size_t k = 0; k < piv.size(); ++k) {
        const Int& p = aug[k][piv[k]];
        if (rest[piv[k]] % p != 0) return std::nullopt;
        Int y = rest[piv[k]] / p;
        for (std::size_t i = 0; i < m; ++i) rest[i] -= y * aug[k][i];
        for (std::size_t j = 0; j < n; ++j) x[j] += y * aug[k][m + j];
    }
    for (const auto& v : rest)
        if (v != 0) return std::nullopt;
    IntSolution s;
    s.particular = std::move(x);
    for (std::size_t k = piv.size(); k < n; ++k) s.kernel.emplace_back(aug[k].begin() + m, aug[k].end());
    return s;
}

inline std::size_t rank_of(IMat m, std::size_t ncols) { return echelon(m, ncols).size(); }

inline IVec to_ivec(const std::vector<long>& v) { return IVec(v.begin(), v.end()); }

} // namespace lwk

#endif
