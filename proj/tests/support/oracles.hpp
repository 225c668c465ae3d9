#ifndef LWK_TEST_ORACLES_HPP
#define LWK_TEST_ORACLES_HPP

#include "lwk/cartan.hpp"
#include "lwk/qfactor.hpp"

#include <algorithm>
#include <set>

#include <map>
#include <vector>

// Brute-force Weyl group: elements are matrices (images of all fundamental
// weights), lengths are Cayley-graph distances.
struct BruteWeyl {
    using Mat = std::vector<lwk::Weight>;
    std::map<Mat, int> length;

    static lwk::Weight reflect(const lwk::CartanData& C, int i, lwk::Weight v)
    {
        long vi = v[i - 1];
        for (int j = 1; j <= C.n; ++j) v[j - 1] -= vi * C.c(j, i);
        return v;
    }

    static Mat left_mul(const lwk::CartanData& C, int i, Mat m)
    {
        for (auto& col : m) col = reflect(C, i, col);
        return m;
    }

    static Mat of_word(const lwk::CartanData& C, const lwk::WeylWord& w)
    {
        Mat m;
        for (int i = 1; i <= C.n; ++i) {
            lwk::Weight e(C.n, 0);
            e[i - 1] = 1;
            m.push_back(e);
        }
        for (auto it = w.rbegin(); it != w.rend(); ++it) m = left_mul(C, *it, m);
        return m;
    }

    explicit BruteWeyl(const lwk::CartanData& C)
    {
        std::vector<Mat> frontier{of_word(C, {})};
        length[frontier[0]] = 0;
        for (int d = 1; !frontier.empty(); ++d) {
            std::vector<Mat> next;
            for (const auto& m : frontier)
                for (int i = 1; i <= C.n; ++i) {
                    Mat x = left_mul(C, i, m);
                    if (length.emplace(x, d).second) next.push_back(x);
                }
            frontier = std::move(next);
        }
    }
};

// Exhaustive search over all ways of cutting a one-base root multiset into
// strings (and, at a root of unity, full Frobenius cycles) obeying the
// separation rules. Exponents are integers (formal) or residues mod l.
struct PartitionOracle {
    // sorted (center, length) pairs plus the number of Frobenius cycles
    using Part = std::pair<std::vector<std::pair<long, long>>, int>;

    long l = 0; // 0 for the formal case
    long d = 1;

    long md(long x) const { return l ? ((x % l) + l) % l : x; }

    bool separated(std::pair<long, long> x, std::pair<long, long> y) const
    {
        long diff = x.first - y.first;
        for (long p = 0; p < std::min(x.second, y.second); ++p) {
            long f = d * (x.second + y.second - 2 * p);
            if (l) {
                if (md(diff - f) == 0 || md(diff + f) == 0) return false;
            } else if (diff == f || diff == -f) {
                return false;
            }
        }
        return true;
    }

    bool valid(const Part& p) const
    {
        for (auto& s : p.first)
            if (l && s.second >= l) return false;
        for (std::size_t i = 0; i < p.first.size(); ++i)
            for (std::size_t j = i + 1; j < p.first.size(); ++j)
                if (!separated(p.first[i], p.first[j])) return false;
        return true;
    }

    bool take(std::multiset<long>& rest, const std::vector<long>& elems) const
    {
        std::multiset<long> probe = rest;
        for (long e : elems) {
            auto it = probe.find(md(e));
            if (it == probe.end()) return false;
            probe.erase(it);
        }
        rest.swap(probe);
        return true;
    }

    void rec(std::multiset<long>& rest, Part& cur, std::set<Part>& out) const
    {
        if (rest.empty()) {
            Part c = cur;
            std::sort(c.first.begin(), c.first.end());
            if (valid(c)) out.insert(c);
            return;
        }
        long k = *rest.begin();
        long maxr = l ? l - 1 : long(rest.size());
        for (long r = 1; r <= maxr; ++r) {
            // k is the lowest member in the formal case, any member at a root of unity
            long offsets = l ? r : 1;
            for (long j = 0; j < offsets; ++j) {
                long start = k - 2 * d * j;
                std::vector<long> elems;
                for (long t = 0; t < r; ++t) elems.push_back(start + 2 * d * t);
                std::multiset<long> saved = rest;
                if (!take(rest, elems)) continue;
                cur.first.push_back({md(start + d * (r - 1)), r});
                rec(rest, cur, out);
                cur.first.pop_back();
                rest = saved;
            }
        }
        if (l) {
            std::vector<long> elems;
            for (long t = 0; t < l; ++t) elems.push_back(k + t);
            std::multiset<long> saved = rest;
            if (take(rest, elems)) {
                ++cur.second;
                rec(rest, cur, out);
                --cur.second;
            }
            rest = saved;
        }
    }

    std::set<Part> all(const std::vector<long>& exps) const
    {
        std::multiset<long> rest;
        for (long e : exps) rest.insert(md(e));
        Part cur;
        std::set<Part> out;
        rec(rest, cur, out);
        return out;
    }

    static Part from(const lwk::QFactorization& f)
    {
        Part p;
        for (auto& s : f.quantum) p.first.push_back({s.a.xi, s.r});
        std::sort(p.first.begin(), p.first.end());
        p.second = int(f.frobenius.size());
        return p;
    }
};

#endif
