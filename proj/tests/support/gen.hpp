#ifndef LWK_TEST_GEN_HPP
#define LWK_TEST_GEN_HPP

#include "lwk/lweight.hpp"

#include <random>
#include <string>
#include <vector>

struct Gen {
    std::mt19937 rng;
    explicit Gen(unsigned seed) : rng(seed) {}

    long uni(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

    lwk::SpectralParam param(const lwk::GroundField& F, int nbases = 2, long span = 6)
    {
        static const char* names[] = {"a", "b", "c"};
        return lwk::canon(F, lwk::sym(names[uni(0, nbases - 1)], uni(-span, span)));
    }

    lwk::LWeight lweight(const lwk::CartanData& C, const lwk::GroundField& F, int nterms = 4, bool dominant = false,
                         int nbases = 2, long span = 6)
    {
        lwk::LWeight w(F);
        for (int t = 0; t < nterms; ++t) {
            long e = dominant ? uni(1, 2) : uni(-2, 2);
            lwk::add_omega(w, int(uni(1, C.n)), param(F, nbases, span), e);
        }
        return w;
    }
};

#endif
