#pragma once

// Shared test utilities: deterministic random vectors, matrices, unimodular
// transforms, and cone generators. All randomness is seeded explicitly so
// failures reproduce.

#include <random>
#include <vector>

#include "toritrans/cone.hpp"
#include "toritrans/lattice.hpp"

namespace testutil {

using toritrans::Int;
using toritrans::IntMatrix;
using toritrans::IntVector;

inline IntVector vec(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline std::vector<IntVector> vecs(std::initializer_list<std::initializer_list<long>> vs) {
    std::vector<IntVector> out;
    for (auto& v : vs) out.push_back(vec(v));
    return out;
}

inline IntVector random_vector(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = d(rng);
    return v;
}

// Random element of GL_n(Z) as a product of elementary shears, swaps and
// sign flips; entries stay moderate.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int ops = 12) {
    IntMatrix m = IntMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<long> coeff(-2, 2);
    for (int t = 0; t < ops; ++t) {
        std::size_t i = idx(rng), j = idx(rng);
        switch (kind(rng)) {
            case 0: {
                if (i == j) break;
                Int c = coeff(rng);
                for (std::size_t k = 0; k < n; ++k) m.at(i, k) += c * m.at(j, k);
                break;
            }
            case 1:
                if (i != j)
                    for (std::size_t k = 0; k < n; ++k) std::swap(m.at(i, k), m.at(j, k));
                break;
            default:
                for (std::size_t k = 0; k < n; ++k) m.at(i, k) = -m.at(i, k);
                break;
        }
    }
    return m;
}

// Random strongly convex cone with generator coordinates in [lo, hi].
inline toritrans::RationalCone random_pointed_cone(std::mt19937_64& rng, std::size_t n,
                                                   std::size_t gens, long lo, long hi) {
    for (;;) {
        std::vector<IntVector> g;
        for (std::size_t i = 0; i < gens; ++i) {
            IntVector v = random_vector(rng, n, lo, hi);
            if (!toritrans::is_zero_vector(v)) g.push_back(v);
        }
        if (g.empty()) continue;
        toritrans::RationalCone c = toritrans::RationalCone::from_generators(g, n);
        if (c.is_strongly_convex() && !c.is_zero()) return c;
    }
}

}  // namespace testutil
