#pragma once

// Brute-force verifiers, deliberately algorithm-disjoint from the main
// modules: membership is decided by 2x2 determinants against the generators,
// never through the double-description inequality machinery, and search
// regions are explicit boxes with documented completeness bounds.

#include <optional>
#include <set>
#include <vector>

#include "toritrans/cone.hpp"
#include "toritrans/errors.hpp"
#include "toritrans/lattice.hpp"

namespace toritrans::oracle {

namespace detail {

inline Int cross2(const IntVector& a, const IntVector& b) {
    return a[0] * b[1] - a[1] * b[0];
}

// Membership of a rank-2 point in the cone over the given generators,
// decided by barycentric sign checks.
inline bool in_cone_2d(const std::vector<IntVector>& gens, const IntVector& p) {
    if (gens.empty()) return is_zero_vector(p);
    if (gens.size() == 1) {
        const IntVector& g = gens[0];
        return cross2(p, g) == 0 && dot(p, g) >= 0;
    }
    // some pair of generators spans every point of a 2d cone
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            Int d = cross2(gens[i], gens[j]);
            if (d == 0) continue;
            Int l1 = cross2(p, gens[j]) * (d > 0 ? 1 : -1);
            Int l2 = cross2(gens[i], p) * (d > 0 ? 1 : -1);
            if (l1 >= 0 && l2 >= 0) return true;
        }
    // all generators collinear
    for (const IntVector& g : gens)
        if (cross2(p, g) == 0 && dot(p, g) >= 0) return true;
    return false;
}

}  // namespace detail

// Hilbert basis of a pointed rank-2 cone by box enumeration: list every
// lattice point of the cone with coordinates in [-bound, bound], drop those
// that split as a sum of two nonzero listed points. Complete whenever the
// basis elements and their summands fit in the box, which holds for the
// generator zonotope of pointed rank-2 cones with bound at least the largest
// generator coordinate.
inline std::vector<IntVector> brute_hilbert_basis(const RationalCone& c, long bound) {
    if (c.rank() != 2) throw UnsupportedRank("brute_hilbert_basis: rank 2 only");
    if (!c.is_strongly_convex())
        throw UnsupportedCone("brute_hilbert_basis: cone is not pointed");
    const std::vector<IntVector>& gens = c.rays();

    std::set<IntVector> pts;
    for (long x = -bound; x <= bound; ++x)
        for (long y = -bound; y <= bound; ++y) {
            if (x == 0 && y == 0) continue;
            IntVector p{Int(x), Int(y)};
            if (detail::in_cone_2d(gens, p)) pts.insert(p);
        }

    std::vector<IntVector> basis;
    for (const IntVector& p : pts) {
        bool splits = false;
        for (const IntVector& q : pts) {
            IntVector rest = sub(p, q);
            if (is_zero_vector(rest)) continue;
            if (pts.count(rest)) {
                splits = true;
                break;
            }
        }
        if (!splits) basis.push_back(p);
    }
    canonical_sort(basis);
    return basis;
}

// Checks that `claimed` is the dual of `c` on every lattice point of the
// [-bound, bound] box: pairing nonnegatively with all generators of c must
// agree with membership in the claimed cone.
inline bool brute_dual_equivalence(const RationalCone& c, const RationalCone& claimed,
                                   long bound) {
    if (c.rank() != claimed.rank())
        throw RankMismatch("brute_dual_equivalence: rank mismatch");
    std::vector<IntVector> gens = c.generators();
    std::size_t n = c.rank();

    IntVector u(n, Int(-bound));
    for (;;) {
        bool pairs_nonneg = true;
        for (const IntVector& g : gens)
            if (dot(u, g) < 0) {
                pairs_nonneg = false;
                break;
            }
        if (pairs_nonneg != claimed.contains_point(u)) return false;

        std::size_t pos = 0;
        while (pos < n) {
            ++u[pos];
            if (u[pos] <= bound) break;
            u[pos] = -bound;
            ++pos;
        }
        if (pos == n) return true;
    }
}

}  // namespace toritrans::oracle
