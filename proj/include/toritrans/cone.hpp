#pragma once

// Rational polyhedral cones with dual generator/inequality representations,
// face queries, smoothness, and Hilbert bases of pointed cones.
//
// Both representations are stored in canonical form: rays are the primitive
// generators of the extremal rays, sorted; a non-pointed cone additionally
// carries the Hermite basis of its lineality lattice, with extremal rays of
// the pointed quotient lifted to canonical representatives. Inequalities are
// the generators of the dual cone. Values are immutable after construction.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "toritrans/errors.hpp"
#include "toritrans/lattice.hpp"

namespace toritrans {

struct VRepresentation {
    std::vector<IntVector> rays;       // canonical primitive extremal rays
    std::vector<IntVector> lineality;  // Hermite basis of the lineality lattice
};

namespace detail {

// Extremal rays of {x : <a,x> >= 0 for all a in normals} when the normals
// span rank n (the cone is pointed). Incremental double description: start
// from a simplicial subcone cut out by n independent normals, then insert
// the remaining halfspaces one at a time. Adjacency of two rays is decided
// algebraically: the common active normals must have rank n - 2.
inline std::vector<IntVector> pointed_dd_rays(const std::vector<IntVector>& normals,
                                              std::size_t n) {
    // greedy selection of n normals of full rank
    std::vector<std::size_t> base;
    std::vector<IntVector> picked;
    for (std::size_t i = 0; i < normals.size() && picked.size() < n; ++i) {
        picked.push_back(normals[i]);
        if (rank_of(picked, n) == picked.size())
            base.push_back(i);
        else
            picked.pop_back();
    }
    if (picked.size() != n) throw Error("pointed_dd_rays: normals do not span");

    // rays of the simplicial base cone: signed adjugate columns pair to
    // |det| * identity against the base normals
    IntMatrix a0 = IntMatrix::from_rows(picked, n);
    Int det = determinant(a0);
    IntMatrix adj(n, n);
    if (n == 1) {
        adj.at(0, 0) = 1;
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                IntMatrix minor(n - 1, n - 1);
                for (std::size_t r = 0, mr = 0; r < n; ++r) {
                    if (r == j) continue;
                    for (std::size_t c = 0, mc = 0; c < n; ++c) {
                        if (c == i) continue;
                        minor.at(mr, mc) = a0.at(r, c);
                        ++mc;
                    }
                    ++mr;
                }
                Int cof = determinant(minor);
                if ((i + j) % 2 == 1) cof = -cof;
                adj.at(i, j) = cof;
            }
    }
    std::vector<IntVector> rays;
    for (std::size_t j = 0; j < n; ++j) {
        IntVector r = adj.col(j);
        if (det < 0) r = negate(r);
        rays.push_back(primitive_part(r));
    }

    std::vector<IntVector> processed = picked;
    auto active_set = [&](const IntVector& r) {
        std::vector<std::size_t> act;
        for (std::size_t i = 0; i < processed.size(); ++i)
            if (dot(processed[i], r) == 0) act.push_back(i);
        return act;
    };

    for (std::size_t idx = 0; idx < normals.size(); ++idx) {
        bool in_base = std::find(base.begin(), base.end(), idx) != base.end();
        if (in_base) continue;
        const IntVector& a = normals[idx];

        std::vector<IntVector> plus, zero, minus;
        for (const IntVector& r : rays) {
            Int s = dot(a, r);
            if (s > 0)
                plus.push_back(r);
            else if (s < 0)
                minus.push_back(r);
            else
                zero.push_back(r);
        }
        if (minus.empty()) {
            processed.push_back(a);
            continue;
        }

        std::vector<IntVector> next = plus;
        next.insert(next.end(), zero.begin(), zero.end());
        std::set<IntVector> fresh;
        for (const IntVector& p : plus)
            for (const IntVector& m : minus) {
                std::vector<std::size_t> ap = active_set(p), am = active_set(m);
                std::vector<std::size_t> common;
                std::set_intersection(ap.begin(), ap.end(), am.begin(), am.end(),
                                      std::back_inserter(common));
                std::vector<IntVector> sub;
                for (std::size_t i : common) sub.push_back(processed[i]);
                if (n < 2 || rank_of(sub, n) != n - 2) continue;
                IntVector r = add(scale(dot(a, p), m), scale(-dot(a, m), p));
                fresh.insert(primitive_part(r));
            }
        for (const IntVector& r : fresh) next.push_back(r);
        rays = std::move(next);
        processed.push_back(a);
    }

    std::set<IntVector> dedup(rays.begin(), rays.end());
    std::vector<IntVector> out(dedup.begin(), dedup.end());
    canonical_sort(out);
    return out;
}

// Reduce v modulo the lattice spanned by a Hermite-form basis; the canonical
// representative of v + lattice.
inline IntVector reduce_mod_lattice(IntVector v, const std::vector<IntVector>& hnf) {
    for (const IntVector& h : hnf) {
        std::size_t piv = 0;
        while (piv < h.size() && h[piv] == 0) ++piv;
        if (piv == h.size()) continue;
        Int q = floor_div(v[piv], h[piv]);
        if (q != 0) v = sub(v, scale(q, h));
    }
    return v;
}

}  // namespace detail

// V-representation of {x : <a,x> >= 0 for all a in normals}. Lineality is
// split off first; the pointed quotient is handled by double description and
// its rays are lifted to canonical representatives modulo the lineality.
inline VRepresentation halfspaces_to_generators(const std::vector<IntVector>& normals_in,
                                                std::size_t n) {
    std::vector<IntVector> normals;
    for (const IntVector& a : normals_in) {
        if (a.size() != n) throw RankMismatch("halfspaces_to_generators: wrong length");
        if (!is_zero_vector(a)) normals.push_back(a);
    }
    std::vector<IntVector> lin = kernel_basis(normals, n);
    if (lin.size() == n) return {{}, lin};  // no effective constraints
    if (lin.empty()) return {detail::pointed_dd_rays(normals, n), {}};

    // quotient out the lineality: with U L V = (I | 0), right-multiplying by
    // V moves the lineality lattice onto the first d coordinates
    std::size_t d = lin.size();
    SmithDecomposition s = smith_normal_form(IntMatrix::from_rows(lin, n));
    for (const Int& e : s.diagonal())
        if (e != 1) throw Error("halfspaces_to_generators: lineality not saturated");
    IntMatrix vinv = unimodular_inverse(s.v);

    std::vector<IntVector> descended;
    for (const IntVector& a : normals) {
        IntVector ap = vinv.apply(a);  // column action: a' = V^{-1} a
        for (std::size_t i = 0; i < d; ++i)
            if (ap[i] != 0) throw Error("halfspaces_to_generators: descend failed");
        descended.emplace_back(ap.begin() + static_cast<std::ptrdiff_t>(d), ap.end());
    }
    std::vector<IntVector> qrays = detail::pointed_dd_rays(descended, n - d);

    std::vector<IntVector> rays;
    for (const IntVector& q : qrays) {
        IntVector full(d, Int(0));
        full.insert(full.end(), q.begin(), q.end());
        IntVector lifted = row_times_matrix(full, vinv);  // x = x' V^{-1}
        rays.push_back(detail::reduce_mod_lattice(lifted, lin));
    }
    canonical_sort(rays);
    return {rays, lin};
}

class RationalCone {
public:
    RationalCone() : rank_(0) {}

    // Cone spanned by the given vectors (need not be extremal or primitive).
    static RationalCone from_generators(const std::vector<IntVector>& gens,
                                        std::size_t rank) {
        std::vector<IntVector> clean;
        for (const IntVector& g : gens) {
            if (g.size() != rank) throw RankMismatch("from_generators: wrong length");
            if (!is_zero_vector(g)) clean.push_back(primitive_part(g));
        }
        VRepresentation dual = halfspaces_to_generators(clean, rank);
        std::vector<IntVector> ineqs = generating_set(dual);
        VRepresentation self = halfspaces_to_generators(ineqs, rank);
        return RationalCone(rank, std::move(self.rays), std::move(self.lineality),
                            std::move(ineqs));
    }

    static RationalCone from_inequalities(const std::vector<IntVector>& normals,
                                          std::size_t rank) {
        VRepresentation self = halfspaces_to_generators(normals, rank);
        VRepresentation dual = halfspaces_to_generators(generating_set(self), rank);
        return RationalCone(rank, std::move(self.rays), std::move(self.lineality),
                            generating_set(dual));
    }

    static RationalCone zero_cone(std::size_t rank) {
        return from_generators({}, rank);
    }

    std::size_t rank() const { return rank_; }
    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<IntVector>& lineality() const { return lineality_; }
    const std::vector<IntVector>& inequalities() const { return inequalities_; }

    // Generating set of the cone as a point set: extremal rays plus both
    // signs of the lineality basis.
    std::vector<IntVector> generators() const {
        VRepresentation v{rays_, lineality_};
        return generating_set(v);
    }

    bool is_zero() const { return rays_.empty() && lineality_.empty(); }
    bool is_strongly_convex() const { return lineality_.empty(); }

    std::size_t dim() const {
        std::vector<IntVector> all = rays_;
        all.insert(all.end(), lineality_.begin(), lineality_.end());
        return rank_of(all, rank_);
    }

    bool contains_point(const IntVector& v) const {
        if (v.size() != rank_) throw RankMismatch("contains_point: wrong length");
        for (const IntVector& h : inequalities_)
            if (dot(h, v) < 0) return false;
        return true;
    }

    bool contains_cone(const RationalCone& other) const {
        for (const IntVector& g : other.generators())
            if (!contains_point(g)) return false;
        return true;
    }

    RationalCone dual() const {
        VRepresentation d = halfspaces_to_generators(generators(), rank_);
        return RationalCone(rank_, std::move(d.rays), std::move(d.lineality),
                            generators());
    }

    // All faces, from {0} up to the cone itself, ordered by (dim, rays).
    // Faces of a pointed cone are spanned by the extremal rays annihilated
    // by a subset of the defining inequalities.
    std::vector<RationalCone> faces() const {
        if (!is_strongly_convex())
            throw UnsupportedCone("faces: cone is not strongly convex");
        std::set<std::vector<std::size_t>> seen;
        std::size_t m = inequalities_.size();
        if (m > 20) throw UnsupportedCone("faces: too many facets");
        for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
            std::vector<std::size_t> live;
            for (std::size_t r = 0; r < rays_.size(); ++r) {
                bool ok = true;
                for (std::size_t i = 0; i < m && ok; ++i)
                    if (mask & (std::size_t(1) << i))
                        if (dot(inequalities_[i], rays_[r]) != 0) ok = false;
                if (ok) live.push_back(r);
            }
            seen.insert(live);
        }
        std::vector<RationalCone> out;
        for (const std::vector<std::size_t>& live : seen) {
            std::vector<IntVector> gens;
            for (std::size_t r : live) gens.push_back(rays_[r]);
            out.push_back(from_generators(gens, rank_));
        }
        std::sort(out.begin(), out.end(), [](const RationalCone& a, const RationalCone& b) {
            if (a.dim() != b.dim()) return a.dim() < b.dim();
            return a.rays() < b.rays();
        });
        return out;
    }

    bool operator==(const RationalCone& o) const {
        return rank_ == o.rank_ && rays_ == o.rays_ && lineality_ == o.lineality_;
    }
    bool operator!=(const RationalCone& o) const { return !(*this == o); }
    bool operator<(const RationalCone& o) const {
        if (rank_ != o.rank_) return rank_ < o.rank_;
        if (rays_ != o.rays_) return rays_ < o.rays_;
        return lineality_ < o.lineality_;
    }

    static std::vector<IntVector> generating_set(const VRepresentation& v) {
        std::vector<IntVector> g = v.rays;
        for (const IntVector& l : v.lineality) {
            g.push_back(l);
            g.push_back(negate(l));
        }
        canonical_sort(g);
        return g;
    }

private:
    RationalCone(std::size_t rank, std::vector<IntVector> rays,
                 std::vector<IntVector> lineality, std::vector<IntVector> ineqs)
        : rank_(rank),
          rays_(std::move(rays)),
          lineality_(std::move(lineality)),
          inequalities_(std::move(ineqs)) {
        canonical_sort(inequalities_);
    }

    std::size_t rank_;
    std::vector<IntVector> rays_;
    std::vector<IntVector> lineality_;
    std::vector<IntVector> inequalities_;
};

inline RationalCone dual_cone(const RationalCone& c) { return c.dual(); }

inline bool is_strongly_convex(const RationalCone& c) { return c.is_strongly_convex(); }

inline bool contains_point(const RationalCone& c, const IntVector& v) {
    return c.contains_point(v);
}

inline std::vector<RationalCone> faces(const RationalCone& c) { return c.faces(); }

// tau is a face of sigma iff tau is contained in sigma and equals the
// smallest face of sigma containing it (the intersection of sigma with the
// supporting hyperplanes active on tau).
inline bool is_face_of(const RationalCone& tau, const RationalCone& sigma) {
    if (tau.rank() != sigma.rank()) throw RankMismatch("is_face_of: rank mismatch");
    if (!sigma.contains_cone(tau)) return false;
    std::vector<IntVector> tau_gens = tau.generators();
    std::vector<IntVector> active;
    for (const IntVector& h : sigma.inequalities()) {
        bool all_zero = true;
        for (const IntVector& g : tau_gens)
            if (dot(h, g) != 0) {
                all_zero = false;
                break;
            }
        if (all_zero) active.push_back(h);
    }
    std::vector<IntVector> face_gens;
    for (const IntVector& r : sigma.rays()) {
        bool on_face = true;
        for (const IntVector& h : active)
            if (dot(h, r) != 0) {
                on_face = false;
                break;
            }
        if (on_face) face_gens.push_back(r);
    }
    for (const IntVector& l : sigma.lineality()) {
        face_gens.push_back(l);
        face_gens.push_back(negate(l));
    }
    return RationalCone::from_generators(face_gens, sigma.rank()) == tau;
}

// Smooth means simplicial with ray generators extending to a Z-basis; the
// affine chart is then a product of an affine space and a torus.
inline bool is_smooth_cone(const RationalCone& c) {
    if (!c.is_strongly_convex())
        throw UnsupportedCone("is_smooth_cone: cone is not strongly convex");
    if (c.rays().size() != c.dim()) return false;
    return extends_to_basis(c.rays(), c.rank());
}

namespace detail {

// Ray index sets of a triangulation of the cone, fanning out from the first
// extremal ray over the facets that do not contain it.
inline std::vector<std::vector<IntVector>> triangulate(const RationalCone& c) {
    if (c.rays().size() == c.dim()) return {c.rays()};
    std::vector<std::vector<IntVector>> out;
    const IntVector& apex = c.rays().front();
    std::size_t d = c.dim();
    for (const RationalCone& f : c.faces()) {
        if (f.dim() != d - 1) continue;
        if (std::find(f.rays().begin(), f.rays().end(), apex) != f.rays().end()) continue;
        for (std::vector<IntVector> simplex : triangulate(f)) {
            simplex.push_back(apex);
            out.push_back(std::move(simplex));
        }
    }
    return out;
}

// Lattice points of the half-open parallelepiped { sum l_i g_i : 0 <= l_i < 1 }
// of a full-rank simplicial generator matrix, one per coset of its row
// lattice: coset representatives are found through the Smith form and then
// translated into the fundamental domain with floor coordinates.
inline std::vector<IntVector> parallelepiped_points(const std::vector<IntVector>& gens,
                                                    std::size_t n) {
    IntMatrix g = IntMatrix::from_rows(gens, n);
    Int det_g = determinant(g);
    if (det_g == 0) throw Error("parallelepiped_points: generators not independent");
    SmithDecomposition s = smith_normal_form(g);
    IntMatrix vinv = unimodular_inverse(s.v);

    std::vector<Int> d = s.diagonal();
    std::vector<IntVector> pts;
    IntVector k(n, Int(0));
    while (true) {
        IntVector x = row_times_matrix(k, vinv);
        // push x into the fundamental parallelepiped: subtract floor(x G^-1) G
        IntVector lam_num(n);
        for (std::size_t i = 0; i < n; ++i) {
            IntMatrix gi = g;
            for (std::size_t j = 0; j < n; ++j) gi.at(i, j) = x[j];
            lam_num[i] = determinant(gi);
        }
        IntVector red = x;
        for (std::size_t i = 0; i < n; ++i) {
            Int q = floor_div(lam_num[i], det_g);
            if (q != 0) red = sub(red, scale(q, gens[i]));
        }
        pts.push_back(red);

        std::size_t pos = 0;
        while (pos < n) {
            ++k[pos];
            if (k[pos] < d[pos]) break;
            k[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    std::set<IntVector> dedup(pts.begin(), pts.end());
    return std::vector<IntVector>(dedup.begin(), dedup.end());
}

}  // namespace detail

// The unique minimal generating set of the semigroup of lattice points of a
// pointed cone. Simplicial pieces of a triangulation contribute their
// parallelepiped points; irreducibility is then checked against the full
// candidate set.
inline std::vector<IntVector> hilbert_basis(const RationalCone& c,
                                            std::size_t rank_limit = 4) {
    if (!c.is_strongly_convex())
        throw UnsupportedCone("hilbert_basis: cone is not strongly convex");
    if (c.rank() > rank_limit)
        throw UnsupportedRank("hilbert_basis: ambient rank exceeds the limit");

    std::size_t d = c.dim();
    if (d == 0) return {};

    if (d < c.rank()) {
        // work inside the saturated lattice of the cone's span
        std::vector<IntVector> basis = saturation_basis(c.rays(), c.rank());
        std::vector<IntVector> sub_gens;
        for (const IntVector& r : c.rays()) {
            auto coords = express_in_basis(r, basis, c.rank());
            if (!coords) throw Error("hilbert_basis: ray escapes its saturation");
            sub_gens.push_back(*coords);
        }
        RationalCone sub = RationalCone::from_generators(sub_gens, d);
        std::vector<IntVector> out;
        for (const IntVector& h : hilbert_basis(sub, rank_limit)) {
            IntVector v(c.rank(), Int(0));
            for (std::size_t i = 0; i < d; ++i) v = add(v, scale(h[i], basis[i]));
            out.push_back(v);
        }
        canonical_sort(out);
        return out;
    }

    std::set<IntVector> candidates(c.rays().begin(), c.rays().end());
    for (const std::vector<IntVector>& simplex : detail::triangulate(c))
        for (const IntVector& p : detail::parallelepiped_points(simplex, c.rank()))
            if (!is_zero_vector(p)) candidates.insert(p);

    std::vector<IntVector> pool(candidates.begin(), candidates.end());
    std::vector<IntVector> basis;
    for (const IntVector& h : pool) {
        bool reducible = false;
        for (const IntVector& s : pool) {
            IntVector rest = sub(h, s);
            if (is_zero_vector(rest)) continue;
            if (c.contains_point(rest)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.push_back(h);
    }
    canonical_sort(basis);
    return basis;
}

}  // namespace toritrans
