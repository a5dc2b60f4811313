#pragma once

// Fans of strongly convex rational cones: validation, completeness,
// quasi-affineness via the envelope cone, degeneracy splitting, smooth locus,
// product-of-projective-spaces detection, orbit inventory, toric-morphism
// compatibility, and the cone of global functions.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "toritrans/cone.hpp"
#include "toritrans/errors.hpp"
#include "toritrans/lattice.hpp"

namespace toritrans {

class Fan;

struct SplitResult {
    std::size_t torus_rank;  // k with X = X' x (K^x)^k
    Fan reduced;             // the fan of X' in the saturated ray span
};

struct OrbitEntry {
    RationalCone cone;
    std::size_t orbit_dim;
};

class Fan {
public:
    // Builds a fan from rays (normalized to primitive here) and the index
    // sets of its inclusion-maximal cones. Invariant violations are recorded,
    // not thrown; structural nonsense (bad index, duplicate ray) throws.
    static Fan make(std::size_t rank, std::vector<IntVector> rays,
                    std::vector<std::vector<std::size_t>> max_cones) {
        Fan f;
        f.rank_ = rank;
        for (IntVector& r : rays) {
            if (r.size() != rank) throw RankMismatch("fan: ray length != rank");
            if (is_zero_vector(r)) throw SchemaError("fan: zero ray");
            r = primitive_part(r);
        }
        // canonical ray order, with the index remap applied to the cones
        std::vector<std::size_t> order(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return lex_less(rays[a], rays[b]);
        });
        std::vector<std::size_t> where(rays.size());
        for (std::size_t pos = 0; pos < order.size(); ++pos) where[order[pos]] = pos;
        for (std::size_t pos = 0; pos < order.size(); ++pos)
            f.rays_.push_back(rays[order[pos]]);
        for (std::size_t i = 0; i + 1 < f.rays_.size(); ++i)
            if (f.rays_[i] == f.rays_[i + 1])
                throw SchemaError("fan: duplicate ray " + to_string(f.rays_[i]));

        std::set<std::vector<std::size_t>> seen;
        for (const std::vector<std::size_t>& mc : max_cones) {
            std::vector<std::size_t> ids;
            for (std::size_t idx : mc) {
                if (idx >= f.rays_.size())
                    throw SchemaError("fan: ray index out of range");
                ids.push_back(where[idx]);
            }
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            if (!seen.insert(ids).second) {
                f.violations_.push_back("duplicate max cone");
                continue;
            }
            f.max_cones_.push_back(std::move(ids));
        }
        std::sort(f.max_cones_.begin(), f.max_cones_.end());

        for (const std::vector<std::size_t>& mc : f.max_cones_) {
            std::vector<IntVector> gens;
            for (std::size_t i : mc) gens.push_back(f.rays_[i]);
            f.cones_.push_back(RationalCone::from_generators(gens, rank));
        }
        f.validate_into_violations();
        return f;
    }

    std::size_t rank() const { return rank_; }
    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<std::vector<std::size_t>>& max_cone_indices() const {
        return max_cones_;
    }
    const std::vector<RationalCone>& max_cones() const { return cones_; }

    bool valid() const { return violations_.empty(); }
    const std::vector<std::string>& validate() const { return violations_; }

    // Face closure as ray index sets; the zero cone is the empty set.
    std::vector<std::vector<std::size_t>> cone_index_sets() const {
        require_valid();
        std::set<std::vector<std::size_t>> out;
        out.insert({});
        for (std::size_t c = 0; c < cones_.size(); ++c)
            for (const RationalCone& face : cones_[c].faces())
                out.insert(ray_indices(face.rays()));
        return {out.begin(), out.end()};
    }

    RationalCone cone_from_indices(const std::vector<std::size_t>& ids) const {
        std::vector<IntVector> gens;
        for (std::size_t i : ids) gens.push_back(rays_[i]);
        return RationalCone::from_generators(gens, rank_);
    }

    // Complete iff all max cones are full-dimensional and every wall (facet
    // of a max cone) is shared by exactly two of them.
    bool is_complete() const {
        require_valid();
        if (cones_.empty()) return false;
        std::map<std::vector<std::size_t>, int> wall_count;
        for (const RationalCone& c : cones_) {
            if (c.dim() != rank_) return false;
            for (const IntVector& h : c.inequalities()) {
                std::vector<std::size_t> wall;
                for (std::size_t i = 0; i < c.rays().size(); ++i)
                    if (dot(h, c.rays()[i]) == 0) wall.push_back(ray_index(c.rays()[i]));
                std::sort(wall.begin(), wall.end());
                ++wall_count[wall];
            }
        }
        for (const auto& [wall, count] : wall_count)
            if (count != 2) return false;
        return true;
    }

    // The envelope test for quasi-affineness: with omega the cone over all
    // rays, the fan describes an open subset of the affine chart of omega
    // with small complement precisely when omega is strongly convex and every
    // cone of the fan is a face of omega. Both directions of this criterion
    // are used as the definition of quasi-affineness throughout.
    std::pair<bool, std::optional<RationalCone>> quasi_affine_envelope() const {
        require_valid();
        RationalCone omega = RationalCone::from_generators(rays_, rank_);
        if (!omega.is_strongly_convex()) return {false, std::nullopt};
        for (const RationalCone& c : cones_)
            if (!is_face_of(c, omega)) return {false, std::nullopt};
        return {true, omega};
    }

    // Splits off the torus factor: k = rank - dim(span of rays); the reduced
    // fan lives in the saturated lattice of the ray span.
    SplitResult degenerate_split() const {
        require_valid();
        std::vector<IntVector> basis = saturation_basis(rays_, rank_);
        std::size_t r = basis.size();
        if (r == rank_) return {0, *this};
        std::vector<IntVector> reduced_rays;
        for (const IntVector& ray : rays_) {
            auto coords = express_in_basis(ray, basis, rank_);
            if (!coords) throw Error("degenerate_split: ray escapes saturation");
            reduced_rays.push_back(*coords);
        }
        return {rank_ - r, Fan::make(r, reduced_rays, max_cones_)};
    }

    bool is_smooth() const {
        require_valid();
        for (const RationalCone& c : cones_)
            if (!is_smooth_cone(c)) return false;
        return true;
    }

    // Subfan of all smooth cones; its maximal cones are the inclusion-maximal
    // smooth faces. Rays are always smooth, so the ray set is preserved.
    Fan smooth_locus_subfan() const {
        require_valid();
        std::vector<std::vector<std::size_t>> smooth;
        for (const std::vector<std::size_t>& ids : cone_index_sets())
            if (is_smooth_cone(cone_from_indices(ids))) smooth.push_back(ids);
        std::vector<std::vector<std::size_t>> maximal;
        for (const std::vector<std::size_t>& a : smooth) {
            bool contained = false;
            for (const std::vector<std::size_t>& b : smooth) {
                if (a == b) continue;
                if (std::includes(b.begin(), b.end(), a.begin(), a.end())) {
                    contained = true;
                    break;
                }
            }
            if (!contained && !a.empty()) maximal.push_back(a);
        }
        return Fan::make(rank_, rays_, maximal);
    }

    // Recognizes fans of products of projective spaces: rays split into
    // minimal zero-sum groups (one per factor), each group of size one more
    // than the rank of its span, the saturated spans sum to the full lattice,
    // and the maximal cones are exactly the products of "all rays of a group
    // but one". Returns the sorted factor dimensions.
    std::optional<std::vector<std::size_t>> detect_projective_product() const {
        require_valid();
        if (!is_complete() || !is_smooth()) return std::nullopt;
        std::size_t m = rays_.size();
        if (m == 0 || m > 20) return std::nullopt;

        IntVector total(rank_, Int(0));
        for (const IntVector& r : rays_) total = add(total, r);
        if (!is_zero_vector(total)) return std::nullopt;

        std::vector<std::size_t> remaining(m);
        for (std::size_t i = 0; i < m; ++i) remaining[i] = i;
        std::vector<std::vector<std::size_t>> groups;
        while (!remaining.empty()) {
            std::size_t u = remaining.size();
            // zero-sum subsets of the remaining rays containing remaining[0]
            std::vector<std::vector<std::size_t>> zs;
            for (std::size_t mask = 1; mask < (std::size_t(1) << u); ++mask) {
                if (!(mask & 1)) continue;
                IntVector s(rank_, Int(0));
                std::vector<std::size_t> ids;
                for (std::size_t i = 0; i < u; ++i)
                    if (mask & (std::size_t(1) << i)) {
                        s = add(s, rays_[remaining[i]]);
                        ids.push_back(remaining[i]);
                    }
                if (is_zero_vector(s)) zs.push_back(ids);
            }
            std::vector<std::vector<std::size_t>> minimal;
            for (const auto& a : zs) {
                bool has_proper_subset = false;
                for (const auto& b : zs)
                    if (b.size() < a.size() &&
                        std::includes(a.begin(), a.end(), b.begin(), b.end())) {
                        has_proper_subset = true;
                        break;
                    }
                if (!has_proper_subset) minimal.push_back(a);
            }
            if (minimal.size() != 1) return std::nullopt;
            const std::vector<std::size_t>& g = minimal.front();
            std::vector<std::size_t> rest;
            for (std::size_t i : remaining)
                if (std::find(g.begin(), g.end(), i) == g.end()) rest.push_back(i);
            groups.push_back(g);
            remaining = std::move(rest);
        }

        std::vector<IntVector> joint_basis;
        std::vector<std::size_t> dims;
        for (const std::vector<std::size_t>& g : groups) {
            std::vector<IntVector> members;
            for (std::size_t i : g) members.push_back(rays_[i]);
            std::size_t span = rank_of(members, rank_);
            if (g.size() != span + 1) return std::nullopt;
            dims.push_back(span);
            for (const IntVector& b : saturation_basis(members, rank_))
                joint_basis.push_back(b);
        }
        if (joint_basis.size() != rank_) return std::nullopt;
        Int det = determinant(IntMatrix::from_rows(joint_basis, rank_));
        if (det != 1 && det != -1) return std::nullopt;

        // expected maximal cones: drop one ray from each group
        std::vector<std::vector<std::size_t>> expected{{}};
        for (const std::vector<std::size_t>& g : groups) {
            std::vector<std::vector<std::size_t>> next;
            for (std::size_t drop : g)
                for (const std::vector<std::size_t>& partial : expected) {
                    std::vector<std::size_t> ext = partial;
                    for (std::size_t i : g)
                        if (i != drop) ext.push_back(i);
                    next.push_back(std::move(ext));
                }
            expected = std::move(next);
        }
        for (std::vector<std::size_t>& e : expected) std::sort(e.begin(), e.end());
        std::sort(expected.begin(), expected.end());
        if (expected != max_cones_) return std::nullopt;

        std::sort(dims.begin(), dims.end());
        return dims;
    }

    std::vector<OrbitEntry> orbit_inventory() const {
        require_valid();
        std::vector<OrbitEntry> out;
        for (const std::vector<std::size_t>& ids : cone_index_sets()) {
            RationalCone c = cone_from_indices(ids);
            std::size_t d = c.dim();
            out.push_back({std::move(c), rank_ - d});
        }
        return out;
    }

    // The cone whose lattice points index a basis of the global functions:
    // the dual of the cone over all rays. Zero iff the only global functions
    // are constants.
    RationalCone global_functions_cone() const {
        require_valid();
        return RationalCone::from_generators(rays_, rank_).dual();
    }

private:
    void require_valid() const {
        if (!valid()) throw InvalidFan("fan invariants are violated");
    }

    std::size_t ray_index(const IntVector& r) const {
        auto it = std::lower_bound(rays_.begin(), rays_.end(), r, lex_less);
        if (it == rays_.end() || *it != r) throw Error("fan: unknown ray");
        return static_cast<std::size_t>(it - rays_.begin());
    }

    std::vector<std::size_t> ray_indices(const std::vector<IntVector>& rs) const {
        std::vector<std::size_t> ids;
        for (const IntVector& r : rs) ids.push_back(ray_index(r));
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    // Smallest-face test: sub (a subset of the cone's extremal rays) spans a
    // face iff the rays annihilated by all inequalities active on sub are
    // exactly sub.
    static bool spans_face(const std::vector<IntVector>& sub, const RationalCone& c) {
        std::vector<IntVector> active;
        for (const IntVector& h : c.inequalities()) {
            bool zero_on_sub = true;
            for (const IntVector& s : sub)
                if (dot(h, s) != 0) {
                    zero_on_sub = false;
                    break;
                }
            if (zero_on_sub) active.push_back(h);
        }
        std::vector<IntVector> hull;
        for (const IntVector& r : c.rays()) {
            bool on = true;
            for (const IntVector& h : active)
                if (dot(h, r) != 0) {
                    on = false;
                    break;
                }
            if (on) hull.push_back(r);
        }
        return hull == sub;
    }

    void validate_into_violations() {
        bool per_cone_ok = true;
        for (std::size_t c = 0; c < cones_.size(); ++c) {
            std::ostringstream name;
            name << "max cone #" << c;
            if (!cones_[c].is_strongly_convex()) {
                violations_.push_back(name.str() + " is not strongly convex");
                per_cone_ok = false;
                continue;
            }
            std::vector<IntVector> listed;
            for (std::size_t i : max_cones_[c]) listed.push_back(rays_[i]);
            canonical_sort(listed);
            if (cones_[c].rays() != listed) {
                violations_.push_back(name.str() +
                                      ": listed rays are not its extremal rays");
                per_cone_ok = false;
            }
        }

        std::vector<bool> used(rays_.size(), false);
        for (const std::vector<std::size_t>& mc : max_cones_)
            for (std::size_t i : mc) used[i] = true;
        for (std::size_t i = 0; i < rays_.size(); ++i)
            if (!used[i])
                violations_.push_back("ray " + to_string(rays_[i]) +
                                      " lies in no max cone");

        if (!per_cone_ok || !violations_.empty()) return;

        for (std::size_t i = 0; i < cones_.size(); ++i)
            for (std::size_t j = i + 1; j < cones_.size(); ++j) {
                std::ostringstream pair_name;
                pair_name << "max cones #" << i << " and #" << j;
                if (cones_[j].contains_cone(cones_[i]) ||
                    cones_[i].contains_cone(cones_[j])) {
                    violations_.push_back(pair_name.str() +
                                          ": one is contained in the other");
                    continue;
                }
                std::vector<IntVector> normals = cones_[i].inequalities();
                const std::vector<IntVector>& nj = cones_[j].inequalities();
                normals.insert(normals.end(), nj.begin(), nj.end());
                VRepresentation inter = halfspaces_to_generators(normals, rank_);
                std::vector<IntVector> common;
                std::set_intersection(cones_[i].rays().begin(), cones_[i].rays().end(),
                                      cones_[j].rays().begin(), cones_[j].rays().end(),
                                      std::back_inserter(common), lex_less);
                if (!inter.lineality.empty() || inter.rays != common ||
                    !spans_face(common, cones_[i]) || !spans_face(common, cones_[j]))
                    violations_.push_back(pair_name.str() +
                                          ": intersection is not a face of both");
            }
    }

    std::size_t rank_ = 0;
    std::vector<IntVector> rays_;
    std::vector<std::vector<std::size_t>> max_cones_;
    std::vector<RationalCone> cones_;
    std::vector<std::string> violations_;
};

// phi maps the lattice of f into the lattice of g (rows(phi) == rank(g),
// cols(phi) == rank(f)); true iff the image of every cone of f lands inside
// some cone of g.
inline bool is_fan_morphism(const IntMatrix& phi, const Fan& f, const Fan& g) {
    if (phi.cols() != f.rank() || phi.rows() != g.rank())
        throw RankMismatch("is_fan_morphism: matrix shape mismatch");
    if (!f.valid() || !g.valid()) throw InvalidFan("is_fan_morphism: invalid fan");
    auto lands_in_some_cone = [&](const RationalCone& c) {
        std::vector<IntVector> images;
        for (const IntVector& r : c.rays()) images.push_back(phi.apply(r));
        if (images.empty()) return true;  // the zero cone maps anywhere
        for (const RationalCone& target : g.max_cones()) {
            bool all_in = true;
            for (const IntVector& im : images)
                if (!target.contains_point(im)) {
                    all_in = false;
                    break;
                }
            if (all_in) return true;
        }
        // also allow the zero cone as a target when g has no max cones
        if (g.max_cones().empty()) {
            for (const IntVector& im : images)
                if (!is_zero_vector(im)) return false;
            return true;
        }
        return false;
    };
    if (f.max_cones().empty()) return true;
    for (const RationalCone& c : f.max_cones())
        if (!lands_in_some_cone(c)) return false;
    return true;
}

}  // namespace toritrans
