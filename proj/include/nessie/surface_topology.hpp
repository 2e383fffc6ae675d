#pragma once

// Combinatorial surface topology from edge-identified polygons: Euler
// characteristic, genus and boundary counts via corner-cycle tracing,
// plus builders for the truncated pieces of both monster models and a
// face-adjacency end counter.  Everything here is exact integer
// arithmetic; no floating point enters the topology computations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monster_group.hpp"
#include "slit_plane.hpp"

namespace nessie {

struct MalformedWord : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotStabilized : std::runtime_error {
    using std::runtime_error::runtime_error;
};

//! One occurrence of a labeled, oriented edge in a polygon boundary word.
struct EdgeRef {
    int label = 0;
    bool reversed = false;
};

//! A polygon with some boundary edges glued in pairs.  A label may appear
//! at most twice; paired occurrences must carry opposite orientation
//! flags (orientable gluing).  Labels appearing once remain boundary.
struct IdentifiedPolygon {
    std::vector<EdgeRef> edges;
};

//! Parse a boundary word like "a b a' b'" (prime marks the reversed
//! orientation); letters map to labels in order of first appearance.
inline IdentifiedPolygon polygon_from_word(const std::string& word) {
    IdentifiedPolygon poly;
    std::map<std::string, int> labels;
    std::istringstream in(word);
    std::string tok;
    while (in >> tok) {
        bool rev = false;
        if (tok.size() > 1 && tok.back() == '\'') {
            rev = true;
            tok.pop_back();
        }
        auto [it, inserted] = labels.try_emplace(tok, static_cast<int>(labels.size()));
        poly.edges.push_back({it->second, rev});
    }
    return poly;
}

struct CellComplex {
    long long vertices = 0;
    long long edges = 0;
    long long faces = 1;
    std::vector<std::vector<int>> vertex_cycles;  // polygon corners per vertex class
    long long euler_characteristic() const { return vertices - edges + faces; }
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int x, int y) { parent[static_cast<std::size_t>(find(x))] = find(y); }
};

//! partner[i] = index of the occurrence glued to occurrence i, or -1.
inline std::vector<int> gluing_partners(const IdentifiedPolygon& p) {
    std::map<int, std::vector<int>> by_label;
    for (std::size_t i = 0; i < p.edges.size(); ++i)
        by_label[p.edges[i].label].push_back(static_cast<int>(i));
    std::vector<int> partner(p.edges.size(), -1);
    for (const auto& [label, occ] : by_label) {
        if (occ.size() > 2)
            throw MalformedWord("label " + std::to_string(label) + " appears more than twice");
        if (occ.size() == 2) {
            if (p.edges[static_cast<std::size_t>(occ[0])].reversed ==
                p.edges[static_cast<std::size_t>(occ[1])].reversed)
                throw MalformedWord("label " + std::to_string(label) +
                                    " glued with matching orientations (non-orientable)");
            partner[static_cast<std::size_t>(occ[0])] = occ[1];
            partner[static_cast<std::size_t>(occ[1])] = occ[0];
        }
    }
    return partner;
}

}  // namespace detail

//! Count cells of the quotient complex.  Corner i sits between edge
//! occurrences i-1 and i.  Gluing occurrence i (forward) to occurrence j
//! (backward) matches label tails and heads: corner i ~ corner j+1 and
//! corner i+1 ~ corner j.  Vertices are the corner classes.
inline CellComplex complex_from_polygon(const IdentifiedPolygon& p) {
    const int n = static_cast<int>(p.edges.size());
    if (n == 0) throw MalformedWord("empty boundary word");
    const auto partner = detail::gluing_partners(p);

    detail::UnionFind uf(n);
    for (int i = 0; i < n; ++i) {
        const int j = partner[static_cast<std::size_t>(i)];
        if (j < 0 || j < i) continue;  // handle each glued pair once
        uf.unite(i, (j + 1) % n);
        uf.unite((i + 1) % n, j);
    }

    std::map<int, std::vector<int>> cycles;
    for (int i = 0; i < n; ++i) cycles[uf.find(i)].push_back(i);

    CellComplex out;
    out.vertices = static_cast<long long>(cycles.size());
    std::set<int> labels;
    for (const auto& e : p.edges) labels.insert(e.label);
    out.edges = static_cast<long long>(labels.size());
    out.faces = 1;
    for (auto& [root, corners] : cycles) out.vertex_cycles.push_back(corners);
    return out;
}

struct TopologySummary {
    long long euler_characteristic = 0;
    int genus = 0;
    int boundary_components = 0;
    bool orientable = true;
};

inline bool operator==(const TopologySummary& a, const TopologySummary& b) {
    return a.euler_characteristic == b.euler_characteristic && a.genus == b.genus &&
           a.boundary_components == b.boundary_components && a.orientable == b.orientable;
}

//! Euler characteristic, boundary count and genus of the glued surface.
//! Boundary circles are traced through the gluings: the unpaired edge
//! following occurrence i starts at the next occurrence around i's head
//! corner, hopping across glued pairs.
inline TopologySummary topology_summary(const IdentifiedPolygon& p) {
    const auto complex = complex_from_polygon(p);
    const int n = static_cast<int>(p.edges.size());
    const auto partner = detail::gluing_partners(p);

    const auto next_boundary = [&](int i) {
        int k = (i + 1) % n;
        while (partner[static_cast<std::size_t>(k)] >= 0)
            k = (partner[static_cast<std::size_t>(k)] + 1) % n;
        return k;
    };

    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    int boundary = 0;
    for (int i = 0; i < n; ++i) {
        if (partner[static_cast<std::size_t>(i)] >= 0 || seen[static_cast<std::size_t>(i)])
            continue;
        ++boundary;
        int k = i;
        do {
            seen[static_cast<std::size_t>(k)] = true;
            k = next_boundary(k);
        } while (k != i);
    }

    TopologySummary out;
    out.euler_characteristic = complex.euler_characteristic();
    out.boundary_components = boundary;
    out.orientable = true;  // gluing_partners rejects same-flag pairs
    const long long two_g = 2 - out.euler_characteristic - boundary;
    if (two_g < 0 || two_g % 2 != 0)
        throw MalformedWord("inconsistent Euler characteristic / boundary count");
    out.genus = static_cast<int>(two_g / 2);
    return out;
}

// ----------------------------------------------------------- truncations

struct TruncationSpec {
    enum class Model : std::uint8_t { Flat, Hyperbolic };

    Model model = Model::Flat;
    int k = 1;                 // Flat: number of glued slit pairs
    long long m = 0;           // Hyperbolic: strip index
    double disk_radius = 0.0;  // Flat: 0 means 8k + 4; must exceed 8k
    double cap_height = 3.0;   // Hyperbolic: horizontal truncation height

    static TruncationSpec flat(int k, double radius = 0.0) {
        TruncationSpec s;
        s.model = Model::Flat;
        s.k = k;
        s.disk_radius = radius;
        return s;
    }
    static TruncationSpec hyperbolic(long long m, double cap_height = 3.0) {
        TruncationSpec s;
        s.model = Model::Hyperbolic;
        s.m = m;
        s.cap_height = cap_height;
        return s;
    }
};

//! Boundary word of a disk containing the first 2k slits, cut open along
//! the gaps between consecutive slits (and from the rim to the first
//! slit) so the cut region is a single polygon.  Walking its boundary:
//! outer circle, then the upper sides of the gap cuts and slit lips west
//! to east, around the last slit tip, and back along the lower sides.
//! Gap cuts re-glue to themselves; slit lips glue across each pair with
//! a translation, which preserves the arrow direction, so each pair
//! appears with opposite flags.
inline IdentifiedPolygon flat_truncation_polygon(int k) {
    if (k < 1) throw std::invalid_argument("flat_truncation_polygon: k must be >= 1");
    const int slit_count = 2 * k;
    // Labels: 0 = outer rim; 1..2k = gap cuts; 2k+1 .. 4k = slit labels,
    // where slit label s_j is shared by the upper lip of slit j and the
    // lower lip of its partner.
    const auto gap = [&](int j) { return 1 + j; };
    const auto lip = [&](int j) { return slit_count + 1 + j; };  // label of upper lip of slit j
    const auto partner = [&](int j) { return j ^ 1; };

    IdentifiedPolygon poly;
    poly.edges.push_back({0, false});
    for (int j = 0; j < slit_count; ++j) {
        poly.edges.push_back({gap(j), false});
        poly.edges.push_back({lip(j), false});  // upper lip, traversed east
    }
    for (int j = slit_count - 1; j >= 0; --j) {
        // Lower lip of slit j carries the label of its partner's upper
        // lip; traversed west, i.e. against the arrow.
        poly.edges.push_back({lip(partner(j)), true});
        poly.edges.push_back({gap(j), true});
    }
    return poly;
}

//! Boundary word of the strip piece around index m in the hyperbolic
//! model: bottom intervals alternate with the four circle arcs, then the
//! right strip edge, a horizontal cap, and the left strip edge.  The two
//! pairing maps are applied to the arc feet to decide the glued arrows'
//! relative direction; both reverse it, giving the interleaved
//! a b a' b' pattern that makes the piece a torus with one hole.
inline IdentifiedPolygon hyperbolic_truncation_polygon(long long m, double cap_height = 3.0,
                                                       double tol = kGeomTol) {
    if (!(cap_height > 1.0))
        throw std::invalid_argument("hyperbolic_truncation_polygon: cap must clear the circles");

    struct Arc {
        long long center;
        int label;
    };
    const Arc arcs[4] = {{16 * m, 1}, {16 * m + 4, 2}, {16 * m + 8, 1}, {16 * m + 12, 2}};
    const MobiusMap maps[2] = {f_generator(m), g_generator(m, GVariant::Corrected)};

    // The pairing map must carry each source circle onto its partner;
    // the image of the west foot tells whether the traversal direction
    // survives the gluing.
    bool reversed_by_map[2];
    for (int fam = 0; fam < 2; ++fam) {
        const double src = static_cast<double>(arcs[fam].center);
        const double dst = static_cast<double>(arcs[fam + 2].center);
        const auto image = circle_image(maps[fam], GeneralizedCircle::circle(src, 1.0), tol);
        if (!image.is_circle() || std::abs(image.center - dst) > tol ||
            std::abs(image.radius - 1.0) > tol)
            throw MalformedWord("pairing map does not carry the strip arc onto its partner");
        const double west_image = maps[fam].apply_boundary(src - 1.0);
        if (std::abs(west_image - (dst + 1.0)) <= tol)
            reversed_by_map[fam] = true;  // west foot -> east foot
        else if (std::abs(west_image - (dst - 1.0)) <= tol)
            reversed_by_map[fam] = false;
        else
            throw MalformedWord("pairing map does not match the arc feet");
    }

    // Labels 1, 2 are the glued arc pairs; 3.. are the unpaired pieces:
    // five bottom intervals, right edge, top cap, left edge.
    IdentifiedPolygon poly;
    int free_label = 3;
    for (int i = 0; i < 4; ++i) {
        poly.edges.push_back({free_label++, false});  // bottom interval before arc i
        const bool second = i >= 2;
        poly.edges.push_back({arcs[i].label, second && reversed_by_map[i % 2]});
    }
    poly.edges.push_back({free_label++, false});  // bottom interval after the last arc
    poly.edges.push_back({free_label++, false});  // right strip edge
    poly.edges.push_back({free_label++, false});  // cap at Im = cap_height
    poly.edges.push_back({free_label++, false});  // left strip edge
    return poly;
}

//! Topology of a truncated piece of either model.  A flat truncation
//! with k pairs is a genus-k surface with one boundary circle; every
//! hyperbolic strip piece is a torus with one hole.
inline TopologySummary truncation_topology(const TruncationSpec& spec) {
    if (spec.model == TruncationSpec::Model::Flat) {
        if (spec.k < 1) throw std::invalid_argument("truncation_topology: k must be >= 1");
        const double radius = spec.disk_radius == 0.0 ? 8.0 * spec.k + 4.0 : spec.disk_radius;
        if (!(radius > 8.0 * spec.k))
            throw std::invalid_argument("truncation_topology: disk must enclose all 2k slits");
        return topology_summary(flat_truncation_polygon(spec.k));
    }
    return topology_summary(hyperbolic_truncation_polygon(spec.m, spec.cap_height));
}

// ------------------------------------------------------------- end count

//! Count the ends of the glued surface over a plane or cylinder base by
//! exhausting it with growing truncations.  The complement of each
//! truncation is decomposed into faces by the slit line; faces merge
//! across non-slit stretches of the line and across slit gluings, and
//! the number of unbounded components must stabilize from level to
//! level.  A plane base gives 1 end regardless of k; a cylinder base
//! gives 2 (the Jacob's-ladder comparator).
inline int count_ends(const SlitSurface& surf, int levels) {
    if (levels < 2) throw std::invalid_argument("count_ends: need at least 2 levels");

    double extent = 8.0;  // radius covering every slit
    for (const auto& s : surf.slits()) extent = std::max(extent, std::abs(s.x1) + 1.0);
    for (const auto& s : surf.slits()) extent = std::max(extent, std::abs(s.x0) + 1.0);

    std::vector<int> counts;
    for (int level = 1; level <= levels; ++level) {
        const double radius = extent + 16.0 * level;

        if (surf.base() == SlitSurface::Base::Cylinder) {
            // Complement of the band |y| <= radius: two sub-cylinders,
            // and the slit line y = 0 lies inside the band, so there is
            // nothing to merge them across.
            counts.push_back(2);
            continue;
        }

        // Plane: complement of the disk, cut by the slit line into an
        // upper and a lower face.  Every slit sits inside the disk, so
        // the two rays of the line outside it are plain gaps; crossing
        // either one merges the faces.  Slit gluings outside the disk
        // would merge a face with its partner's opposite face the same
        // way (none occur for these radii, but the machinery is kept
        // uniform).
        detail::UnionFind uf(2);  // 0 = upper face, 1 = lower face
        const auto covered_by_slit = [&](double a, double b) {
            for (const auto& s : surf.slits())
                if (s.x0 <= a + 1e-9 && b <= s.x1 + 1e-9) return true;
            return false;
        };
        for (double probe : {radius + 1.0, -radius - 1.0})
            if (!covered_by_slit(probe, probe)) uf.unite(0, 1);
        for (std::size_t i = 0; i < surf.slits().size(); ++i) {
            const Slit& s = surf.slits()[i];
            const Slit& p = surf.slits()[static_cast<std::size_t>(surf.partner(static_cast<int>(i)))];
            const auto outside = [&](const Slit& t) { return t.x0 > radius || t.x1 < -radius; };
            if (outside(s) && outside(p)) uf.unite(0, 1);
        }

        std::set<int> roots;
        roots.insert(uf.find(0));
        roots.insert(uf.find(1));
        counts.push_back(static_cast<int>(roots.size()));
    }

    if (counts[counts.size() - 1] != counts[counts.size() - 2])
        throw NotStabilized("count_ends: end count still changing at the last level");
    return counts.back();
}

inline int count_ends_plane(int k, int levels) {
    const auto surf = k == 0 ? SlitSurface::bare_plane() : SlitSurface::monster(k);
    return count_ends(surf, levels);
}

inline int count_ends_cylinder(int k, int levels, double circumference = 40.0) {
    const auto surf = k == 0 ? SlitSurface::bare_cylinder(circumference)
                             : SlitSurface::monster_on_cylinder(k, circumference);
    return count_ends(surf, levels);
}

}  // namespace nessie
