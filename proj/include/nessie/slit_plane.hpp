#pragma once

// The flat model: a plane (or cylinder) cut along a family of disjoint
// unit slits on the x-axis, re-glued pairwise by translations.  Gluing
// convention: the upper side of slit 2i-1 is identified with the lower
// side of slit 2i and vice versa, via translation by +4 along x.  The
// result is a translation surface: geodesics are straight lines that
// teleport across glued slits without turning, and slit endpoints are
// cone points of angle 4*pi.  Surfaces are immutable after
// construction; tracing and angle measurement are pure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nessie {

struct SingularPoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularStart : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SlitSide : std::uint8_t { None, Upper, Lower };

inline SlitSide flip(SlitSide s) {
    if (s == SlitSide::Upper) return SlitSide::Lower;
    if (s == SlitSide::Lower) return SlitSide::Upper;
    return SlitSide::None;
}

struct FlatPoint {
    double x = 0.0;
    double y = 0.0;
    SlitSide side = SlitSide::None;  // meaningful only on a slit
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Slit {
    double x0 = 0.0;  // left endpoint, on y = 0
    double x1 = 0.0;  // right endpoint
    double length() const { return x1 - x0; }
};

class SlitSurface {
public:
    enum class Base : std::uint8_t { Plane, Cylinder };

    //! Plane with the first 2k slits of the family [4i-1, 4i], glued in
    //! consecutive pairs (1,2), (3,4), ...
    static SlitSurface monster(int pair_count) {
        if (pair_count < 1)
            throw std::invalid_argument("SlitSurface::monster: need at least one pair");
        return SlitSurface(Base::Plane, 0.0, family(2 * pair_count), consecutive_pairs(pair_count));
    }

    //! Same family on a cylinder of the given circumference (x wraps).
    //! Used as the two-ended comparator for end counting.
    static SlitSurface monster_on_cylinder(int pair_count, double circumference) {
        if (pair_count < 1)
            throw std::invalid_argument("SlitSurface::monster_on_cylinder: need at least one pair");
        if (!(circumference > 0.0))
            throw std::invalid_argument("SlitSurface::monster_on_cylinder: circumference must be positive");
        auto slits = family(2 * pair_count);
        for (auto& s : slits) {
            const double w0 = wrap_value(s.x0, circumference);
            s = {w0, w0 + s.length()};
            if (s.x1 > circumference + 1e-12)
                throw std::invalid_argument("SlitSurface: slit straddles the cylinder seam");
        }
        return SlitSurface(Base::Cylinder, circumference, std::move(slits),
                           consecutive_pairs(pair_count));
    }

    //! The bare plane: no slits, plain Euclidean geometry.
    static SlitSurface bare_plane() { return SlitSurface(Base::Plane, 0.0, {}, {}); }

    static SlitSurface bare_cylinder(double circumference) {
        if (!(circumference > 0.0))
            throw std::invalid_argument("SlitSurface::bare_cylinder: circumference must be positive");
        return SlitSurface(Base::Cylinder, circumference, {}, {});
    }

    Base base() const { return base_; }
    double circumference() const { return circumference_; }
    const std::vector<Slit>& slits() const { return slits_; }
    int partner(int i) const { return partner_[static_cast<std::size_t>(i)]; }

    double wrap(double x) const {
        return base_ == Base::Cylinder ? wrap_value(x, circumference_) : x;
    }

    //! Index of the slit whose closed span contains x (y assumed 0), or -1.
    int slit_at(double x, double tol = 1e-12) const {
        for (std::size_t i = 0; i < slits_.size(); ++i)
            if (x >= slits_[i].x0 - tol && x <= slits_[i].x1 + tol) return static_cast<int>(i);
        return -1;
    }

    bool on_slit_line(const FlatPoint& p, double tol = 1e-9) const {
        return std::abs(p.y) <= tol && slit_at(wrap(p.x), tol) >= 0;
    }

private:
    SlitSurface(Base base, double circumference, std::vector<Slit> slits,
                std::vector<int> partner)
        : base_(base), circumference_(circumference), slits_(std::move(slits)),
          partner_(std::move(partner)) {
        validate();
    }

    static std::vector<Slit> family(int count) {
        std::vector<Slit> out;
        out.reserve(static_cast<std::size_t>(count));
        for (int i = 1; i <= count; ++i)
            out.push_back({4.0 * i - 1.0, 4.0 * i});
        return out;
    }

    static std::vector<int> consecutive_pairs(int pair_count) {
        std::vector<int> out(static_cast<std::size_t>(2 * pair_count));
        for (int i = 0; i < 2 * pair_count; ++i) out[static_cast<std::size_t>(i)] = i ^ 1;
        return out;
    }

    static double wrap_value(double x, double circumference) {
        double w = std::fmod(x, circumference);
        if (w < 0.0) w += circumference;
        return w;
    }

    void validate() const {
        if (slits_.empty()) return;
        const double len = slits_[0].length();
        for (const auto& s : slits_) {
            if (!(s.length() > 0.0))
                throw std::invalid_argument("SlitSurface: degenerate slit");
            if (std::abs(s.length() - len) > 1e-12)
                throw std::invalid_argument("SlitSurface: slits must have equal length");
        }
        for (std::size_t i = 0; i < slits_.size(); ++i)
            for (std::size_t j = i + 1; j < slits_.size(); ++j)
                if (slits_[i].x1 > slits_[j].x0 - 1e-12 && slits_[j].x1 > slits_[i].x0 - 1e-12)
                    throw std::invalid_argument("SlitSurface: slits overlap");
        if (partner_.size() != slits_.size())
            throw std::invalid_argument("SlitSurface: pairing size mismatch");
        for (std::size_t i = 0; i < partner_.size(); ++i) {
            const int p = partner_[i];
            if (p < 0 || p >= static_cast<int>(slits_.size()) ||
                p == static_cast<int>(i) ||
                partner_[static_cast<std::size_t>(p)] != static_cast<int>(i))
                throw std::invalid_argument("SlitSurface: pairing must be a fixed-point-free involution");
        }
    }

    Base base_;
    double circumference_;
    std::vector<Slit> slits_;
    std::vector<int> partner_;
};

namespace detail {

//! Offset of x inside slit s, snapped to the grid representable on both
//! sides of the gluing so that the identification is an exact involution
//! on its own outputs.
inline double canonical_offset(const SlitSurface& surf, int slit, double x) {
    const double x0 = surf.slits()[static_cast<std::size_t>(slit)].x0;
    const double px0 = surf.slits()[static_cast<std::size_t>(surf.partner(slit))].x0;
    const double hi = std::max(x0, px0);
    return (hi + (x - x0)) - hi;
}

}  // namespace detail

//! The point identified with p, which must lie on a slit with its side
//! set.  The translation carries the offset along the slit unchanged and
//! flips the side.  Endpoints are cone points and are rejected.
inline FlatPoint identify(const SlitSurface& surf, const FlatPoint& p, double end_tol = 1e-9) {
    if (p.side == SlitSide::None)
        throw std::invalid_argument("identify: point has no slit side");
    const double x = surf.wrap(p.x);
    const int idx = surf.slit_at(x);
    if (idx < 0) throw std::invalid_argument("identify: point is not on a slit");
    const Slit& s = surf.slits()[static_cast<std::size_t>(idx)];
    if (std::abs(x - s.x0) <= end_tol || std::abs(x - s.x1) <= end_tol)
        throw SingularPoint("identify: slit endpoint is a cone point");
    const int pidx = surf.partner(idx);
    const Slit& ps = surf.slits()[static_cast<std::size_t>(pidx)];
    return {ps.x0 + detail::canonical_offset(surf, idx, x), 0.0, flip(p.side)};
}

//! Crossing resolution for a trajectory that reached a slit: approaching
//! from above hits the Upper side.  Continuing motion proceeds from the
//! returned point in the same direction.
inline FlatPoint resolve_crossing(const SlitSurface& surf, const FlatPoint& p,
                                  bool heading_down) {
    FlatPoint q = p;
    q.side = heading_down ? SlitSide::Upper : SlitSide::Lower;
    return identify(surf, q);
}

// ------------------------------------------------------------- tracing

struct TraceEvent {
    enum class Kind : std::uint8_t { Crossing, SingularityHit, LimitReached };

    Kind kind = Kind::LimitReached;
    int slit = -1;        // Crossing
    FlatPoint entry;      // Crossing: point on the slit that was hit
    FlatPoint exit;       // Crossing: identified point motion resumes from
    Vec2 singularity;     // SingularityHit: the cone point
};

struct GeodesicTrace {
    FlatPoint start;
    Vec2 direction;  // unit; constant across all events (trivial holonomy)
    std::vector<TraceEvent> events;
    std::vector<std::pair<Vec2, Vec2>> polyline;  // plane-coordinate segments
    double total_length = 0.0;

    const Vec2& end_point() const { return polyline.back().second; }
};

//! Straight-line flow from start.  At each slit crossing the point is
//! re-identified via the gluing and the flight continues with the same
//! direction vector.  Stops at max_events, max_length, or when the ray
//! runs into a cone point (within 1e-9 of a slit endpoint).
inline GeodesicTrace trace_geodesic(const SlitSurface& surf, FlatPoint start, Vec2 direction,
                                    int max_events = 64, double max_length = 100.0) {
    const double norm = std::hypot(direction.x, direction.y);
    if (!(norm > 0.0)) throw std::invalid_argument("trace_geodesic: zero direction");
    if (!(max_length > 0.0)) throw std::invalid_argument("trace_geodesic: max_length must be positive");
    const Vec2 dir{direction.x / norm, direction.y / norm};

    if (std::abs(start.y) <= 1e-12 && surf.slit_at(surf.wrap(start.x)) >= 0) {
        const int idx = surf.slit_at(surf.wrap(start.x));
        const Slit& s = surf.slits()[static_cast<std::size_t>(idx)];
        const double x = surf.wrap(start.x);
        if (std::abs(x - s.x0) <= 1e-9 || std::abs(x - s.x1) <= 1e-9)
            throw SingularStart("trace_geodesic: start is a cone point");
        if (start.side == SlitSide::None)
            throw std::invalid_argument("trace_geodesic: start on a slit needs a side");
        if (dir.y == 0.0)
            throw std::invalid_argument("trace_geodesic: direction tangent to the slit");
        // A seam point has two representatives; switch to the one whose
        // region the motion enters.
        if ((start.side == SlitSide::Upper && dir.y < 0.0) ||
            (start.side == SlitSide::Lower && dir.y > 0.0))
            start = identify(surf, start);
    }

    GeodesicTrace trace;
    trace.start = start;
    trace.direction = dir;

    Vec2 pos{surf.wrap(start.x), start.y};
    double remaining = max_length;

    for (int ev = 0; ev < max_events; ++ev) {
        double t_hit = -1.0;
        if (dir.y != 0.0) {
            const double t = -pos.y / dir.y;
            if (t > 1e-12 && t < remaining) t_hit = t;
        }
        if (t_hit < 0.0) break;  // no further slit-line crossing in range

        const double x_hit = surf.wrap(pos.x + t_hit * dir.x);
        const int idx = surf.slit_at(x_hit);
        if (idx < 0) break;  // crosses the bare line; the segment continues straight

        const Slit& s = surf.slits()[static_cast<std::size_t>(idx)];
        trace.polyline.push_back({pos, {pos.x + t_hit * dir.x, 0.0}});
        trace.total_length += t_hit;
        remaining -= t_hit;

        if (std::abs(x_hit - s.x0) <= 1e-9 || std::abs(x_hit - s.x1) <= 1e-9) {
            const double xe = std::abs(x_hit - s.x0) <= 1e-9 ? s.x0 : s.x1;
            TraceEvent e;
            e.kind = TraceEvent::Kind::SingularityHit;
            e.singularity = {xe, 0.0};
            trace.events.push_back(e);
            return trace;
        }

        TraceEvent e;
        e.kind = TraceEvent::Kind::Crossing;
        e.slit = idx;
        // Snap the hit to the canonical seam grid so entry and exit are
        // exact mirror images under identify().
        e.entry = {s.x0 + detail::canonical_offset(surf, idx, x_hit), 0.0,
                   dir.y < 0.0 ? SlitSide::Upper : SlitSide::Lower};
        e.exit = identify(surf, e.entry);
        trace.events.push_back(e);
        pos = {e.exit.x, 0.0};
    }

    // Remaining straight flight (cut off by length or by the event cap).
    trace.polyline.push_back({pos, {pos.x + remaining * dir.x, pos.y + remaining * dir.y}});
    trace.total_length += remaining;
    TraceEvent e;
    e.kind = TraceEvent::Kind::LimitReached;
    trace.events.push_back(e);
    return trace;
}

// ---------------------------------------------------------- cone angle

//! Total angle around a point, obtained by developing a loop around it
//! through the gluings and summing the traversed sectors.  The walk is
//! combinatorial: the only cuts incident to p are the slit rays through
//! it (east = 0, west = pi), each full sector contributes the sweep
//! between consecutive cuts, and crossing a lip teleports the center to
//! the identified point on the partner slit.  Regular points and interior
//! slit points give 2*pi; slit endpoints give 4*pi.
inline double cone_angle(const SlitSurface& surf, const FlatPoint& p, double tol = 1e-9) {
    const double pi = std::acos(-1.0);
    if (std::abs(p.y) > tol) return 2.0 * pi;
    const double x = surf.wrap(p.x);
    const int idx = surf.slit_at(x, tol);
    if (idx < 0) return 2.0 * pi;

    struct State {
        double x;
        double cut;  // 0 = material to the east, pi = material to the west
        bool operator==(const State& o) const {
            return std::abs(x - o.x) <= 1e-9 && cut == o.cut;
        }
    };

    const auto cuts_at = [&](double q) {
        std::vector<double> cuts;
        const int i = surf.slit_at(q, tol);
        if (i >= 0) {
            const Slit& s = surf.slits()[static_cast<std::size_t>(i)];
            if (q < s.x1 - tol) cuts.push_back(0.0);        // slit material east of q
            if (q > s.x0 + tol) cuts.push_back(pi);          // slit material west of q
        }
        return cuts;
    };

    const auto teleport = [&](double q, double cut) -> double {
        // Crossing the east ray exits through the lower lip, the west ray
        // through the upper lip; both resume at the partner point.
        const int i = surf.slit_at(q, tol);
        const Slit& ps = surf.slits()[static_cast<std::size_t>(surf.partner(i))];
        (void)cut;
        return ps.x0 + detail::canonical_offset(surf, i, q);
    };

    const auto initial_cuts = cuts_at(x);
    if (initial_cuts.empty()) return 2.0 * pi;

    const State start{x, initial_cuts.front()};
    State cur = start;
    double angle = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
        const auto cuts = cuts_at(cur.x);
        // Sweep counterclockwise from the current cut to the next one.
        double best = 2.0 * pi;
        for (double c : cuts) {
            double delta = c - cur.cut;
            while (delta <= 1e-12) delta += 2.0 * pi;
            if (delta < best) best = delta;
        }
        angle += best;
        double next_cut = cur.cut + best;
        while (next_cut >= 2.0 * pi - 1e-12) next_cut -= 2.0 * pi;
        cur = State{teleport(cur.x, next_cut), next_cut};
        if (cur == start) return angle;
    }
    throw std::runtime_error("cone_angle: development did not close up");
}

}  // namespace nessie
