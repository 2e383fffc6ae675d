#pragma once

// Exact Mobius-transformation arithmetic on the upper half-plane.
//
// Group elements are integer matrices with determinant +1, stored with
// arbitrary-precision entries so that group-law checks stay exact for
// long words.  Points and circles use doubles; geometric comparisons
// take an absolute tolerance (default 1e-9).  Everything is an
// immutable value with pure operations, safe to share across threads.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace nessie {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

inline constexpr double kGeomTol = 1e-9;

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

//! z -> (a z + b) / (c z + d) with integer entries and determinant +1.
//!
//! The stored representative is canonical: the first nonzero entry in
//! the order (a, b, c, d) is positive.  Two maps are equal in PSL(2, Z)
//! iff their four entries compare equal.
class MobiusMap {
public:
    MobiusMap() : a_(1), b_(0), c_(0), d_(1) {}

    MobiusMap(BigInt a, BigInt b, BigInt c, BigInt d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        if (a_ * d_ - b_ * c_ != 1)
            throw std::invalid_argument("MobiusMap: determinant must be exactly +1");
        canonicalize();
    }

    static MobiusMap identity() { return MobiusMap(); }

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    const BigInt& d() const { return d_; }

    BigInt determinant() const { return a_ * d_ - b_ * c_; }
    BigInt trace() const { return a_ + d_; }

    bool is_identity() const { return b_ == 0 && c_ == 0 && a_ == 1 && d_ == 1; }

    //! Inverse is the adjugate since det = 1; composing with *this gives
    //! the identity exactly.
    MobiusMap inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

    friend MobiusMap operator*(const MobiusMap& s, const MobiusMap& t) {
        return MobiusMap(s.a_ * t.a_ + s.b_ * t.c_, s.a_ * t.b_ + s.b_ * t.d_,
                         s.c_ * t.a_ + s.d_ * t.c_, s.c_ * t.b_ + s.d_ * t.d_);
    }

    //! Evaluate at a point of the upper half-plane.  The pole -d/c is
    //! real, so the image of any z with Im z > 0 is finite and has
    //! Im > 0 (the determinant is positive).
    Complex apply(Complex z) const {
        return (to_double(a_) * z + to_double(b_)) / (to_double(c_) * z + to_double(d_));
    }

    //! Evaluate at a boundary point (real axis).  Caller must avoid the
    //! pole -d/c.
    double apply_boundary(double x) const {
        return (to_double(a_) * x + to_double(b_)) / (to_double(c_) * x + to_double(d_));
    }

    bool operator==(const MobiusMap& o) const = default;

    std::array<BigInt, 4> entries() const { return {a_, b_, c_, d_}; }

    std::string str() const {
        std::ostringstream os;
        os << "[[" << a_ << ", " << b_ << "], [" << c_ << ", " << d_ << "]]";
        return os.str();
    }

private:
    void canonicalize() {
        for (const BigInt* e : {&a_, &b_, &c_, &d_}) {
            if (*e == 0) continue;
            if (*e < 0) { a_ = -a_; b_ = -b_; c_ = -c_; d_ = -d_; }
            break;
        }
    }

    BigInt a_, b_, c_, d_;
};

enum class MapClass : std::uint8_t { Identity, Elliptic, Parabolic, Hyperbolic };

inline const char* to_string(MapClass c) {
    switch (c) {
        case MapClass::Identity: return "identity";
        case MapClass::Elliptic: return "elliptic";
        case MapClass::Parabolic: return "parabolic";
        case MapClass::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

//! Classification by |trace|; exact since the trace is an integer.
inline MapClass classify(const MobiusMap& t) {
    if (t.is_identity()) return MapClass::Identity;
    const BigInt tr = abs(t.trace());
    if (tr < 2) return MapClass::Elliptic;
    if (tr == 2) return MapClass::Parabolic;
    return MapClass::Hyperbolic;
}

//! A circle centered on the real axis, or a vertical line.  These are
//! exactly the shapes exchanged by integer Mobius maps, and they double
//! as hyperbolic geodesics of the upper half-plane.
struct GeneralizedCircle {
    enum class Kind : std::uint8_t { Circle, VerticalLine };

    Kind kind = Kind::Circle;
    double center = 0.0;  // circle center on the real axis, or the line abscissa
    double radius = 0.0;  // circle only

    static GeneralizedCircle circle(double center, double radius) {
        if (!(radius > 0.0))
            throw std::invalid_argument("GeneralizedCircle: radius must be positive");
        return {Kind::Circle, center, radius};
    }
    static GeneralizedCircle vertical_line(double x0) { return {Kind::VerticalLine, x0, 0.0}; }

    bool is_circle() const { return kind == Kind::Circle; }

    //! Negative inside, zero on, positive outside.  For a vertical line
    //! "inside" is the half-plane left of it (only circles are used as
    //! regions in practice).
    double signed_offset(Complex z) const {
        if (is_circle()) return std::abs(z - Complex(center, 0.0)) - radius;
        return z.real() - center;
    }
};

enum class RegionSide : std::uint8_t { Inside, On, Outside };

inline RegionSide side_of(const GeneralizedCircle& c, Complex z, double tol = kGeomTol) {
    const double off = c.signed_offset(z);
    if (off < -tol) return RegionSide::Inside;
    if (off > tol) return RegionSide::Outside;
    return RegionSide::On;
}

inline bool approx_equal(const GeneralizedCircle& x, const GeneralizedCircle& y,
                         double tol = kGeomTol) {
    if (x.kind != y.kind) return false;
    if (std::abs(x.center - y.center) > tol) return false;
    return x.is_circle() ? std::abs(x.radius - y.radius) <= tol : true;
}

inline std::string to_string(const GeneralizedCircle& c) {
    std::ostringstream os;
    if (c.is_circle())
        os << "circle(center=" << c.center << ", r=" << c.radius << ")";
    else
        os << "line(x=" << c.center << ")";
    return os.str();
}

//! Exact image of a generalized circle under a Mobius map.
//!
//! Writing t(z) = a/c - (1/c^2) / (z - p) with pole p = -d/c reduces
//! everything to the inversion w -> 1/w, whose action on circles and
//! lines is classical.  A circle passing through the pole (within tol)
//! maps to a vertical line, and conversely a vertical line through the
//! pole maps to the vertical line x = a/c.
inline GeneralizedCircle circle_image(const MobiusMap& t, const GeneralizedCircle& src,
                                      double tol = kGeomTol) {
    const double a = to_double(t.a()), b = to_double(t.b());
    const double c = to_double(t.c()), d = to_double(t.d());

    if (t.c() == 0) {
        // Affine map q z + b/d with q = a/d > 0 in canonical form.
        const double q = a / d;
        if (src.is_circle())
            return GeneralizedCircle::circle(q * src.center + b / d, q * src.radius);
        return GeneralizedCircle::vertical_line(q * src.center + b / d);
    }

    const double p = -d / c;
    const double scale = 1.0 / (c * c);

    if (src.is_circle()) {
        const double u = src.center - p;
        if (std::abs(std::abs(u) - src.radius) <= tol) {
            // Pole on the circle: the image is the vertical line through
            // the image of the diametrically opposite point.
            return GeneralizedCircle::vertical_line(t.apply_boundary(2.0 * src.center - p));
        }
        const double denom = u * u - src.radius * src.radius;
        return GeneralizedCircle::circle(a / c - scale * u / denom,
                                         scale * src.radius / std::abs(denom));
    }

    const double v = src.center - p;
    if (std::abs(v) <= tol) return GeneralizedCircle::vertical_line(a / c);
    return GeneralizedCircle::circle(a / c - scale / (2.0 * v), scale / (2.0 * std::abs(v)));
}

}  // namespace nessie
