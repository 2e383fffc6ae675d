#pragma once

// The infinitely generated Fuchsian group acting on the upper half-plane
// whose quotient is the infinite-genus, one-ended surface.
//
// The group is generated by two families of hyperbolic maps indexed by
// m in Z.  Each f_m pairs the unit half-circle centered at 16m with the
// one centered at 16m+8; each g_m is printed in two variants (see
// GVariant below).  The common exterior of all the circles |z - 4n| >= 1
// is the fundamental domain.  Every operation that touches the group is
// windowed by an explicit |m| <= window bound, since the full generating
// set is infinite.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mobius.hpp"

namespace nessie {

//! The g family as printed pairs the circle at 16m+4 with the one at
//! 16m+8, which collides with f_m's target and contradicts the claimed
//! pairing with 16m+12.  Corrected uses the coefficient 16m+12, which
//! realizes the claimed pairing; it is the default everywhere.  Printed
//! is kept so the verifier can exhibit the discrepancy.
enum class GVariant : std::uint8_t { Printed, Corrected };

inline const char* to_string(GVariant v) {
    return v == GVariant::Printed ? "printed" : "corrected";
}

inline MobiusMap f_generator(long long m) {
    const BigInt M = m;
    return MobiusMap(16 * M + 8, -(1 + 16 * M * (16 * M + 8)), 1, -16 * M);
}

inline MobiusMap g_generator(long long m, GVariant variant = GVariant::Corrected) {
    const BigInt M = m;
    if (variant == GVariant::Printed)
        return MobiusMap(16 * M + 8, -(1 + (16 * M + 4) * (16 * M + 8)), 1, -(16 * M + 4));
    return MobiusMap(16 * M + 12, -(1 + (16 * M + 4) * (16 * M + 12)), 1, -(16 * M + 4));
}

//! Unit half-circle centered at a multiple of 4.
inline GeneralizedCircle pairing_circle(long long center) {
    return GeneralizedCircle::circle(static_cast<double>(center), 1.0);
}

struct GeneratorLetter {
    enum class Family : std::uint8_t { F, G };

    Family family = Family::F;
    long long m = 0;
    bool inverted = false;

    GeneratorLetter inverse() const { return {family, m, !inverted}; }
    bool is_inverse_of(const GeneratorLetter& o) const {
        return family == o.family && m == o.m && inverted != o.inverted;
    }

    // Field order gives the lexicographic letter order used by the
    // enumerator: all f's before all g's, m ascending, plain before
    // inverse.
    auto operator<=>(const GeneratorLetter&) const = default;

    //! Source circle center: the circle whose inside this letter maps to
    //! the outside of its partner.
    long long source_center() const {
        const long long base = family == Family::F ? 16 * m : 16 * m + 4;
        return inverted ? partner_of(base) : base;
    }
    //! Claimed target circle center (the pairing partner).
    long long target_center() const { return partner_of(source_center()); }

    static long long partner_of(long long center) {
        const long long r = ((center % 16) + 16) % 16;
        return (r == 0 || r == 4) ? center + 8 : center - 8;
    }

    std::string str() const {
        std::string s(family == Family::F ? "f_" : "g_");
        s += std::to_string(m);
        if (inverted) s += "^-1";
        return s;
    }
};

inline MobiusMap letter_matrix(const GeneratorLetter& letter,
                               GVariant variant = GVariant::Corrected) {
    MobiusMap mat = letter.family == GeneratorLetter::Family::F ? f_generator(letter.m)
                                                                : g_generator(letter.m, variant);
    return letter.inverted ? mat.inverse() : mat;
}

//! A reduced word over the generator letters.  Letters read left to
//! right as function composition: the rightmost letter acts first, and
//! matrix() is the product of the letter matrices in written order.
struct Word {
    std::vector<GeneratorLetter> letters;

    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }

    bool reduced() const {
        for (std::size_t i = 1; i < letters.size(); ++i)
            if (letters[i].is_inverse_of(letters[i - 1])) return false;
        return true;
    }

    //! Append on the right, cancelling an inverse pair (free-group
    //! multiplication keeps the word reduced).
    void append(const GeneratorLetter& l) {
        if (!letters.empty() && letters.back().is_inverse_of(l))
            letters.pop_back();
        else
            letters.push_back(l);
    }
    //! Prepend on the left, cancelling likewise.
    void prepend(const GeneratorLetter& l) {
        if (!letters.empty() && letters.front().is_inverse_of(l))
            letters.erase(letters.begin());
        else
            letters.insert(letters.begin(), l);
    }

    MobiusMap matrix(GVariant variant = GVariant::Corrected) const {
        MobiusMap m;
        for (const auto& l : letters) m = m * letter_matrix(l, variant);
        return m;
    }

    std::string str() const {
        if (letters.empty()) return "e";
        std::string s;
        for (const auto& l : letters) {
            if (!s.empty()) s += ' ';
            s += l.str();
        }
        return s;
    }
};

// ---------------------------------------------------------------- domain

inline double nearest_circle_center(double x) { return 4.0 * std::round(x / 4.0); }

//! Membership in the closed fundamental domain |z - 4n| >= 1 for all n.
//! The circles are 4 apart with radius 1, so only the nearest center can
//! be violated; the two neighbors are checked as well since they are
//! what "nearest" degenerates to on ties.
inline bool domain_contains(Complex z, double tol = kGeomTol) {
    const double c = nearest_circle_center(z.real());
    for (double cc : {c - 4.0, c, c + 4.0})
        if (std::abs(z - Complex(cc, 0.0)) < 1.0 - tol) return false;
    return true;
}

struct WindowExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonTermination : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReduceResult {
    Word word;      // word.matrix() applied to the input gives point
    Complex point;  // representative inside the fundamental domain
    int steps = 0;
};

//! Move z into the fundamental domain by repeatedly applying the pairing
//! generator of whichever circle strictly contains it.  A point is inside
//! at most one circle, and the residue of the center mod 16 determines
//! the letter:
//!   16m -> f_m,  16m+8 -> f_m^-1,  16m+4 -> g_m,  16m+12 -> g_m^-1.
inline ReduceResult reduce_to_domain(Complex z, long long window, double tol = kGeomTol,
                                     int max_steps = 10000) {
    ReduceResult res;
    res.point = z;
    for (int step = 0; step < max_steps; ++step) {
        const double c = nearest_circle_center(res.point.real());
        if (std::abs(res.point - Complex(c, 0.0)) >= 1.0 - tol) {
            res.steps = static_cast<int>(res.word.size());
            return res;
        }
        const long long center = static_cast<long long>(std::llround(c));
        const long long r = ((center % 16) + 16) % 16;
        GeneratorLetter letter;
        switch (r) {
            case 0: letter = {GeneratorLetter::Family::F, center / 16, false}; break;
            case 8: letter = {GeneratorLetter::Family::F, (center - 8) / 16, true}; break;
            case 4: letter = {GeneratorLetter::Family::G, (center - 4) / 16, false}; break;
            default: letter = {GeneratorLetter::Family::G, (center - 12) / 16, true}; break;
        }
        if (std::abs(letter.m) > window)
            throw WindowExceeded("reduce_to_domain: needs generator index m=" +
                                 std::to_string(letter.m) + " but window is " +
                                 std::to_string(window));
        res.point = letter_matrix(letter).apply(res.point);
        res.word.prepend(letter);
    }
    throw NonTermination("reduce_to_domain: iteration cap reached");
}

// -------------------------------------------------------- verification

struct PairingRecord {
    GeneratorLetter letter;  // plain f_m or g_m
    GeneralizedCircle source;
    GeneralizedCircle claimed_target;
    GeneralizedCircle computed_image;
    bool match = false;
};

struct PairingReport {
    long long window = 0;
    GVariant variant = GVariant::Corrected;
    std::vector<PairingRecord> records;

    bool all_match() const {
        return std::all_of(records.begin(), records.end(),
                           [](const PairingRecord& r) { return r.match; });
    }
    int match_count() const {
        return static_cast<int>(
            std::count_if(records.begin(), records.end(),
                          [](const PairingRecord& r) { return r.match; }));
    }
};

//! Check, for every |m| <= window, that f_m carries the circle at 16m
//! onto the one at 16m+8 and that g_m carries the circle at 16m+4 onto
//! the claimed partner at 16m+12.  Mismatches are recorded, not thrown;
//! the printed g family fails with computed image centered at 16m+8.
inline PairingReport verify_side_pairings(long long window,
                                          GVariant variant = GVariant::Corrected,
                                          double tol = kGeomTol) {
    if (window < 0) throw std::invalid_argument("verify_side_pairings: window must be >= 0");
    PairingReport report{window, variant, {}};
    for (long long m = -window; m <= window; ++m) {
        for (auto family : {GeneratorLetter::Family::F, GeneratorLetter::Family::G}) {
            GeneratorLetter letter{family, m, false};
            PairingRecord rec;
            rec.letter = letter;
            rec.source = pairing_circle(letter.source_center());
            rec.claimed_target = pairing_circle(letter.target_center());
            rec.computed_image = circle_image(letter_matrix(letter, variant), rec.source, tol);
            rec.match = approx_equal(rec.computed_image, rec.claimed_target, tol);
            report.records.push_back(rec);
        }
    }
    return report;
}

struct ExchangeReport {
    long long window = 0;
    int samples_per_side = 0;
    long long checked = 0;
    long long failures = 0;

    bool all_conform() const { return failures == 0; }
};

//! Sampled check of the inside/outside exchange: each generator maps
//! points inside its source circle to points outside the claimed target,
//! and points of the fundamental domain near the source to points inside
//! the target.  Inside samples sit on rings of radius < 1 around the
//! source center; outside samples on rings of radius in (1, 3), which
//! stay in the fundamental domain because neighboring centers are 4
//! apart.
inline ExchangeReport verify_region_exchange(long long window, int samples_per_side = 64,
                                             double tol = kGeomTol,
                                             GVariant variant = GVariant::Corrected) {
    if (window < 0) throw std::invalid_argument("verify_region_exchange: window must be >= 0");
    static constexpr double kInsideRadii[4] = {0.2, 0.4, 0.6, 0.8};
    static constexpr double kOutsideRadii[4] = {1.5, 2.0, 2.5, 2.9};
    const int angles = (samples_per_side + 3) / 4;
    const double pi = std::acos(-1.0);

    ExchangeReport report{window, samples_per_side, 0, 0};
    for (long long m = -window; m <= window; ++m) {
        for (auto family : {GeneratorLetter::Family::F, GeneratorLetter::Family::G}) {
            const GeneratorLetter letter{family, m, false};
            const MobiusMap map = letter_matrix(letter, variant);
            const double source = static_cast<double>(letter.source_center());
            const GeneralizedCircle target = pairing_circle(letter.target_center());
            for (int s = 0; s < samples_per_side; ++s) {
                const double theta = pi * (static_cast<double>(s / 4) + 0.5) / angles;
                const Complex dir = std::polar(1.0, theta);
                const Complex zin = source + kInsideRadii[s % 4] * dir;
                const Complex zout = source + kOutsideRadii[s % 4] * dir;
                ++report.checked;
                if (target.signed_offset(map.apply(zin)) < -tol) ++report.failures;
                ++report.checked;
                if (target.signed_offset(map.apply(zout)) > tol) ++report.failures;
            }
        }
    }
    return report;
}

// --------------------------------------------------------- enumeration

//! All generator letters with |m| <= window, in lexicographic order.
inline std::vector<GeneratorLetter> letter_alphabet(long long window) {
    std::vector<GeneratorLetter> out;
    out.reserve(static_cast<std::size_t>(4 * (2 * window + 1)));
    for (auto family : {GeneratorLetter::Family::F, GeneratorLetter::Family::G})
        for (long long m = -window; m <= window; ++m)
            for (bool inv : {false, true}) out.push_back({family, m, inv});
    std::sort(out.begin(), out.end());
    return out;
}

//! Number of reduced words of length <= depth over 2*(2*window+1)*2
//! letters (free-group count), saturating at limit+1.
inline std::size_t reduced_word_count(long long window, int depth, std::size_t limit) {
    const std::size_t L = static_cast<std::size_t>(4 * (2 * window + 1));
    std::size_t total = 1, level = 1;
    for (int d = 1; d <= depth; ++d) {
        level *= (d == 1 ? L : L - 1);
        total += level;
        if (total > limit) return limit + 1;
    }
    return total;
}

//! Breadth-first traversal of all reduced words of length <= depth, in
//! deterministic order: by length, then lexicographically by letters.
//! Matrices are built incrementally and stay exact.
inline void for_each_word(long long window, int depth,
                          const std::function<void(const Word&, const MobiusMap&)>& visit,
                          std::size_t max_words = 1'000'000,
                          GVariant variant = GVariant::Corrected) {
    if (window < 0 || depth < 0)
        throw std::invalid_argument("for_each_word: window and depth must be >= 0");
    if (reduced_word_count(window, depth, max_words) > max_words)
        throw ResourceLimit("for_each_word: enumeration would exceed " +
                            std::to_string(max_words) + " words");

    const auto alphabet = letter_alphabet(window);
    struct Node {
        Word word;
        MobiusMap mat;
    };
    std::vector<Node> level{{Word{}, MobiusMap::identity()}};
    visit(level[0].word, level[0].mat);

    for (int d = 1; d <= depth; ++d) {
        std::vector<Node> next;
        if (d < depth) next.reserve(level.size() * alphabet.size());
        for (const Node& node : level) {
            for (const GeneratorLetter& l : alphabet) {
                if (!node.word.empty() && node.word.letters.back().is_inverse_of(l)) continue;
                Node child{node.word, node.mat * letter_matrix(l, variant)};
                child.word.letters.push_back(l);
                visit(child.word, child.mat);
                if (d < depth) next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
}

inline std::vector<std::pair<Word, MobiusMap>> enumerate_words(
    long long window, int depth, std::size_t max_words = 1'000'000) {
    std::vector<std::pair<Word, MobiusMap>> out;
    for_each_word(window, depth,
                  [&](const Word& w, const MobiusMap& m) { out.emplace_back(w, m); },
                  max_words);
    return out;
}

// --------------------------------------------------------------- probe

struct ProbeReport {
    long long window = 0;
    int depth = 0;
    std::size_t words_checked = 0;  // non-identity words
    std::size_t hyperbolic = 0;
    std::size_t parabolic = 0;
    std::size_t elliptic = 0;
    std::size_t identity_matrices = 0;   // non-identity words with matrix = I
    std::size_t distinct_matrices = 0;   // over all words, identity included
    bool fixed_points_all_real = true;
    std::vector<std::string> offenders;  // first few elliptic/identity words

    //! No fixed point in the open upper half-plane at the probed scale.
    bool clean() const {
        return elliptic == 0 && identity_matrices == 0 && fixed_points_all_real;
    }
};

//! Search every reduced word of length <= depth for elements with fixed
//! points in the upper half-plane.  Fixed points solve
//! c w^2 + (d - a) w - b = 0, whose discriminant (d-a)^2 + 4 b c equals
//! trace^2 - 4; it is evaluated exactly.  Distinct-matrix counting gives
//! the freeness evidence: all reduced words should be distinct elements.
inline ProbeReport probe_fixed_points(long long window, int depth,
                                      std::size_t max_words = 1'000'000) {
    ProbeReport report;
    report.window = window;
    report.depth = depth;

    std::set<std::array<BigInt, 4>> seen;
    for_each_word(window, depth, [&](const Word& w, const MobiusMap& mat) {
        seen.insert(mat.entries());
        if (w.empty()) return;
        ++report.words_checked;
        switch (classify(mat)) {
            case MapClass::Identity:
                ++report.identity_matrices;
                if (report.offenders.size() < 8) report.offenders.push_back(w.str());
                break;
            case MapClass::Elliptic:
                ++report.elliptic;
                if (report.offenders.size() < 8) report.offenders.push_back(w.str());
                break;
            case MapClass::Parabolic: ++report.parabolic; break;
            case MapClass::Hyperbolic: ++report.hyperbolic; break;
        }
        if (mat.c() != 0) {
            const BigInt disc = (mat.d() - mat.a()) * (mat.d() - mat.a()) + 4 * mat.b() * mat.c();
            if (disc < 0) report.fixed_points_all_real = false;
        }
        // c == 0 fixes infinity (and a second real point when a != d);
        // nothing in the open half-plane either way.
    }, max_words);
    report.distinct_matrices = seen.size();
    return report;
}

//! Real fixed points of a hyperbolic or parabolic element with c != 0.
inline std::array<double, 2> real_fixed_points(const MobiusMap& t) {
    const double a = to_double(t.a()), b = to_double(t.b());
    const double c = to_double(t.c()), d = to_double(t.d());
    if (c == 0.0) throw std::invalid_argument("real_fixed_points: map fixes infinity");
    const double disc = (d - a) * (d - a) + 4.0 * b * c;
    if (disc < 0.0) throw std::invalid_argument("real_fixed_points: fixed points not real");
    const double s = std::sqrt(disc);
    return {((a - d) - s) / (2.0 * c), ((a - d) + s) / (2.0 * c)};
}

}  // namespace nessie
