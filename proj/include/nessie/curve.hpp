#pragma once

// The exponential-sum curve: partial sums of e^{2 pi i (ln n)^4}.  Each
// step is a unit complex number, so the polyline through the partial
// sums wanders with unit speed; plotted, it draws the famous long-necked
// silhouette.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace nessie {

//! Partial sums s_k = sum_{n=1..k} e^{2 pi i (ln n)^4} for k = 1..n_max.
//! The phase is reduced mod 1 before the trig evaluation; (ln n)^4 grows
//! into the thousands and would otherwise waste the double mantissa.
inline std::vector<std::complex<double>> curve_points(int n_max) {
    if (n_max < 1) throw std::invalid_argument("curve_points: need at least one term");
    const double two_pi = 2.0 * std::acos(-1.0);
    std::vector<std::complex<double>> sums;
    sums.reserve(static_cast<std::size_t>(n_max));
    std::complex<double> acc(0.0, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        const double ln = std::log(static_cast<double>(n));
        const double phase = ln * ln * ln * ln;
        acc += std::polar(1.0, two_pi * (phase - std::floor(phase)));
        sums.push_back(acc);
    }
    return sums;
}

}  // namespace nessie
