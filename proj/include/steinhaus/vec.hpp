#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace steinhaus {

/// Dense coordinate vector. dim == coords.size().
using Vec = std::vector<double>;

inline void check_finite(std::span<const double> v) {
    for (double c : v)
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
}

inline Vec add(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(std::span<const double> a, double t) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
    return r;
}

inline bool is_zero(std::span<const double> v) {
    for (double c : v)
        if (c != 0.0) return false;
    return true;
}

inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::fabs(c));
    return m;
}

} // namespace steinhaus
