#include "wolff/measure.hpp"

#include <cmath>

#include "wolff/errors.hpp"

namespace wolff {

AtomicMeasure::AtomicMeasure(int n, std::vector<double> locations, std::vector<double> masses)
        : n_(n)
        , locations_(std::move(locations))
        , masses_(std::move(masses)) {
    if (n_ < 1) throw Error("measure: dimension must be positive");
    if (locations_.size() != masses_.size() * static_cast<std::size_t>(n_)) {
        throw Error("measure: locations/masses size mismatch");
    }
    for (const double w : masses_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw Error("measure: masses must be finite and nonnegative");
    }
    for (const double x : locations_) {
        if (!std::isfinite(x)) throw Error("measure: locations must be finite");
    }
}

double AtomicMeasure::total_mass() const {
    double total = 0.0;
    for (const double w : masses_) total += w;
    return total;
}

AtomicMeasure AtomicMeasure::with_masses(std::vector<double> masses) const {
    return AtomicMeasure(n_, locations_, std::move(masses));
}

double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double ball_measure(const AtomicMeasure &m, std::span<const double> x, double r, BallMode mode) {
    if (!(r > 0.0)) throw Error("ball_measure: radius must be positive");
    double total = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        const double d = distance(x, m.location(j));
        if (mode == BallMode::open ? d < r : d <= r) total += m.mass(j);
    }
    return total;
}

} // namespace wolff
