#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace wolff {

enum class BallMode { open, closed };

/// Finite weighted point set in R^n. Stores locations as one flat row-major
/// array. Immutable after construction.
class AtomicMeasure {
public:
    AtomicMeasure() = default;
    AtomicMeasure(int n, std::vector<double> locations, std::vector<double> masses);

    int dim() const { return n_; }
    std::size_t size() const { return masses_.size(); }
    bool empty() const { return masses_.empty(); }

    std::span<const double> location(std::size_t j) const {
        return {locations_.data() + static_cast<std::size_t>(n_) * j, static_cast<std::size_t>(n_)};
    }
    double mass(std::size_t j) const { return masses_[j]; }
    const std::vector<double> &masses() const { return masses_; }
    const std::vector<double> &locations() const { return locations_; }

    double total_mass() const;

    /// Same atom locations with new masses.
    AtomicMeasure with_masses(std::vector<double> masses) const;

    bool operator==(const AtomicMeasure &other) const = default;

private:
    int n_ = 0;
    std::vector<double> locations_;
    std::vector<double> masses_;
};

/// Mass of the open (|x - a| < r) or closed (|x - a| <= r) ball around x.
/// As a function of r the open variant is left-continuous, the closed one
/// right-continuous.
double ball_measure(const AtomicMeasure &m, std::span<const double> x, double r,
                    BallMode mode = BallMode::open);

/// Euclidean distance helper shared by measure and continuum code.
double distance(std::span<const double> a, std::span<const double> b);

} // namespace wolff
