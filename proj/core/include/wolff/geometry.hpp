#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wolff {

using Point = std::vector<double>;

/// Half-open dyadic cell 2^level (index + [0,1)^n) + shift. The shift is the
/// lattice origin; the standard lattice has shift 0. Side length is 2^level.
struct DyadicCube {
    int level = 0;
    std::vector<std::int64_t> index;
    std::vector<double> shift;

    int dim() const { return static_cast<int>(index.size()); }
    double side() const;
    /// Lower corner coordinate along one axis: index[axis] * 2^level + shift[axis].
    double lower(int axis) const;
    double upper(int axis) const { return lower(axis) + side(); }

    bool contains(std::span<const double> x) const;
    DyadicCube parent() const;
    /// Child selector j has bit a set when the child is the upper half along axis a.
    DyadicCube child(unsigned selector) const;
    /// Ancestor at a coarser level (level_to >= level).
    DyadicCube ancestor_at(int level_to) const;

    bool operator==(const DyadicCube &other) const = default;
    std::string to_string() const;
};

/// Integer coordinate of x along one axis of the level-`level` lattice with
/// the given origin: floor((x - shift) / 2^level). All cube membership in the
/// library reduces to this floor, which keeps membership deterministic.
std::int64_t lattice_coordinate(double x, int level, double shift);

/// The unique cube of the (level, shift) lattice containing x.
DyadicCube cube_at(std::span<const double> x, int level, std::span<const double> shift);

} // namespace wolff
