#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wolff/geometry.hpp"

namespace wolff {

using CubeId = std::uint32_t;
inline constexpr CubeId kNoCube = static_cast<CubeId>(-1);

/// Finite truncation of the dyadic family: all descendants of a set of root
/// cells at level_max, down to level_min, on the lattice shifted by `shift`.
/// Kernels are zero outside the window, which makes every sum in the library
/// finite and exact.
///
/// Cube ids are dense: id = root_ordinal * cubes_per_root + offset(depth) + path,
/// where `path` encodes the child selectors from the root (coarse bits first).
/// Children of a cube are therefore contiguous.
class LatticeWindow {
public:
    LatticeWindow(int n,
                  std::vector<double> shift,
                  int level_min,
                  int level_max,
                  std::vector<std::vector<std::int64_t>> roots);

    int dim() const { return n_; }
    int level_min() const { return level_min_; }
    int level_max() const { return level_max_; }
    int depth() const { return level_max_ - level_min_; }
    std::span<const double> shift() const { return shift_; }
    const std::vector<std::vector<std::int64_t>> &roots() const { return roots_; }

    std::size_t cube_count() const { return cube_count_; }
    std::size_t cubes_per_root() const { return cubes_per_root_; }
    unsigned children_per_cube() const { return 1u << n_; }

    int depth_of(CubeId id) const;
    int level_of(CubeId id) const { return level_max_ - depth_of(id); }
    DyadicCube cube(CubeId id) const;

    /// Id of the cube with the given level and index, or kNoCube when the
    /// cube is not part of the window.
    CubeId id_of(int level, std::span<const std::int64_t> index) const;
    CubeId id_of(const DyadicCube &q) const { return id_of(q.level, q.index); }

    CubeId parent_id(CubeId id) const; // kNoCube for roots
    CubeId child_id(CubeId id, unsigned selector) const;
    bool is_ancestor(CubeId coarse, CubeId fine) const;

    /// First id at the given depth inside the given root; ids run contiguously
    /// over all 2^(n*depth) paths.
    CubeId depth_begin(std::uint32_t root_ordinal, int depth) const;
    std::size_t depth_count(int depth) const { return std::size_t{1} << (static_cast<std::size_t>(n_) * depth); }

    /// Locates x at the finest level: root ordinal plus child path. Returns
    /// nothing when x lies in no root.
    struct Location {
        std::uint32_t root = 0;
        std::int64_t path = 0;
    };
    std::optional<Location> locate(std::span<const double> x) const;

    /// Id of the depth-d ancestor cell of a located point.
    CubeId id_at_depth(const Location &loc, int d) const;

    /// All window cubes containing x, ordered coarse -> fine. Throws
    /// OutOfWindow when x lies in no root.
    std::vector<CubeId> chain_ids(std::span<const double> x) const;
    std::vector<DyadicCube> chain(std::span<const double> x) const;

    bool operator==(const LatticeWindow &other) const;

private:
    int n_;
    std::vector<double> shift_;
    int level_min_;
    int level_max_;
    std::vector<std::vector<std::int64_t>> roots_; // sorted lexicographically
    std::vector<std::size_t> depth_offset_;        // per-root offset of each depth block
    std::size_t cubes_per_root_ = 0;
    std::size_t cube_count_ = 0;
};

} // namespace wolff
