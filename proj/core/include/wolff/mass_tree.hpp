#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wolff/measure.hpp"
#include "wolff/window.hpp"

namespace wolff {

/// Aggregation tree of one atomic measure over one window. Atoms are bucketed
/// into finest cells once; coarser cube masses are the sums of their 2^n
/// children, so the partition identity (children add up to the parent) holds
/// bit-for-bit by construction. Built once, immutable afterwards.
class MassTree {
public:
    MassTree(const LatticeWindow &window, const AtomicMeasure &measure);

    const LatticeWindow &window() const { return window_; }
    std::size_t atom_count() const { return in_window_.size(); }

    double cube_measure(CubeId id) const { return cube_mass_[id]; }
    const std::vector<double> &cube_mass() const { return cube_mass_; }

    /// Per-cube sums of arbitrary per-atom values (one value per atom of the
    /// measure; atoms outside the window are ignored). Aggregation order is
    /// the canonical order fixed at construction, so results are deterministic.
    /// Cost: O(atoms + cubes).
    std::vector<double> aggregate(std::span<const double> values) const;

    bool atom_in_window(std::size_t j) const { return in_window_[j]; }
    /// Finest-cell id of atom j (kNoCube when outside the window).
    CubeId atom_cell(std::size_t j) const { return atom_cell_[j]; }
    /// Chain of cube ids containing atom j, coarse -> fine; empty when outside.
    void atom_chain(std::size_t j, std::vector<CubeId> &out) const;

    /// Atom indices sorted by (root, finest path, original index).
    const std::vector<std::uint32_t> &canonical_order() const { return order_; }

private:
    LatticeWindow window_;
    std::vector<bool> in_window_;
    std::vector<CubeId> atom_cell_;
    std::vector<LatticeWindow::Location> atom_loc_;
    std::vector<std::uint32_t> order_;
    std::vector<double> cube_mass_;

    void accumulate(std::span<const double> per_atom, std::vector<double> &out) const;
};

} // namespace wolff
