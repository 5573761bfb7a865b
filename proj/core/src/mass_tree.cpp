#include "wolff/mass_tree.hpp"

#include <algorithm>
#include <numeric>

namespace wolff {

MassTree::MassTree(const LatticeWindow &window, const AtomicMeasure &measure)
        : window_(window) {
    const std::size_t m = measure.size();
    in_window_.assign(m, false);
    atom_cell_.assign(m, kNoCube);
    atom_loc_.resize(m);

    for (std::size_t j = 0; j < m; ++j) {
        const auto loc = window_.locate(measure.location(j));
        if (!loc) continue;
        in_window_[j] = true;
        atom_loc_[j] = *loc;
        atom_cell_[j] = window_.id_at_depth(*loc, window_.depth());
    }

    order_.resize(m);
    std::iota(order_.begin(), order_.end(), 0u);
    std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
        // outside-the-window atoms sort last; ties keep original order
        const bool ina = in_window_[a], inb = in_window_[b];
        if (ina != inb) return ina;
        if (ina && atom_cell_[a] != atom_cell_[b]) return atom_cell_[a] < atom_cell_[b];
        return a < b;
    });

    cube_mass_.assign(window_.cube_count(), 0.0);
    accumulate(measure.masses(), cube_mass_);
}

void MassTree::accumulate(std::span<const double> per_atom, std::vector<double> &out) const {
    // Finest cells first, in canonical order.
    for (const std::uint32_t j : order_) {
        if (!in_window_[j]) continue;
        out[atom_cell_[j]] += per_atom[j];
    }
    // Coarser cubes are the sums of their children, so the partition identity
    // holds exactly.
    const unsigned kids = window_.children_per_cube();
    const int n = window_.dim();
    for (int d = window_.depth() - 1; d >= 0; --d) {
        for (std::uint32_t root = 0; root < window_.roots().size(); ++root) {
            const CubeId begin = window_.depth_begin(root, d);
            const CubeId child_begin = window_.depth_begin(root, d + 1);
            const std::size_t count = window_.depth_count(d);
            for (std::size_t i = 0; i < count; ++i) {
                const CubeId first_child = child_begin + static_cast<CubeId>(i << n);
                double s = 0.0;
                for (unsigned c = 0; c < kids; ++c) s += out[first_child + c];
                out[begin + static_cast<CubeId>(i)] = s;
            }
        }
    }
}

std::vector<double> MassTree::aggregate(std::span<const double> values) const {
    std::vector<double> out(window_.cube_count(), 0.0);
    accumulate(values, out);
    return out;
}

void MassTree::atom_chain(std::size_t j, std::vector<CubeId> &out) const {
    out.clear();
    if (!in_window_[j]) return;
    for (int d = 0; d <= window_.depth(); ++d) {
        out.push_back(window_.id_at_depth(atom_loc_[j], d));
    }
}

} // namespace wolff
