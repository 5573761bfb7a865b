#include "wolff/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wolff/errors.hpp"

namespace wolff {

SigmaField SigmaField::atomic(const LatticeWindow &window, AtomicMeasure measure) {
    SigmaField f;
    f.tree_ = std::make_shared<MassTree>(window, measure);
    f.measure_ = std::move(measure);
    return f;
}

SigmaField SigmaField::lebesgue(const LatticeWindow &window) {
    SigmaField f;
    f.depth_volume_.resize(static_cast<std::size_t>(window.depth()) + 1);
    for (int d = 0; d <= window.depth(); ++d) {
        f.depth_volume_[d] = std::ldexp(1.0, window.dim() * (window.level_max() - d));
    }
    f.depth_of_.resize(window.cube_count());
    for (std::uint32_t root = 0; root < window.roots().size(); ++root) {
        for (int d = 0; d <= window.depth(); ++d) {
            const CubeId begin = window.depth_begin(root, d);
            for (std::size_t i = 0; i < window.depth_count(d); ++i) {
                f.depth_of_[begin + i] = static_cast<std::uint8_t>(d);
            }
        }
    }
    return f;
}

const AtomicMeasure &SigmaField::atoms() const {
    if (!is_atomic()) throw Error("sigma is Lebesgue; atomic measure required here");
    return measure_;
}

const MassTree &SigmaField::tree() const {
    if (!is_atomic()) throw Error("sigma is Lebesgue; aggregation tree required here");
    return *tree_;
}

TraceSetting::TraceSetting(LatticeWindow window, DyadicKernel kernel, SigmaField sigma)
        : window_(std::move(window))
        , kernel_(std::move(kernel))
        , sigma_(std::move(sigma)) {
    if (kernel_.values.size() != window_.cube_count()) {
        throw Error("trace setting: kernel values not aligned with the window");
    }
    for (const double v : kernel_.values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error("trace setting: kernel values must be finite and nonnegative");
        }
    }
    dlbo_ = compute_dlbo();
}

void TraceSetting::chain_of(std::span<const double> x, std::vector<CubeId> &buf) const {
    if (!chain_or_empty(x, buf)) throw OutOfWindow("point lies in no root of the window");
}

bool TraceSetting::chain_or_empty(std::span<const double> x, std::vector<CubeId> &buf) const {
    buf.clear();
    const auto loc = window_.locate(x);
    if (!loc) return false;
    for (int d = 0; d <= window_.depth(); ++d) buf.push_back(window_.id_at_depth(*loc, d));
    return true;
}

// The averaged kernel Kbar(Q)(.) is piecewise constant on finest cells, so
// evaluating the chain sums on every finest cell gives the exact sup and inf
// over each cube: no sampling is involved. Accumulation runs fine -> coarse,
// the same direction as kbar_at, so both agree bit for bit.
DlboResult TraceSetting::compute_dlbo() const {
    const int D = window_.depth();
    const std::size_t cells = window_.depth_count(D);
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> lo(window_.cube_count(), inf);
    std::vector<double> hi(window_.cube_count(), -inf);
    std::vector<CubeId> ancestors(static_cast<std::size_t>(D) + 1);

    for (std::uint32_t root = 0; root < window_.roots().size(); ++root) {
        const CubeId cell_begin = window_.depth_begin(root, D);
        for (std::size_t path = 0; path < cells; ++path) {
            // ancestor ids of this finest cell, fine -> coarse
            CubeId id = cell_begin + static_cast<CubeId>(path);
            for (int d = D; d >= 0; --d) {
                ancestors[d] = id;
                if (d > 0) id = window_.parent_id(id);
            }
            double suffix = 0.0;
            for (int d = D; d >= 0; --d) {
                const CubeId q = ancestors[d];
                suffix += kernel_.values[q] * sigma_.of_cube(q);
                lo[q] = std::min(lo[q], suffix);
                hi[q] = std::max(hi[q], suffix);
            }
        }
    }

    DlboResult result;
    result.kbar_inf.assign(window_.cube_count(), 0.0);
    result.A = 1.0;
    for (CubeId q = 0; q < window_.cube_count(); ++q) {
        const double sq = sigma_.of_cube(q);
        if (!(sq > 0.0)) continue; // zero-mass cubes: Kbar(Q) = 0, DLBO ratio skipped
        result.kbar_inf[q] = lo[q] / sq;
        const double ratio = lo[q] > 0.0 ? hi[q] / lo[q] : (hi[q] > 0.0 ? inf : 1.0);
        if (ratio > result.A) {
            result.A = ratio;
            result.worst_cube = q;
        }
    }
    return result;
}

double TraceSetting::kbar_at(CubeId id, std::span<const double> x) const {
    const auto loc = window_.locate(x);
    const int dq = window_.depth_of(id);
    if (!loc || window_.id_at_depth(*loc, dq) != id) {
        throw Error("kbar_at: point does not lie in the cube");
    }
    const double sq = sigma_.of_cube(id);
    if (!(sq > 0.0)) return 0.0;
    double suffix = 0.0;
    for (int d = window_.depth(); d >= dq; --d) {
        const CubeId q = window_.id_at_depth(*loc, d);
        suffix += kernel_.values[q] * sigma_.of_cube(q);
    }
    return suffix / sq;
}

double TraceSetting::kbar_at(const DyadicCube &Q, std::span<const double> x) const {
    const CubeId id = window_.id_of(Q);
    if (id == kNoCube) throw Error("kbar_at: cube is not part of the window");
    return kbar_at(id, x);
}

double TraceSetting::apply_T(std::span<const double> f, std::span<const double> x) const {
    const AtomicMeasure &atoms = sigma_.atoms();
    if (f.size() != atoms.size()) throw Error("apply_T: f must live on sigma's atoms");
    std::vector<double> weighted(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (!(f[j] >= 0.0)) throw Error("apply_T: f must be nonnegative");
        weighted[j] = f[j] * atoms.mass(j);
    }
    const auto field = sigma_.tree().aggregate(weighted);
    std::vector<CubeId> chain;
    chain_of(x, chain);
    double total = 0.0;
    for (const CubeId q : chain) total += kernel_.values[q] * field[q];
    return total;
}

std::vector<double> TraceSetting::apply_T_sweep(std::span<const double> f,
                                                const AtomicMeasure &points) const {
    const AtomicMeasure &atoms = sigma_.atoms();
    if (f.size() != atoms.size()) throw Error("apply_T_sweep: f must live on sigma's atoms");
    std::vector<double> weighted(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) weighted[j] = f[j] * atoms.mass(j);
    const auto field = sigma_.tree().aggregate(weighted);

    std::vector<double> out(points.size(), 0.0);
    std::vector<CubeId> chain;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!chain_or_empty(points.location(i), chain)) continue;
        double total = 0.0;
        for (const CubeId q : chain) total += kernel_.values[q] * field[q];
        out[i] = total;
    }
    return out;
}

std::vector<double> TraceSetting::wolff_general_field(const AtomicMeasure &nu) const {
    std::vector<double> field(window_.cube_count(), 0.0);
    const int D = window_.depth();
    std::vector<CubeId> chain(static_cast<std::size_t>(D) + 1);
    for (std::size_t j = 0; j < nu.size(); ++j) {
        const auto loc = window_.locate(nu.location(j));
        if (!loc) continue;
        for (int d = 0; d <= D; ++d) chain[d] = window_.id_at_depth(*loc, d);
        // suffix sums reproduce Kbar(Q)(y_j) for every cube of the chain
        double suffix = 0.0;
        for (int d = D; d >= 0; --d) {
            const CubeId q = chain[d];
            suffix += kernel_.values[q] * sigma_.of_cube(q);
            const double sq = sigma_.of_cube(q);
            if (sq > 0.0) field[q] += (suffix / sq) * nu.mass(j);
        }
    }
    return field;
}

double TraceSetting::wolff_general_from_field(std::span<const double> field, const Exponents &e,
                                              std::span<const double> x) const {
    std::vector<CubeId> chain;
    chain_of(x, chain);
    double total = 0.0;
    for (const CubeId q : chain) {
        total += kernel_.values[q] * powr(field[q], e.pm1()) * sigma_.of_cube(q);
    }
    return total;
}

double TraceSetting::wolff_general(const AtomicMeasure &nu, const Exponents &e,
                                   std::span<const double> x) const {
    return wolff_general_from_field(wolff_general_field(nu), e, x);
}

double TraceSetting::wolff_dlbo_from_field(std::span<const double> nu_cube_mass,
                                           const Exponents &e,
                                           std::span<const double> x) const {
    std::vector<CubeId> chain;
    chain_of(x, chain);
    double total = 0.0;
    for (const CubeId q : chain) {
        total += kernel_.values[q] * powr(dlbo_.kbar_inf[q], e.pm1()) *
                 powr(nu_cube_mass[q], e.pm1()) * sigma_.of_cube(q);
    }
    return total;
}

double TraceSetting::wolff_dlbo_or_zero(std::span<const double> nu_cube_mass, const Exponents &e,
                                        std::span<const double> x) const {
    std::vector<CubeId> chain;
    if (!chain_or_empty(x, chain)) return 0.0;
    double total = 0.0;
    for (const CubeId q : chain) {
        total += kernel_.values[q] * powr(dlbo_.kbar_inf[q], e.pm1()) *
                 powr(nu_cube_mass[q], e.pm1()) * sigma_.of_cube(q);
    }
    return total;
}

double TraceSetting::wolff_dlbo(const AtomicMeasure &nu, const Exponents &e,
                                std::span<const double> x) const {
    const MassTree tree(window_, nu);
    return wolff_dlbo_from_field(tree.cube_mass(), e, x);
}

double TraceSetting::energy(const AtomicMeasure &nu, const Exponents &e) const {
    const AtomicMeasure &atoms = sigma_.atoms();
    const MassTree nu_tree(window_, nu);
    const auto &nu_mass = nu_tree.cube_mass();

    double total = 0.0;
    std::vector<CubeId> chain;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        sigma_.tree().atom_chain(j, chain);
        double t = 0.0;
        for (const CubeId q : chain) t += kernel_.values[q] * nu_mass[q];
        total += atoms.mass(j) * powr(t, e.p_prime());
    }
    return total;
}

double TraceSetting::wolff_energy(const AtomicMeasure &nu, const Exponents &e) const {
    const MassTree nu_tree(window_, nu);
    const auto &nu_mass = nu_tree.cube_mass();

    double total = 0.0;
    std::vector<CubeId> chain;
    for (std::size_t j = 0; j < nu.size(); ++j) {
        nu_tree.atom_chain(j, chain);
        double w = 0.0;
        for (const CubeId q : chain) {
            w += kernel_.values[q] * powr(dlbo_.kbar_inf[q], e.pm1()) *
                 powr(nu_mass[q], e.pm1()) * sigma_.of_cube(q);
        }
        total += nu.mass(j) * w;
    }
    return total;
}

CarlesonResult TraceSetting::carleson_constant(const AtomicMeasure &mu, const Exponents &e) const {
    const MassTree mu_tree(window_, mu);
    const auto &mu_mass = mu_tree.cube_mass();

    CarlesonResult result;
    result.sums.assign(window_.cube_count(), 0.0);
    for (CubeId q = 0; q < window_.cube_count(); ++q) {
        result.sums[q] = kernel_.values[q] * powr(dlbo_.kbar_inf[q], e.pm1()) *
                         powr(mu_mass[q], e.p_prime()) * sigma_.of_cube(q);
    }
    // bottom-up: S(P) = own term + children sums
    const unsigned kids = window_.children_per_cube();
    const int n = window_.dim();
    for (int d = window_.depth() - 1; d >= 0; --d) {
        for (std::uint32_t root = 0; root < window_.roots().size(); ++root) {
            const CubeId begin = window_.depth_begin(root, d);
            const CubeId child_begin = window_.depth_begin(root, d + 1);
            for (std::size_t i = 0; i < window_.depth_count(d); ++i) {
                double s = 0.0;
                const CubeId first_child = child_begin + static_cast<CubeId>(i << n);
                for (unsigned c = 0; c < kids; ++c) s += result.sums[first_child + c];
                result.sums[begin + static_cast<CubeId>(i)] += s;
            }
        }
    }

    double best = -1.0;
    CubeId argmax = kNoCube;
    for (CubeId q = 0; q < window_.cube_count(); ++q) {
        if (mu_mass[q] > 0.0) {
            const double ratio = result.sums[q] / mu_mass[q];
            bool better = ratio > best;
            if (!better && ratio == best && argmax != kNoCube) {
                // ties: coarser level first, then lexicographic index
                const int dq = window_.depth_of(q), da = window_.depth_of(argmax);
                if (dq < da) better = true;
                else if (dq == da) better = window_.cube(q).index < window_.cube(argmax).index;
            }
            if (better) {
                best = ratio;
                argmax = q;
            }
        } else if (result.sums[q] > 0.0) {
            throw Infeasible("carleson: cube with positive sum but zero mu mass");
        }
    }

    if (best > 0.0) {
        result.status = CarlesonResult::Status::ok;
        result.B = best;
        result.argmax = argmax;
    } else {
        // mu carries no mass where the kernel lives: 0/0, B = 0 by convention
        result.status = CarlesonResult::Status::vacuous;
        result.B = 0.0;
        result.argmax = kNoCube;
    }
    return result;
}

Mu1Result TraceSetting::make_mu1(const AtomicMeasure &mu, const Exponents &e) const {
    const MassTree mu_tree(window_, mu);
    const auto &mu_mass = mu_tree.cube_mass();

    Mu1Result result;
    std::vector<double> locations, masses;
    std::vector<CubeId> chain;
    for (std::size_t j = 0; j < mu.size(); ++j) {
        mu_tree.atom_chain(j, chain);
        double w = 0.0;
        for (const CubeId q : chain) {
            w += kernel_.values[q] * powr(dlbo_.kbar_inf[q], e.pm1()) *
                 powr(mu_mass[q], e.pm1()) * sigma_.of_cube(q);
        }
        if (w > 0.0) {
            const auto x = mu.location(j);
            locations.insert(locations.end(), x.begin(), x.end());
            masses.push_back(mu.mass(j) / powr(w, e.p() - 1.0));
        } else {
            ++result.dropped;
        }
    }
    result.mu1 = AtomicMeasure(mu.dim(), std::move(locations), std::move(masses));
    return result;
}

} // namespace wolff
