#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "wolff/exponents.hpp"
#include "wolff/kernel.hpp"
#include "wolff/mass_tree.hpp"
#include "wolff/measure.hpp"
#include "wolff/window.hpp"

namespace wolff {

/// The reference measure sigma of a dyadic setting: either an atomic measure
/// (cube masses from its aggregation tree) or Lebesgue measure, whose cube
/// mass is the exact cell volume 2^(n*level).
class SigmaField {
public:
    static SigmaField atomic(const LatticeWindow &window, AtomicMeasure measure);
    static SigmaField lebesgue(const LatticeWindow &window);

    bool is_atomic() const { return tree_ != nullptr; }
    double of_cube(CubeId id) const {
        return is_atomic() ? tree_->cube_measure(id) : depth_volume_[depth_of_[id]];
    }
    /// Lebesgue cell volume at a given depth (valid for both kinds only when
    /// lebesgue; atomic callers use of_cube).
    const AtomicMeasure &atoms() const;
    const MassTree &tree() const;

private:
    SigmaField() = default;
    AtomicMeasure measure_;
    std::shared_ptr<const MassTree> tree_; // shared: SigmaField is copied by value
    std::vector<double> depth_volume_;     // lebesgue: |Q| per depth
    std::vector<std::uint8_t> depth_of_;   // lebesgue: depth per cube id
};

/// Exact DLBO data: the least A with sup <= A * inf of the averaged kernel
/// over each window cube (evaluated on every finest cell, which is exact
/// because the kernel vanishes below level_min), plus the per-cube infima
/// Kbar(Q). Cubes with sigma(Q) = 0 are skipped and get Kbar(Q) = 0.
struct DlboResult {
    double A = 1.0;
    std::vector<double> kbar_inf;      // per cube id
    CubeId worst_cube = kNoCube;       // cube attaining the ratio A
};

struct CarlesonResult {
    enum class Status { ok, vacuous };
    Status status = Status::ok;
    double B = 0.0;
    CubeId argmax = kNoCube;
    /// Per-cube Carleson sums S(P) = sum_{Q subset P} K(Q) Kbar(Q)^(p'-1) mu(Q)^p' sigma(Q).
    std::vector<double> sums;
};

struct Mu1Result {
    AtomicMeasure mu1;
    std::size_t dropped = 0; // atoms with vanishing Wolff potential, removed
};

/// A fixed triple (window, kernel, sigma): the dyadic operator T_K together
/// with everything derived from it. Immutable after construction; all
/// methods are const and safe to call concurrently.
class TraceSetting {
public:
    TraceSetting(LatticeWindow window, DyadicKernel kernel, SigmaField sigma);

    const LatticeWindow &window() const { return window_; }
    const std::vector<double> &kernel_values() const { return kernel_.values; }
    const DyadicKernel &kernel() const { return kernel_; }
    const SigmaField &sigma() const { return sigma_; }
    const DlboResult &dlbo() const { return dlbo_; }

    /// Averaged kernel Kbar(Q)(x) = (1/sigma(Q)) * sum over the sub-chain of x
    /// inside Q of K(Q') sigma(Q'); 0 when sigma(Q) = 0. x must lie in Q.
    double kbar_at(const DyadicCube &Q, std::span<const double> x) const;
    double kbar_at(CubeId id, std::span<const double> x) const;

    /// T_K[f dsigma](x) = sum over the chain of x of K(Q) * integral_Q f dsigma.
    /// f lives on sigma's atoms (sigma must be atomic). Throws OutOfWindow.
    double apply_T(std::span<const double> f, std::span<const double> x) const;
    /// Same operator evaluated at many points through one aggregation pass.
    std::vector<double> apply_T_sweep(std::span<const double> f,
                                      const AtomicMeasure &points) const;

    /// Per-cube inner integrals integral_Q Kbar(Q)(y) dnu(y) of the general
    /// Wolff potential; reusable across evaluation points.
    std::vector<double> wolff_general_field(const AtomicMeasure &nu) const;
    double wolff_general(const AtomicMeasure &nu, const Exponents &e,
                         std::span<const double> x) const;
    double wolff_general_from_field(std::span<const double> field, const Exponents &e,
                                    std::span<const double> x) const;

    /// Simplified (DLBO) Wolff potential using the per-cube infima Kbar(Q).
    double wolff_dlbo(const AtomicMeasure &nu, const Exponents &e,
                      std::span<const double> x) const;
    double wolff_dlbo_from_field(std::span<const double> nu_cube_mass, const Exponents &e,
                                 std::span<const double> x) const;
    /// Zero-outside-the-window variant used by integrals over atoms.
    double wolff_dlbo_or_zero(std::span<const double> nu_cube_mass, const Exponents &e,
                              std::span<const double> x) const;

    /// Energy integral (T_K[nu])^p' dsigma (sigma atomic).
    double energy(const AtomicMeasure &nu, const Exponents &e) const;
    /// integral W[nu] dnu via the per-atom form sum_j w_j W(x_j).
    double wolff_energy(const AtomicMeasure &nu, const Exponents &e) const;

    /// Least B with sum_{Q subset P} K(Q) Kbar(Q)^(p'-1) mu(Q)^p' sigma(Q) <= B mu(P)
    /// over window cubes P with mu(P) > 0. Reports the maximizing cube
    /// (ties: coarser level first, then lexicographic index).
    CarlesonResult carleson_constant(const AtomicMeasure &mu, const Exponents &e) const;

    /// Deflated measure dmu1 = dmu / W[mu]^(p-1); atoms whose Wolff potential
    /// vanishes are dropped (their whole chain carries no kernel mass).
    Mu1Result make_mu1(const AtomicMeasure &mu, const Exponents &e) const;

private:
    LatticeWindow window_;
    DyadicKernel kernel_;
    SigmaField sigma_;
    DlboResult dlbo_;

    void chain_of(std::span<const double> x, std::vector<CubeId> &buf) const;
    bool chain_or_empty(std::span<const double> x, std::vector<CubeId> &buf) const;
    DlboResult compute_dlbo() const;
};

} // namespace wolff
