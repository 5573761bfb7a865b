#pragma once

#include <optional>
#include <vector>

#include "wolff/window.hpp"

namespace wolff {

/// Nonincreasing positive radial profile r -> k(r), either a Riesz power law
/// or a finite table. Tables are right-continuous steps or log-linear between
/// breakpoints, constant below the first breakpoint and zero beyond the last
/// (the compact-support truncation that keeps untruncated radial integrals
/// finite). Dilation k_c(r) = k(c r) is materialized by dilate().
class RadialProfile {
public:
    enum class Kind { riesz, table };
    enum class Interp { step, loglinear };

    /// k(r) = scale * r^(alpha - n), 0 < alpha < n.
    static RadialProfile riesz(int n, double alpha, double scale = 1.0);
    /// Table with ascending positive breakpoints and nonincreasing positive values.
    static RadialProfile table(int n, std::vector<double> breakpoints, std::vector<double> values,
                               Interp interp = Interp::step);

    Kind kind() const { return kind_; }
    int dim() const { return n_; }
    double alpha() const { return alpha_; }
    double scale() const { return scale_; }
    const std::vector<double> &breakpoints() const { return rs_; }
    const std::vector<double> &values() const { return ks_; }
    Interp interp() const { return interp_; }

    double operator()(double r) const;
    /// k(0+); +infinity for Riesz profiles.
    double limit_at_zero() const;

    /// One power-law piece k(r) = coef * r^expo on (lo, hi].
    struct Piece {
        double lo, hi, coef, expo;
    };
    /// Power-law decomposition of the profile over (0, inf). Pieces with
    /// coef = 0 (beyond table support) are included so callers see the full
    /// axis. Riesz profiles yield a single piece.
    std::vector<Piece> pieces() const;

    RadialProfile dilated(double c) const;

private:
    RadialProfile() = default;
    Kind kind_ = Kind::riesz;
    int n_ = 1;
    double alpha_ = 0.5;
    double scale_ = 1.0;
    std::vector<double> rs_, ks_;
    Interp interp_ = Interp::step;
};

/// k_c(r) = k(c r); for Riesz profiles this folds into the scale factor.
RadialProfile dilate(const RadialProfile &k, double c);

/// Nonnegative cube weights K(Q) supported on a window; cubes outside the
/// window have K = 0 by the truncation convention. Optionally remembers the
/// radial profile it was induced from (K(Q) = k(side(Q))).
struct DyadicKernel {
    std::vector<double> values; // indexed by CubeId
    std::optional<RadialProfile> radial_origin;
};

/// Kernel induced from a radial profile: K(Q) = profile(2^level(Q)).
DyadicKernel induce_dyadic(const RadialProfile &profile, const LatticeWindow &window);

/// Kernel from explicit (level, index, value) entries; entries must lie in
/// the window and be nonnegative.
struct KernelEntry {
    int level;
    std::vector<std::int64_t> index;
    double value;
};
DyadicKernel kernel_from_entries(const std::vector<KernelEntry> &entries, const LatticeWindow &window);

} // namespace wolff
