#include "wolff/kernel.hpp"

#include <cmath>
#include <limits>

#include "wolff/errors.hpp"

namespace wolff {

RadialProfile RadialProfile::riesz(int n, double alpha, double scale) {
    if (!(alpha > 0.0 && alpha < static_cast<double>(n))) {
        throw Error("riesz: alpha must lie in (0, n)");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) throw Error("riesz: scale must be positive");
    RadialProfile k;
    k.kind_ = Kind::riesz;
    k.n_ = n;
    k.alpha_ = alpha;
    k.scale_ = scale;
    return k;
}

RadialProfile RadialProfile::table(int n, std::vector<double> breakpoints,
                                   std::vector<double> values, Interp interp) {
    if (breakpoints.empty() || breakpoints.size() != values.size()) {
        throw Error("table kernel: breakpoints and values must be nonempty and equal-sized");
    }
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > 0.0)) throw Error("table kernel: breakpoints must be positive");
        if (i && !(breakpoints[i] > breakpoints[i - 1])) {
            throw Error("table kernel: breakpoints must be strictly ascending");
        }
        if (!(values[i] > 0.0)) throw Error("table kernel: values must be positive");
        if (i && values[i] > values[i - 1]) {
            throw Error("table kernel: values must be nonincreasing");
        }
    }
    RadialProfile k;
    k.kind_ = Kind::table;
    k.n_ = n;
    k.rs_ = std::move(breakpoints);
    k.ks_ = std::move(values);
    k.interp_ = interp;
    return k;
}

double RadialProfile::operator()(double r) const {
    if (!(r > 0.0)) throw Error("radial profile: radius must be positive");
    if (kind_ == Kind::riesz) {
        return scale_ * std::pow(r, alpha_ - n_);
    }
    if (r < rs_.front()) return ks_.front();
    if (r >= rs_.back()) return 0.0; // compact support beyond the last breakpoint
    std::size_t i = 0;
    while (i + 1 < rs_.size() && r >= rs_[i + 1]) ++i;
    if (interp_ == Interp::step) return ks_[i];
    const double b = std::log(ks_[i + 1] / ks_[i]) / std::log(rs_[i + 1] / rs_[i]);
    return ks_[i] * std::pow(r / rs_[i], b);
}

double RadialProfile::limit_at_zero() const {
    if (kind_ == Kind::riesz) return std::numeric_limits<double>::infinity();
    return ks_.front();
}

std::vector<RadialProfile::Piece> RadialProfile::pieces() const {
    const double inf = std::numeric_limits<double>::infinity();
    if (kind_ == Kind::riesz) {
        return {{0.0, inf, scale_, alpha_ - n_}};
    }
    std::vector<Piece> out;
    out.push_back({0.0, rs_.front(), ks_.front(), 0.0}); // constant head
    for (std::size_t i = 0; i + 1 < rs_.size(); ++i) {
        if (interp_ == Interp::step) {
            out.push_back({rs_[i], rs_[i + 1], ks_[i], 0.0});
        } else {
            const double b = std::log(ks_[i + 1] / ks_[i]) / std::log(rs_[i + 1] / rs_[i]);
            out.push_back({rs_[i], rs_[i + 1], ks_[i] / std::pow(rs_[i], b), b});
        }
    }
    out.push_back({rs_.back(), inf, 0.0, 0.0}); // zero tail
    return out;
}

RadialProfile RadialProfile::dilated(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error("dilate: c must be positive and finite");
    RadialProfile k = *this;
    if (kind_ == Kind::riesz) {
        k.scale_ = scale_ * std::pow(c, alpha_ - n_);
    } else {
        for (auto &r : k.rs_) r /= c;
    }
    return k;
}

RadialProfile dilate(const RadialProfile &k, double c) {
    return k.dilated(c);
}

DyadicKernel induce_dyadic(const RadialProfile &profile, const LatticeWindow &window) {
    DyadicKernel kernel;
    kernel.values.assign(window.cube_count(), 0.0);
    // K depends on the level only; fill one value per depth.
    std::vector<double> by_depth(static_cast<std::size_t>(window.depth()) + 1);
    for (int d = 0; d <= window.depth(); ++d) {
        by_depth[d] = profile(std::ldexp(1.0, window.level_max() - d));
    }
    for (std::uint32_t root = 0; root < window.roots().size(); ++root) {
        for (int d = 0; d <= window.depth(); ++d) {
            const CubeId begin = window.depth_begin(root, d);
            for (std::size_t i = 0; i < window.depth_count(d); ++i) {
                kernel.values[begin + i] = by_depth[d];
            }
        }
    }
    kernel.radial_origin = profile;
    return kernel;
}

DyadicKernel kernel_from_entries(const std::vector<KernelEntry> &entries,
                                 const LatticeWindow &window) {
    DyadicKernel kernel;
    kernel.values.assign(window.cube_count(), 0.0);
    for (const auto &entry : entries) {
        if (!(entry.value >= 0.0) || !std::isfinite(entry.value)) {
            throw Error("kernel entry: values must be finite and nonnegative");
        }
        const CubeId id = window.id_of(entry.level, entry.index);
        if (id == kNoCube) throw Error("kernel entry: cube lies outside the window");
        kernel.values[id] = entry.value;
    }
    return kernel;
}

} // namespace wolff
