#include "wolff/generator.hpp"

#include <cmath>

#include "wolff/errors.hpp"
#include "wolff/rng.hpp"

namespace wolff {

namespace {

/// Uniform location inside the root region that never lands on a cell
/// boundary of the finest level (boundary atoms would make half-open
/// membership depend on rounding of downstream arithmetic).
double sample_coordinate(Rng &rng, double lo, double hi, int level_min) {
    for (;;) {
        const double x = rng.uniform(lo, hi);
        const double t = std::ldexp(x, -level_min);
        if (t != std::floor(t)) return x;
    }
}

AtomicMeasure sample_measure(Rng &rng, const InstanceSpec &spec, std::size_t count) {
    const double span = std::ldexp(1.0, spec.level_max);
    std::vector<double> locations, masses;
    for (std::size_t j = 0; j < count; ++j) {
        for (int a = 0; a < spec.n; ++a) {
            locations.push_back(
                    sample_coordinate(rng, 0.0, span * spec.roots_per_axis, spec.level_min));
        }
        masses.push_back(rng.dyadic(spec.mass_lo, spec.mass_hi));
    }
    return AtomicMeasure(spec.n, std::move(locations), std::move(masses));
}

std::vector<KernelEntry> sample_kernel(Rng &rng, const InstanceSpec &spec,
                                       const LatticeWindow &window) {
    const double decay = rng.uniform(spec.decay_lo, spec.decay_hi);
    std::vector<KernelEntry> entries;
    entries.reserve(window.cube_count());
    for (CubeId id = 0; id < window.cube_count(); ++id) {
        const DyadicCube q = window.cube(id);
        const double base = std::exp2(decay * q.level);
        const double jitter = std::exp2(spec.jitter * rng.uniform(-1.0, 1.0));
        entries.push_back({q.level, q.index, base * jitter});
    }
    return entries;
}

} // namespace

Instance generate(const InstanceSpec &spec) {
    if (spec.roots_per_axis < 1) throw Error("generator: roots_per_axis must be positive");

    std::vector<std::vector<std::int64_t>> roots;
    {
        std::vector<std::int64_t> idx(spec.n, 0);
        for (;;) {
            roots.push_back(idx);
            int a = 0;
            while (a < spec.n && ++idx[a] == spec.roots_per_axis) idx[a++] = 0;
            if (a == spec.n) break;
        }
    }
    LatticeWindow window(spec.n, std::vector<double>(spec.n, 0.0), spec.level_min,
                         spec.level_max, roots);

    Instance inst;
    inst.n = spec.n;
    inst.p = spec.p;
    inst.q = spec.q;
    inst.window = window;
    inst.sigma_lebesgue = spec.sigma_lebesgue;

    Rng rng(Rng::mix(spec.seed, 0x77011ff));
    if (!spec.sigma_lebesgue) inst.sigma = sample_measure(rng, spec, spec.sigma_atoms);
    inst.mu = sample_measure(rng, spec, spec.mu_atoms);

    SigmaField sigma_field = spec.sigma_lebesgue ? SigmaField::lebesgue(window)
                                                 : SigmaField::atomic(window, inst.sigma);

    for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
        if (spec.kernel_class == InstanceSpec::KernelClass::riesz) {
            const double alpha =
                    rng.uniform(spec.alpha_lo * spec.n, spec.alpha_hi * spec.n);
            inst.kernel.form = RadialProfile::riesz(spec.n, alpha);
        } else {
            inst.kernel.form = sample_kernel(rng, spec, window);
        }

        if (!std::isfinite(spec.target_A)) return inst;
        DyadicKernel kernel = inst.kernel.is_radial()
                                      ? induce_dyadic(inst.kernel.profile(), window)
                                      : kernel_from_entries(inst.kernel.entries(), window);
        const TraceSetting setting(window, std::move(kernel), sigma_field);
        if (setting.dlbo().A <= spec.target_A) return inst;
    }
    throw TargetAUnreachable("generator: DLBO ceiling not reached within the retry budget");
}

std::vector<double> generate_lambda(const LatticeWindow &window, std::uint64_t seed,
                                    double zero_fraction) {
    Rng rng(Rng::mix(seed, 0x1a3bda));
    std::vector<double> lambda(window.cube_count(), 0.0);
    for (auto &v : lambda) {
        if (rng.uniform() >= zero_fraction) v = rng.dyadic(0.0, 2.0);
    }
    return lambda;
}

} // namespace wolff
