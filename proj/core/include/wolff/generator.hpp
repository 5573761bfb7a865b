#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "wolff/instance.hpp"

namespace wolff {

/// Deterministic instance generator. Same spec (in particular same seed) ->
/// byte-identical instance file. Atom masses are dyadic rationals so that
/// measure aggregation is exact in double precision; atom coordinates avoid
/// cell boundaries of the window by construction.
struct InstanceSpec {
    std::uint64_t seed = 1;
    int n = 1;
    int level_min = -4;
    int level_max = 0;
    int roots_per_axis = 1; // roots fill {0..roots_per_axis-1}^n at level_max
    std::size_t sigma_atoms = 8;
    std::size_t mu_atoms = 8;
    double mass_lo = 0.5, mass_hi = 2.0;

    enum class KernelClass { jitter_table, riesz };
    KernelClass kernel_class = KernelClass::jitter_table;
    // jitter_table: K(Q) = 2^(decay*level) * 2^(jitter*u), u uniform in [-1,1]
    double decay_lo = 1.0, decay_hi = 2.0;
    double jitter = 0.35;
    // riesz: alpha uniform in [alpha_lo, alpha_hi] * n
    double alpha_lo = 0.15, alpha_hi = 0.85;

    double p = 2.0, q = 1.0;

    /// Kernels are rejection-sampled until dlbo A <= target_A (inf = no constraint).
    double target_A = std::numeric_limits<double>::infinity();
    int max_retries = 64;

    bool sigma_lebesgue = false;
};

/// Throws TargetAUnreachable when the retry budget is exhausted.
Instance generate(const InstanceSpec &spec);

/// Nonnegative cube coefficients lambda for the witness inequalities:
/// dyadic-rational values with the given zero fraction, seeded.
std::vector<double> generate_lambda(const LatticeWindow &window, std::uint64_t seed,
                                    double zero_fraction = 0.5);

} // namespace wolff
