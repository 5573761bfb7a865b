#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wolff/dyadic.hpp"
#include "wolff/exponents.hpp"

namespace wolff {

/// Wolff-norm certificate for the trace inequality: the least constant C in
/// integral |T_K[f dsigma]|^q dmu <= C ||f||_{L^p(sigma)}^q is equivalent to
/// value = ||W[mu]||_{L^s(mu)}^{q/p'} with s = q(p-1)/(p-q).
struct Certificate {
    double s = 0.0;
    double wolff_norm = 0.0; // ||W[mu]||_{L^s(mu)}
    double value = 0.0;      // wolff_norm^(q/p')
    bool finite = true;
};

/// s = q(p-1)/(p-q).
double s_exponent(const Exponents &e);

Certificate certificate(const TraceSetting &setting, const AtomicMeasure &mu,
                        const Exponents &e);

/// Rayleigh quotient R(f) = ||T[f dsigma]||_{L^q(mu)} / ||f||_{L^p(sigma)}
/// for nonnegative f on sigma's atoms. Returns 0 when either norm vanishes.
double rayleigh_quotient(const TraceSetting &setting, const AtomicMeasure &mu,
                         const Exponents &e, std::span<const double> f);
/// Signed variant (numerator uses |T[f dsigma]|); used to exercise the
/// R(|f|) >= R(f) reduction to nonnegative densities.
double rayleigh_quotient_signed(const TraceSetting &setting, const AtomicMeasure &mu,
                                const Exponents &e, std::span<const double> f);

struct AscentConfig {
    int restarts = 32;
    double tolerance = 1e-9;
    int max_iterations = 400;
    std::uint64_t seed = 0x5eed;
};

/// Estimated least operator quotient sup R(f) over f >= 0, with the witness
/// density. `value` is the norm quotient R; the least constant of the trace
/// inequality itself is value^q (same homogeneity as Certificate::value).
struct ConstantEstimate {
    double value = 0.0;                  // max R found (lower bound on the true sup)
    std::vector<double> witness_f;       // normalized: ||witness||_{L^p(sigma)} = 1
    std::string method = "multiplicative_ascent";
    int iterations = 0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
};

/// Multiplicative-ascent maximization of R over nonnegative densities with
/// seeded restarts; for q < 1 the problem is nonconcave and the restarts are
/// what makes the estimate trustworthy. Throws NoMass when sigma is empty.
ConstantEstimate best_constant(const TraceSetting &setting, const AtomicMeasure &mu,
                               const Exponents &e, const AscentConfig &config = {});

/// Recomputes R from the stored witness; throws InvariantViolation when it
/// disagrees with `value` by more than 1e-10 relative.
void verify_estimate(const TraceSetting &setting, const AtomicMeasure &mu,
                     const Exponents &e, const ConstantEstimate &estimate);

/// Exhaustive grid search of R over the nonnegative sector of the unit
/// L^p(sigma) sphere; only for at most 3 sigma atoms. `grid` is the number of
/// subdivisions per free direction.
double best_constant_oracle(const TraceSetting &setting, const AtomicMeasure &mu,
                            const Exponents &e, int grid);

/// Margins of the two lower estimates behind the necessity proof: with
/// f = sup_Q lambda_Q chi_Q and g = sum_Q lambda_Q chi_Q,
///   T[f dsigma] >= sum_Q K(Q) lambda_Q sigma(Q) chi_Q
///   T[g dsigma] >= sum_Q lambda_Q sigma(Q) Kbar(Q) chi_Q
/// evaluated at every finest cell midpoint and every sigma atom.
struct WitnessReport {
    double min_margin_f = 0.0;
    double min_margin_g = 0.0;
    std::size_t probes = 0;
};
WitnessReport witness_bounds(const TraceSetting &setting, std::span<const double> lambda);

/// One certified instance of an equivalence family.
struct EquivalenceRow {
    double best = 0.0;        // R estimate (or oracle value)
    double trace_constant = 0.0; // best^q, the least constant of the q-th power inequality
    double certificate = 0.0; // Certificate::value
    double ratio = 0.0;       // trace_constant / certificate
};

struct EquivalenceSummary {
    std::vector<EquivalenceRow> rows;
    double min_ratio = 0.0, max_ratio = 0.0, median_ratio = 0.0;
    bool pass = true; // max/min within the declared window, when one is given
};

/// Ratio table over a family of settings sharing (p, q). `window` (when
/// positive) is the admitted max/min spread.
EquivalenceSummary equivalence_report(std::span<const EquivalenceRow> rows, double window = 0.0);

} // namespace wolff
