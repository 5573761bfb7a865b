#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "wolff/exponents.hpp"
#include "wolff/kernel.hpp"
#include "wolff/measure.hpp"

namespace wolff {

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

/// Volume of the n-dimensional unit ball.
double unit_ball_volume(int n);

/// Reference measure of the continuous theory: an atomic measure or Lebesgue
/// measure (density 1), whose ball mass is the closed form omega_n r^n.
class ReferenceMeasure {
public:
    static ReferenceMeasure atomic(AtomicMeasure m);
    static ReferenceMeasure lebesgue(int n);

    bool is_atomic() const { return atomic_; }
    int dim() const { return n_; }
    const AtomicMeasure &atoms() const { return measure_; }
    double ball(std::span<const double> x, double r) const; // open balls

private:
    bool atomic_ = false;
    int n_ = 1;
    AtomicMeasure measure_;
};

/// kbar(r)(x) = (1/sigma(B(x,r))) integral_0^r k(l) sigma(B(x,l)) dl/l,
/// integrated exactly (piecewise power laws between atom distances and table
/// breakpoints). Throws EmptyBall when sigma(B(x,r)) = 0 and DivergentTail
/// when the head integral diverges (a sigma atom at x makes it diverge for
/// every admissible kernel).
double kbar_radial(const RadialProfile &k, const ReferenceMeasure &sigma,
                   std::span<const double> x, double r);

/// Convolution-form average kbar(r) = (1/r^n) integral_0^r k(t) t^(n-1) dt;
/// for Lebesgue sigma this coincides with kbar_radial.
double kbar_convolution(const RadialProfile &k, double r);

/// Sampled LBO oscillation constant: max over declared balls of sup/inf of
/// kbar(r)(y) over the probe points inside the ball. A lower bound on the true
/// A; probes with empty or divergent averages are skipped and counted.
struct LboSampleSpec {
    struct Ball {
        Point center;
        double radius;
    };
    std::vector<Ball> balls;
    std::vector<std::vector<Point>> probes; // one list per ball
};
struct LboResult {
    double A = 1.0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
};
LboResult lbo_constant(const RadialProfile &k, const ReferenceMeasure &sigma,
                       const LboSampleSpec &spec);

struct QuadratureOptions {
    double rel_tol = 1e-8;
    int nodes_per_decade = 64;
    bool force_quadrature = false; // bypass the Riesz/Lebesgue closed form
};

/// Truncated continuous Wolff potential in LBO form,
///   W^R(x) = integral_0^R k(r) sigma(B(x,r)) kbar(r)(x)^(p'-1) mu(B(x,r))^(p'-1) dr/r.
/// Riesz kernel + Lebesgue sigma integrates in closed form; other cases use
/// adaptive log-grid quadrature with analytic head and tail pieces.
/// Divergence is decided by exponent analysis, never numerically.
double wolff_continuous(const RadialProfile &k, const ReferenceMeasure &sigma,
                        const AtomicMeasure &mu, const Exponents &e,
                        std::span<const double> x, double R = kInfiniteRadius,
                        const QuadratureOptions &opts = {});

/// Convolution Wolff potential (sigma = Lebesgue implied):
///   W_k[mu](x) = integral_0^R k(r) kbar(r)^(1/(p-1)) mu(B(x,r))^(1/(p-1)) r^(n-1) dr.
/// Equals wolff_continuous with Lebesgue sigma divided by omega_n.
double wolff_convolution(const RadialProfile &k, const AtomicMeasure &mu,
                         const Exponents &e, std::span<const double> x,
                         double R = kInfiniteRadius, const QuadratureOptions &opts = {});

struct MonteCarloOptions {
    std::vector<double> box_lo, box_hi; // empty: padded bounding box of mu
    int strata_per_axis = 8;
    int samples_per_stratum = 256;
    std::uint64_t seed = 0x5eed;
};

/// Energy integral (T_k[mu])^p' dsigma. Exact for atomic sigma; stratified
/// seeded Monte Carlo over a declared box for Lebesgue sigma, with the
/// standard error reported. Throws SingularEvaluation when a sigma atom
/// coincides with a mu atom and k is unbounded at 0.
struct EnergyResult {
    double value = 0.0;
    double std_error = 0.0; // 0 for the exact atomic path
    std::size_t samples = 0;
};
EnergyResult energy_continuous(const RadialProfile &k, const ReferenceMeasure &sigma,
                               const AtomicMeasure &mu, const Exponents &e,
                               const MonteCarloOptions &mc = {});

/// Dyadic energies over shifted lattices D+z with K(Q) = k(side(Q)):
/// sup_z integral W^{D+z}[mu] dmu, the discrete side of the continuous-energy
/// comparison. Each shift gets its own covering window.
struct ShiftedEnergyResult {
    double sup = 0.0;
    std::vector<double> per_shift;
};
ShiftedEnergyResult shifted_energy_sup(const RadialProfile &k, const ReferenceMeasure &sigma,
                                       const AtomicMeasure &mu, const Exponents &e,
                                       std::span<const Point> shifts, int level_min,
                                       int level_max);

/// Sampled doubling ratio sup sigma(B(x,2r))/sigma(B(x,r)) over seeded probes;
/// reported as metadata only (atomic measures are never globally doubling).
double sampled_doubling_ratio(const ReferenceMeasure &sigma, std::uint64_t seed,
                              int probes = 64);

} // namespace wolff
