#include "wolff/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "wolff/dyadic.hpp"
#include "wolff/errors.hpp"
#include "wolff/parallel.hpp"
#include "wolff/rng.hpp"

namespace wolff {

double unit_ball_volume(int n) {
    switch (n) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: throw Error("unit_ball_volume: dimension must be 1, 2, or 3");
    }
}

ReferenceMeasure ReferenceMeasure::atomic(AtomicMeasure m) {
    ReferenceMeasure s;
    s.atomic_ = true;
    s.n_ = m.dim();
    s.measure_ = std::move(m);
    return s;
}

ReferenceMeasure ReferenceMeasure::lebesgue(int n) {
    ReferenceMeasure s;
    s.atomic_ = false;
    s.n_ = n;
    return s;
}

double ReferenceMeasure::ball(std::span<const double> x, double r) const {
    if (!(r > 0.0)) throw Error("ball: radius must be positive");
    if (atomic_) return ball_measure(measure_, x, r, BallMode::open);
    return unit_ball_volume(n_) * powr(r, static_cast<double>(n_));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Exact integral of c * r^(g-1) dr over (lo, hi], with lo = 0 and hi = inf
/// allowed. Divergence is decided by the sign of g, never numerically.
double power_piece(double c, double g, double lo, double hi) {
    if (c == 0.0 || lo == hi) return 0.0;
    if (g == 0.0) {
        if (lo == 0.0 || hi == kInf) {
            throw DivergentTail("radial integral diverges logarithmically", g);
        }
        return c * std::log(hi / lo);
    }
    double upper, lower;
    if (hi == kInf) {
        if (g > 0.0) throw DivergentTail("radial integral diverges at infinity", g);
        upper = 0.0;
    } else {
        upper = std::pow(hi, g);
    }
    if (lo == 0.0) {
        if (g < 0.0) throw DivergentTail("radial integral diverges at zero", g);
        lower = 0.0;
    } else {
        lower = std::pow(lo, g);
    }
    return c * (upper - lower) / g;
}

/// Step function l -> mass(B(x, l)) of an atomic measure, for open balls:
/// constant on (breaks[i], breaks[i+1]].
struct RadialSteps {
    double center_mass = 0.0;    // atoms exactly at x
    std::vector<double> breaks;  // distinct positive distances, ascending
    std::vector<double> cum;     // cumulative mass including breaks[i]

    RadialSteps() = default;
    RadialSteps(const AtomicMeasure &m, std::span<const double> x) {
        std::vector<std::pair<double, double>> dm;
        dm.reserve(m.size());
        for (std::size_t j = 0; j < m.size(); ++j) {
            const double d = distance(x, m.location(j));
            if (d == 0.0) {
                center_mass += m.mass(j);
            } else {
                dm.emplace_back(d, m.mass(j));
            }
        }
        std::sort(dm.begin(), dm.end());
        double running = center_mass;
        for (const auto &[d, w] : dm) {
            if (!breaks.empty() && breaks.back() == d) {
                cum.back() += w;
                running += w;
            } else {
                running += w;
                breaks.push_back(d);
                cum.push_back(running);
            }
        }
    }

    double at(double l) const { // mass of the open ball of radius l
        const auto it = std::lower_bound(breaks.begin(), breaks.end(), l);
        if (it == breaks.begin()) return center_mass;
        return cum[static_cast<std::size_t>(it - breaks.begin()) - 1];
    }
    double total() const { return cum.empty() ? center_mass : cum.back(); }
};

/// Exact evaluator of kbar(r)(x) = (1/sigma(B(x,r))) int_0^r k(l) sigma(B(x,l)) dl/l.
/// Cumulative integrals are precomputed at every breakpoint where either the
/// kernel piece or the ball mass changes.
class KbarEvaluator {
public:
    KbarEvaluator(const RadialProfile &k, const ReferenceMeasure &sigma,
                  std::span<const double> x)
            : kernel_(k.pieces())
            , lebesgue_(!sigma.is_atomic())
            , n_(sigma.dim())
            , omega_(unit_ball_volume(sigma.dim())) {
        if (sigma.is_atomic()) steps_ = RadialSteps(sigma.atoms(), x);

        for (const auto &p : kernel_) {
            if (p.lo > 0.0) breakpoints_.push_back(p.lo);
        }
        if (!lebesgue_) {
            breakpoints_.insert(breakpoints_.end(), steps_.breaks.begin(), steps_.breaks.end());
        }
        std::sort(breakpoints_.begin(), breakpoints_.end());
        breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()),
                           breakpoints_.end());

        cumulative_.resize(breakpoints_.size());
        double j = 0.0, prev = 0.0;
        for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
            j += segment(prev, breakpoints_[i]);
            cumulative_[i] = j;
            prev = breakpoints_[i];
        }
    }

    double sigma_ball(double r) const {
        return lebesgue_ ? omega_ * powr(r, static_cast<double>(n_)) : steps_.at(r);
    }

    /// Cumulative integral J(r) = int_0^r k(l) sigma(B(x,l)) dl/l.
    double accumulated(double r) const {
        const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), r);
        const auto i = static_cast<std::size_t>(it - breakpoints_.begin());
        const double base = i == 0 ? 0.0 : cumulative_[i - 1];
        const double from = i == 0 ? 0.0 : breakpoints_[i - 1];
        return base + segment(from, r);
    }

    double operator()(double r) const {
        if (!(r > 0.0)) throw Error("kbar: radius must be positive");
        const double sb = sigma_ball(r);
        if (!(sb > 0.0)) throw EmptyBall("kbar: sigma ball mass vanishes");
        return accumulated(r) / sb;
    }

    const std::vector<double> &breakpoints() const { return breakpoints_; }
    bool lebesgue() const { return lebesgue_; }
    const RadialSteps &steps() const { return steps_; }

private:
    std::vector<RadialProfile::Piece> kernel_;
    bool lebesgue_;
    int n_;
    double omega_;
    RadialSteps steps_;
    std::vector<double> breakpoints_;
    std::vector<double> cumulative_;

    // integral of k(l) sigma(B(x,l)) dl/l over (lo, hi]; the interval must not
    // straddle a breakpoint of the ball-mass step function
    double segment(double lo, double hi) const {
        if (lo >= hi) return 0.0;
        double total = 0.0;
        for (const auto &p : kernel_) {
            const double a = std::max(lo, p.lo);
            const double b = std::min(hi, p.hi);
            if (a >= b || p.coef == 0.0) continue;
            if (lebesgue_) {
                total += power_piece(p.coef * omega_, p.expo + n_, a, b);
            } else {
                const double s = steps_.at(b);
                if (s > 0.0) total += power_piece(p.coef * s, p.expo, a, b);
            }
        }
        return total;
    }
};

/// Composite Simpson on the log axis with doubling refinement.
double log_simpson(const std::function<double(double)> &f, double a, double b,
                   const QuadratureOptions &opts) {
    const double ta = std::log(a), tb = std::log(b);
    const auto transformed = [&](double t) {
        const double r = std::exp(t);
        return f(r) * r;
    };
    auto simpson = [&](int intervals) {
        const double h = (tb - ta) / intervals;
        double acc = transformed(ta) + transformed(tb);
        for (int i = 1; i < intervals; ++i) {
            acc += transformed(ta + h * i) * (i % 2 ? 4.0 : 2.0);
        }
        return acc * h / 3.0;
    };

    const double decades = (tb - ta) / std::numbers::ln10;
    int n = static_cast<int>(std::ceil(std::max(1.0, decades) * opts.nodes_per_decade));
    n = std::max(4, n + (n % 2));
    double prev = simpson(n);
    while (n < (1 << 17)) {
        n *= 2;
        const double cur = simpson(n);
        if (std::abs(cur - prev) <= opts.rel_tol * std::max(std::abs(cur), 1e-300)) {
            return cur;
        }
        prev = cur;
    }
    return prev;
}

std::vector<double> split_points(std::initializer_list<const std::vector<double> *> lists,
                                 double limit) {
    std::vector<double> out;
    for (const auto *list : lists) {
        for (const double v : *list) {
            if (v > 0.0 && v < limit) out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> kernel_bounds(const RadialProfile &k) {
    std::vector<double> out;
    for (const auto &p : k.pieces()) {
        if (p.lo > 0.0) out.push_back(p.lo);
    }
    return out;
}

const RadialProfile::Piece &piece_containing(const std::vector<RadialProfile::Piece> &pieces,
                                             double a, double b) {
    const double probe = b == kInf ? 2.0 * a + 1.0 : 0.5 * (a + b);
    for (const auto &p : pieces) {
        if (probe > p.lo && probe <= p.hi) return p;
    }
    return pieces.back();
}

} // namespace

double kbar_radial(const RadialProfile &k, const ReferenceMeasure &sigma,
                   std::span<const double> x, double r) {
    if (!(r > 0.0)) throw Error("kbar_radial: radius must be positive");
    return KbarEvaluator(k, sigma, x)(r);
}

double kbar_convolution(const RadialProfile &k, double r) {
    if (!(r > 0.0)) throw Error("kbar_convolution: radius must be positive");
    const int n = k.dim();
    double j = 0.0;
    for (const auto &p : k.pieces()) {
        const double b = std::min(r, p.hi);
        if (p.lo >= b || p.coef == 0.0) continue;
        j += power_piece(p.coef, p.expo + n, p.lo, b);
    }
    return j / powr(r, static_cast<double>(n));
}

LboResult lbo_constant(const RadialProfile &k, const ReferenceMeasure &sigma,
                       const LboSampleSpec &spec) {
    if (spec.balls.size() != spec.probes.size()) {
        throw Error("lbo_constant: one probe list per ball required");
    }
    LboResult result;
    for (std::size_t b = 0; b < spec.balls.size(); ++b) {
        const auto &ball = spec.balls[b];
        double lo = kInf, hi = -kInf;
        for (const auto &y : spec.probes[b]) {
            if (!(distance(y, ball.center) < ball.radius)) {
                ++result.skipped;
                continue;
            }
            try {
                const double v = kbar_radial(k, sigma, y, ball.radius);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
                ++result.evaluated;
            } catch (const EmptyBall &) {
                ++result.skipped;
            } catch (const DivergentTail &) {
                ++result.skipped;
            }
        }
        if (hi > 0.0 && lo > 0.0) result.A = std::max(result.A, hi / lo);
    }
    return result;
}

namespace {

/// Shared engine for the two Wolff integrals. `sigma_weight(r)` multiplies the
/// integrand (sigma(B(x,r)) for the LBO form, r^(n-1)*r for the convolution
/// form, folded so that both integrate f(r) dr/r).
double wolff_radial_integral(const RadialProfile &k, const Exponents &e, double mu_center,
                             const RadialSteps &mu_steps, double R,
                             const QuadratureOptions &opts, const KbarEvaluator *kb_sigma,
                             int n, bool lebesgue_sigma, bool convolution) {
    const double pm1 = e.pm1();
    const double pprime = e.p_prime();
    const double omega = unit_ball_volume(n);
    const auto pieces = k.pieces();
    const bool riesz = k.kind() == RadialProfile::Kind::riesz;

    auto mu_at = [&](double r) {
        const auto it = std::lower_bound(mu_steps.breaks.begin(), mu_steps.breaks.end(), r);
        if (it == mu_steps.breaks.begin()) return mu_center;
        return mu_steps.cum[static_cast<std::size_t>(it - mu_steps.breaks.begin()) - 1];
    };

    // The exact closed form: Riesz kernel against Lebesgue sigma (or the
    // convolution potential, whose average is k/alpha for Riesz) is a pure
    // power law between mass breakpoints.
    const bool exact = riesz && (convolution || lebesgue_sigma) && !opts.force_quadrature;
    if (exact) {
        const double alpha = k.alpha();
        const double g = (alpha - n) * pprime + n;
        // scale^p' * alpha^(1-p'), with omega_n for the sigma(B) = omega_n r^n factor
        const double coef0 = powr(k.scale(), pprime) * std::pow(alpha, -pm1) *
                             (convolution ? 1.0 : omega);
        double total = 0.0;
        double prev = 0.0;
        for (std::size_t i = 0; i <= mu_steps.breaks.size(); ++i) {
            const double hi = i < mu_steps.breaks.size() ? mu_steps.breaks[i] : kInf;
            const double a = prev, b = std::min(hi, R);
            if (a < b) {
                const double m = i == 0 ? mu_center : mu_steps.cum[i - 1];
                if (m > 0.0) total += power_piece(coef0 * powr(m, pm1), g, a, b);
            }
            prev = hi;
            if (hi >= R) break;
        }
        return total;
    }

    // General path: analytic head and tail, log-grid quadrature in between.
    std::vector<double> mu_breaks = mu_steps.breaks;
    std::vector<double> sigma_breaks =
            kb_sigma && !kb_sigma->lebesgue() ? kb_sigma->steps().breaks : std::vector<double>{};
    std::vector<double> kbounds = kernel_bounds(k);
    auto splits = split_points({&mu_breaks, &sigma_breaks, &kbounds}, R);
    // the final interval ends at the truncation radius (or runs to infinity)
    splits.push_back(R == kInf ? kInf : R);

    double total = 0.0;
    double a = 0.0;
    for (const double b : splits) {
        if (a >= b) {
            a = b;
            continue;
        }
        const double rep = b == kInf ? a * 2.0 + 1.0 : b;
        const double m = mu_at(rep);
        if (!(m > 0.0)) {
            a = b;
            continue;
        }
        // zero sigma mass zeroes the integrand (the averaged kernel follows
        // the same zero convention as the dyadic side)
        if (!convolution && !lebesgue_sigma && !(kb_sigma->sigma_ball(rep) > 0.0)) {
            a = b;
            continue;
        }
        const auto &piece = piece_containing(pieces, a, b);
        if (piece.coef == 0.0) {
            a = b;
            continue;
        }
        const double mterm = powr(m, pm1);

        if (a == 0.0) {
            // head: every admissible case is a single power law
            double coef, g;
            if (convolution || lebesgue_sigma) {
                const double denom = piece.expo + n;
                coef = powr(piece.coef, pprime) * std::pow(denom, -pm1) * mterm *
                       (convolution ? 1.0 : omega);
                g = piece.expo * pprime + n;
            } else {
                const double s = kb_sigma->sigma_ball(b);
                if (!(s > 0.0)) {
                    a = b;
                    continue;
                }
                // sigma mass at the center; the averaged kernel reduces to
                // coef*r^expo/expo (expo > 0, else the evaluator has thrown)
                coef = powr(piece.coef, pprime) * std::pow(piece.expo, -pm1) * s * mterm;
                g = piece.expo * pprime;
            }
            total += power_piece(coef, g, 0.0, b);
        } else if (b == kInf) {
            // tail: Riesz only (tables have compact support)
            const double alpha = k.alpha();
            if (convolution || lebesgue_sigma) {
                const double coef = powr(k.scale(), pprime) * std::pow(alpha, -pm1) * mterm *
                                    (convolution ? 1.0 : omega);
                total += power_piece(coef, (alpha - n) * pprime + n, a, kInf);
            } else {
                // atomic sigma: kbar(r) = c0 + c1 r^(alpha-n) beyond the last atom;
                // substituting t = r^(alpha-n) integrates in closed form. The
                // average at the left endpoint is the right-limit J(a)/S (the
                // open-ball mass at a itself may still exclude the last atom).
                const double S = kb_sigma->sigma_ball(rep);
                if (S > 0.0) {
                    const double c1 = k.scale() / (alpha - n);
                    const double ta = std::pow(a, alpha - n);
                    const double kbar_a = kb_sigma->accumulated(a) / S;
                    const double c0 = kbar_a - c1 * ta;
                    total += S * mterm * (powr(c0, pprime) - powr(kbar_a, pprime)) / pprime;
                }
            }
        } else {
            // All factors must be smooth on the closed interval: the kernel
            // through its piece power law, ball masses through their
            // interval-constant values, the average through the continuous
            // accumulated integral. Step functions jump exactly at a and b.
            const double sball_const =
                    (!convolution && !lebesgue_sigma) ? kb_sigma->sigma_ball(rep) : 0.0;
            const auto integrand = [&](double r) {
                const double kv = piece.coef * std::pow(r, piece.expo);
                double sw, kbar;
                if (convolution) {
                    sw = powr(r, static_cast<double>(n));
                    kbar = kbar_convolution(k, r);
                } else if (lebesgue_sigma) {
                    sw = kb_sigma->sigma_ball(r);
                    kbar = kb_sigma->accumulated(r) / sw;
                } else {
                    sw = sball_const;
                    kbar = kb_sigma->accumulated(r) / sball_const;
                }
                return kv * sw * powr(kbar, pm1) * mterm / r;
            };
            total += log_simpson(integrand, a, b, opts);
        }
        a = b;
    }
    return total;
}

} // namespace

double wolff_continuous(const RadialProfile &k, const ReferenceMeasure &sigma,
                        const AtomicMeasure &mu, const Exponents &e,
                        std::span<const double> x, double R, const QuadratureOptions &opts) {
    if (!(R > 0.0)) throw Error("wolff_continuous: truncation radius must be positive");
    const RadialSteps mu_steps(mu, x);
    if (mu_steps.total() == 0.0) return 0.0;
    if (k.kind() == RadialProfile::Kind::riesz && !sigma.is_atomic() &&
        !opts.force_quadrature) {
        return wolff_radial_integral(k, e, mu_steps.center_mass, mu_steps, R, opts, nullptr,
                                     sigma.dim(), true, false);
    }
    const KbarEvaluator kb(k, sigma, x);
    return wolff_radial_integral(k, e, mu_steps.center_mass, mu_steps, R, opts, &kb,
                                 sigma.dim(), !sigma.is_atomic(), false);
}

double wolff_convolution(const RadialProfile &k, const AtomicMeasure &mu, const Exponents &e,
                         std::span<const double> x, double R, const QuadratureOptions &opts) {
    if (!(R > 0.0)) throw Error("wolff_convolution: truncation radius must be positive");
    const RadialSteps mu_steps(mu, x);
    if (mu_steps.total() == 0.0) return 0.0;
    return wolff_radial_integral(k, e, mu_steps.center_mass, mu_steps, R, opts, nullptr,
                                 k.dim(), false, true);
}

EnergyResult energy_continuous(const RadialProfile &k, const ReferenceMeasure &sigma,
                               const AtomicMeasure &mu, const Exponents &e,
                               const MonteCarloOptions &mc) {
    const auto transport = [&](std::span<const double> x) {
        double t = 0.0;
        for (std::size_t j = 0; j < mu.size(); ++j) {
            const double d = distance(x, mu.location(j));
            if (d == 0.0) {
                if (mu.mass(j) == 0.0) continue;
                const double k0 = k.limit_at_zero();
                if (!std::isfinite(k0)) {
                    throw SingularEvaluation(
                            "energy: evaluation point coincides with a mu atom and k(0+) is infinite");
                }
                t += k0 * mu.mass(j);
            } else {
                t += k(d) * mu.mass(j);
            }
        }
        return t;
    };

    EnergyResult result;
    if (sigma.is_atomic()) {
        const AtomicMeasure &atoms = sigma.atoms();
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (atoms.mass(i) == 0.0) continue;
            result.value += atoms.mass(i) * powr(transport(atoms.location(i)), e.p_prime());
        }
        result.samples = atoms.size();
        return result;
    }

    // Lebesgue sigma: stratified Monte Carlo over the declared box.
    const int n = sigma.dim();
    std::vector<double> lo = mc.box_lo, hi = mc.box_hi;
    if (lo.empty() || hi.empty()) {
        lo.assign(n, kInf);
        hi.assign(n, -kInf);
        for (std::size_t j = 0; j < mu.size(); ++j) {
            for (int a = 0; a < n; ++a) {
                lo[a] = std::min(lo[a], mu.location(j)[a]);
                hi[a] = std::max(hi[a], mu.location(j)[a]);
            }
        }
        for (int a = 0; a < n; ++a) {
            const double pad = std::max(1.0, 1.5 * (hi[a] - lo[a]));
            lo[a] -= pad;
            hi[a] += pad;
        }
    }

    std::size_t strata = 1;
    for (int a = 0; a < n; ++a) strata *= static_cast<std::size_t>(mc.strata_per_axis);
    const double cell_vol = [&] {
        double v = 1.0;
        for (int a = 0; a < n; ++a) v *= (hi[a] - lo[a]) / mc.strata_per_axis;
        return v;
    }();

    std::vector<double> mean(strata, 0.0), var(strata, 0.0);
    parallel_for(strata, [&](std::size_t s) {
        Rng rng(Rng::mix(mc.seed, s));
        std::vector<double> x(n);
        double acc = 0.0, acc2 = 0.0;
        for (int i = 0; i < mc.samples_per_stratum; ++i) {
            std::size_t rem = s;
            for (int a = 0; a < n; ++a) {
                const auto cell = rem % mc.strata_per_axis;
                rem /= mc.strata_per_axis;
                const double w = (hi[a] - lo[a]) / mc.strata_per_axis;
                x[a] = lo[a] + w * (static_cast<double>(cell) + rng.uniform());
            }
            const double v = powr(transport(x), e.p_prime());
            acc += v;
            acc2 += v * v;
        }
        const double m = acc / mc.samples_per_stratum;
        mean[s] = m;
        var[s] = std::max(0.0, acc2 / mc.samples_per_stratum - m * m);
    });

    double est = 0.0, variance = 0.0;
    for (std::size_t s = 0; s < strata; ++s) {
        est += cell_vol * mean[s];
        if (mc.samples_per_stratum > 1) {
            variance += cell_vol * cell_vol * var[s] / (mc.samples_per_stratum - 1);
        }
    }
    result.value = est;
    result.std_error = std::sqrt(variance);
    result.samples = strata * static_cast<std::size_t>(mc.samples_per_stratum);
    return result;
}

ShiftedEnergyResult shifted_energy_sup(const RadialProfile &k, const ReferenceMeasure &sigma,
                                       const AtomicMeasure &mu, const Exponents &e,
                                       std::span<const Point> shifts, int level_min,
                                       int level_max) {
    if (shifts.empty()) throw Error("shifted_energy_sup: at least one shift required");
    const int n = mu.dim();

    ShiftedEnergyResult result;
    result.per_shift.assign(shifts.size(), 0.0);
    parallel_for(shifts.size(), [&](std::size_t i) {
        const Point &z = shifts[i];
        // roots at level_max covering every atom under this shift
        std::vector<std::vector<std::int64_t>> roots;
        auto cover = [&](const AtomicMeasure &m) {
            for (std::size_t j = 0; j < m.size(); ++j) {
                std::vector<std::int64_t> root(n);
                for (int a = 0; a < n; ++a) {
                    root[a] = lattice_coordinate(m.location(j)[a], level_max, z[a]);
                }
                roots.push_back(std::move(root));
            }
        };
        cover(mu);
        if (sigma.is_atomic()) cover(sigma.atoms());
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        if (roots.empty()) return;

        LatticeWindow window(n, z, level_min, level_max, std::move(roots));
        DyadicKernel kernel = induce_dyadic(k, window);
        SigmaField field = sigma.is_atomic() ? SigmaField::atomic(window, sigma.atoms())
                                             : SigmaField::lebesgue(window);
        const TraceSetting setting(std::move(window), std::move(kernel), std::move(field));
        result.per_shift[i] = setting.wolff_energy(mu, e);
    });
    for (const double v : result.per_shift) result.sup = std::max(result.sup, v);
    return result;
}

double sampled_doubling_ratio(const ReferenceMeasure &sigma, std::uint64_t seed, int probes) {
    if (!sigma.is_atomic()) return std::ldexp(1.0, sigma.dim()); // exactly 2^n
    const AtomicMeasure &atoms = sigma.atoms();
    if (atoms.empty()) return 1.0;

    Rng rng(seed);
    double worst = 1.0;
    const int n = atoms.dim();
    std::vector<double> x(n);
    for (int i = 0; i < probes; ++i) {
        const auto j = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(atoms.size()) - 1));
        for (int a = 0; a < n; ++a) x[a] = atoms.location(j)[a] + rng.uniform(-0.5, 0.5);
        const double r = std::exp(rng.uniform(std::log(1e-3), std::log(4.0)));
        const double inner = ball_measure(atoms, x, r);
        if (inner > 0.0) worst = std::max(worst, ball_measure(atoms, x, 2.0 * r) / inner);
    }
    return worst;
}

} // namespace wolff
