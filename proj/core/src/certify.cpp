#include "wolff/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wolff/errors.hpp"
#include "wolff/parallel.hpp"
#include "wolff/rng.hpp"

namespace wolff {

double s_exponent(const Exponents &e) {
    return e.s();
}

Certificate certificate(const TraceSetting &setting, const AtomicMeasure &mu,
                        const Exponents &e) {
    Certificate cert;
    cert.s = e.s();

    const MassTree mu_tree(setting.window(), mu);
    const auto &mu_mass = mu_tree.cube_mass();
    double norm_s = 0.0;
    std::vector<CubeId> chain;
    for (std::size_t j = 0; j < mu.size(); ++j) {
        mu_tree.atom_chain(j, chain);
        double w = 0.0;
        for (const CubeId q : chain) {
            w += setting.kernel_values()[q] * powr(setting.dlbo().kbar_inf[q], e.pm1()) *
                 powr(mu_mass[q], e.pm1()) * setting.sigma().of_cube(q);
        }
        norm_s += mu.mass(j) * powr(w, e.s());
    }
    cert.wolff_norm = powr(norm_s, 1.0 / e.s());
    cert.value = powr(cert.wolff_norm, e.q() / e.p_prime());
    cert.finite = std::isfinite(cert.value);
    return cert;
}

namespace {

/// Forward/adjoint applications of the discrete operator between sigma atoms
/// and mu atoms, sharing one aggregation pass per application.
class QuotientEvaluator {
public:
    QuotientEvaluator(const TraceSetting &setting, const AtomicMeasure &mu, const Exponents &e)
            : setting_(setting)
            , mu_(mu)
            , e_(e)
            , sigma_(setting.sigma().atoms())
            , mu_tree_(setting.window(), mu) {
        const int D = setting.window().depth();
        std::vector<CubeId> chain;
        sigma_chains_.reserve(sigma_.size() * (D + 1));
        for (std::size_t j = 0; j < sigma_.size(); ++j) {
            setting.sigma().tree().atom_chain(j, chain);
            sigma_chain_len_.push_back(chain.size());
            sigma_chains_.insert(sigma_chains_.end(), chain.begin(), chain.end());
        }
        mu_chains_.reserve(mu_.size() * (D + 1));
        for (std::size_t i = 0; i < mu_.size(); ++i) {
            mu_tree_.atom_chain(i, chain);
            mu_chain_len_.push_back(chain.size());
            mu_chains_.insert(mu_chains_.end(), chain.begin(), chain.end());
        }
    }

    std::size_t sigma_count() const { return sigma_.size(); }
    std::size_t mu_count() const { return mu_.size(); }
    const AtomicMeasure &sigma_atoms() const { return sigma_; }

    /// T[f dsigma] at every mu atom; f may be signed here.
    std::vector<double> forward(std::span<const double> f) const {
        std::vector<double> weighted(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) weighted[j] = f[j] * sigma_.mass(j);
        const auto field = setting_.sigma().tree().aggregate(weighted);
        std::vector<double> out(mu_.size(), 0.0);
        std::size_t pos = 0;
        for (std::size_t i = 0; i < mu_.size(); ++i) {
            double t = 0.0;
            for (std::size_t d = 0; d < mu_chain_len_[i]; ++d) {
                const CubeId q = mu_chains_[pos + d];
                t += setting_.kernel_values()[q] * field[q];
            }
            out[i] = t;
            pos += mu_chain_len_[i];
        }
        return out;
    }

    /// sum_i v_i K_D(x_j, y_i) at every sigma atom (no sigma mass factor).
    std::vector<double> adjoint(std::span<const double> v) const {
        const auto field = mu_tree_.aggregate(v);
        std::vector<double> out(sigma_.size(), 0.0);
        std::size_t pos = 0;
        for (std::size_t j = 0; j < sigma_.size(); ++j) {
            double t = 0.0;
            for (std::size_t d = 0; d < sigma_chain_len_[j]; ++d) {
                const CubeId q = sigma_chains_[pos + d];
                t += setting_.kernel_values()[q] * field[q];
            }
            out[j] = t;
            pos += sigma_chain_len_[j];
        }
        return out;
    }

    double numerator(std::span<const double> t_at_mu, bool absolute = false) const {
        double nq = 0.0;
        for (std::size_t i = 0; i < mu_.size(); ++i) {
            const double t = absolute ? std::abs(t_at_mu[i]) : t_at_mu[i];
            nq += mu_.mass(i) * powr(t, e_.q());
        }
        return powr(nq, 1.0 / e_.q());
    }

    double denominator(std::span<const double> f) const {
        double dp = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) {
            dp += sigma_.mass(j) * powr(std::abs(f[j]), e_.p());
        }
        return powr(dp, 1.0 / e_.p());
    }

    double quotient(std::span<const double> f, bool absolute = false) const {
        const double d = denominator(f);
        if (!(d > 0.0)) return 0.0;
        const double n = numerator(forward(f), absolute);
        return n > 0.0 ? n / d : 0.0;
    }

    const Exponents &exponents() const { return e_; }

private:
    const TraceSetting &setting_;
    const AtomicMeasure &mu_;
    Exponents e_;
    const AtomicMeasure &sigma_;
    MassTree mu_tree_;
    std::vector<CubeId> sigma_chains_, mu_chains_;
    std::vector<std::size_t> sigma_chain_len_, mu_chain_len_;
};

void normalize_lp(const AtomicMeasure &sigma, const Exponents &e, std::vector<double> &f) {
    double dp = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) dp += sigma.mass(j) * powr(f[j], e.p());
    const double d = powr(dp, 1.0 / e.p());
    if (d > 0.0) {
        for (auto &v : f) v /= d;
    }
}

} // namespace

double rayleigh_quotient(const TraceSetting &setting, const AtomicMeasure &mu,
                         const Exponents &e, std::span<const double> f) {
    for (const double v : f) {
        if (!(v >= 0.0)) throw Error("rayleigh_quotient: density must be nonnegative");
    }
    const QuotientEvaluator eval(setting, mu, e);
    return eval.quotient(f);
}

double rayleigh_quotient_signed(const TraceSetting &setting, const AtomicMeasure &mu,
                                const Exponents &e, std::span<const double> f) {
    const QuotientEvaluator eval(setting, mu, e);
    return eval.quotient(f, /*absolute=*/true);
}

ConstantEstimate best_constant(const TraceSetting &setting, const AtomicMeasure &mu,
                               const Exponents &e, const AscentConfig &config) {
    const AtomicMeasure &sigma = setting.sigma().atoms();
    if (!(sigma.total_mass() > 0.0)) throw NoMass("best_constant: sigma carries no mass");

    const std::size_t m = sigma.size();
    ConstantEstimate best;
    best.tolerance = config.tolerance;
    best.seed = config.seed;
    best.witness_f.assign(m, 0.0);

    const QuotientEvaluator eval(setting, mu, e);

    // Degenerate: no mu mass reachable. Every density scores 0.
    std::vector<double> uniform(m, 1.0);
    normalize_lp(sigma, e, uniform);
    if (mu.empty() || !(eval.quotient(uniform) > 0.0)) {
        best.witness_f = uniform;
        best.value = eval.quotient(uniform);
        return best;
    }

    const int vertex_starts = static_cast<int>(std::min<std::size_t>(m, 4));

    struct RestartResult {
        double value = 0.0;
        std::vector<double> witness;
        int iterations = 0;
    };
    std::vector<RestartResult> runs(config.restarts);

    // restarts are independent; merged below in index order
    parallel_for(static_cast<std::size_t>(config.restarts), [&](std::size_t r) {
        std::vector<double> f(m, 0.0);
        if (r == 0) {
            f.assign(m, 1.0);
        } else if (r <= static_cast<std::size_t>(vertex_starts)) {
            f[r - 1] = 1.0;
        } else {
            Rng rng(Rng::mix(config.seed, static_cast<std::uint64_t>(r)));
            for (auto &v : f) v = rng.uniform(0.05, 1.0);
        }
        // zero-mass atoms never contribute; keep them at zero
        for (std::size_t j = 0; j < m; ++j) {
            if (!(sigma.mass(j) > 0.0)) f[j] = 0.0;
        }
        normalize_lp(sigma, e, f);
        double r_cur = eval.quotient(f);
        if (!(r_cur > 0.0) && r > 0) return;

        int iters = 0;
        for (int it = 0; it < config.max_iterations; ++it) {
            ++iters;
            const auto t = eval.forward(f);
            std::vector<double> v(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) {
                v[i] = t[i] > 0.0 ? mu.mass(i) * powr(t[i], e.q() - 1.0) : 0.0;
            }
            const auto h = eval.adjoint(v);
            std::vector<double> proposal(m, 0.0);
            for (std::size_t j = 0; j < m; ++j) {
                if (sigma.mass(j) > 0.0 && h[j] > 0.0) proposal[j] = powr(h[j], e.pm1());
            }
            normalize_lp(sigma, e, proposal);
            double r_new = eval.quotient(proposal);

            // For q < 1 the ascent is a heuristic; damp geometrically toward
            // the current iterate when the proposal scores worse.
            int damp = 0;
            while (r_new < r_cur && damp < 8) {
                for (std::size_t j = 0; j < m; ++j) {
                    proposal[j] = std::sqrt(proposal[j] * f[j]);
                }
                normalize_lp(sigma, e, proposal);
                r_new = eval.quotient(proposal);
                ++damp;
            }
            if (r_new <= r_cur) break; // local maximum within this restart

            const bool converged = (r_new - r_cur) <= config.tolerance * std::max(r_cur, 1e-300);
            f = std::move(proposal);
            r_cur = r_new;
            if (converged) break;
        }
        runs[r] = {r_cur, std::move(f), iters};
    });

    for (const auto &run : runs) {
        best.iterations += run.iterations;
        if (run.value > best.value) {
            best.value = run.value;
            best.witness_f = run.witness;
        }
    }
    if (best.value == 0.0) best.witness_f = uniform;
    return best;
}

void verify_estimate(const TraceSetting &setting, const AtomicMeasure &mu,
                     const Exponents &e, const ConstantEstimate &estimate) {
    const double recomputed = rayleigh_quotient(setting, mu, e, estimate.witness_f);
    const double slack = 1e-10 * std::max(std::abs(estimate.value), 1e-300);
    if (std::abs(recomputed - estimate.value) > slack) {
        throw InvariantViolation("best_constant: witness does not recompute its value");
    }
}

double best_constant_oracle(const TraceSetting &setting, const AtomicMeasure &mu,
                            const Exponents &e, int grid) {
    const AtomicMeasure &sigma = setting.sigma().atoms();
    std::vector<std::size_t> free_atoms;
    for (std::size_t j = 0; j < sigma.size(); ++j) {
        if (sigma.mass(j) > 0.0) free_atoms.push_back(j);
    }
    if (free_atoms.empty()) throw NoMass("best_constant_oracle: sigma carries no mass");
    if (free_atoms.size() > 3) {
        throw TooManyAtoms("best_constant_oracle: exhaustive search supports at most 3 atoms");
    }
    if (grid < 1) throw Error("best_constant_oracle: grid resolution must be positive");

    // Dense coupling matrix M[i][j] = w_j * sum of K over cubes containing both
    // atoms; the common cubes of two chains are their shared prefix.
    const QuotientEvaluator eval(setting, mu, e);
    const std::size_t m = free_atoms.size();
    std::vector<double> coupling(mu.size() * m, 0.0);
    {
        std::vector<double> f(sigma.size(), 0.0);
        for (std::size_t c = 0; c < m; ++c) {
            f.assign(sigma.size(), 0.0);
            f[free_atoms[c]] = 1.0;
            const auto t = eval.forward(f);
            for (std::size_t i = 0; i < mu.size(); ++i) coupling[i * m + c] = t[i];
        }
    }

    // Nonnegative sector of the unit L^p(sigma) sphere: masses e on the
    // simplex, f_j = (e_j / w_j)^(1/p).
    const double inv_p = 1.0 / e.p();
    auto score = [&](std::span<const double> simplex) {
        double f[3];
        for (std::size_t c = 0; c < m; ++c) {
            f[c] = powr(simplex[c] / sigma.mass(free_atoms[c]), inv_p);
        }
        double nq = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            double t = 0.0;
            for (std::size_t c = 0; c < m; ++c) t += coupling[i * m + c] * f[c];
            nq += mu.mass(i) * powr(t, e.q());
        }
        return powr(nq, 1.0 / e.q());
    };

    double bestv = 0.0;
    if (m == 1) {
        const double simplex[1] = {1.0};
        bestv = score(simplex);
    } else if (m == 2) {
        for (int i = 0; i <= grid; ++i) {
            const double e1 = static_cast<double>(i) / grid;
            const double simplex[2] = {e1, 1.0 - e1};
            bestv = std::max(bestv, score(simplex));
        }
    } else {
        for (int i = 0; i <= grid; ++i) {
            for (int j = 0; i + j <= grid; ++j) {
                const double e1 = static_cast<double>(i) / grid;
                const double e2 = static_cast<double>(j) / grid;
                const double simplex[3] = {e1, e2, 1.0 - e1 - e2};
                bestv = std::max(bestv, score(simplex));
            }
        }
    }
    return bestv;
}

WitnessReport witness_bounds(const TraceSetting &setting, std::span<const double> lambda) {
    const LatticeWindow &win = setting.window();
    if (lambda.size() != win.cube_count()) {
        throw Error("witness_bounds: lambda must be indexed by window cubes");
    }
    for (const double v : lambda) {
        if (!(v >= 0.0)) throw Error("witness_bounds: lambda must be nonnegative");
    }
    const AtomicMeasure &sigma = setting.sigma().atoms();

    // f = sup_Q lambda_Q chi_Q and g = sum_Q lambda_Q chi_Q on sigma's atoms.
    std::vector<double> f(sigma.size(), 0.0), g(sigma.size(), 0.0);
    std::vector<CubeId> chain;
    for (std::size_t j = 0; j < sigma.size(); ++j) {
        setting.sigma().tree().atom_chain(j, chain);
        double sup = 0.0, sum = 0.0;
        for (const CubeId q : chain) {
            sup = std::max(sup, lambda[q]);
            sum += lambda[q];
        }
        f[j] = sup * sigma.mass(j);
        g[j] = sum * sigma.mass(j);
    }
    const auto field_f = setting.sigma().tree().aggregate(f);
    const auto field_g = setting.sigma().tree().aggregate(g);

    WitnessReport report;
    report.min_margin_f = std::numeric_limits<double>::infinity();
    report.min_margin_g = std::numeric_limits<double>::infinity();

    auto probe = [&](std::span<const double> x) {
        std::vector<CubeId> ids;
        if (const auto loc = win.locate(x)) {
            for (int d = 0; d <= win.depth(); ++d) ids.push_back(win.id_at_depth(*loc, d));
        } else {
            return;
        }
        double lhs_f = 0.0, lhs_g = 0.0, rhs_f = 0.0, rhs_g = 0.0;
        for (const CubeId q : ids) {
            const double k = setting.kernel_values()[q];
            lhs_f += k * field_f[q];
            lhs_g += k * field_g[q];
            rhs_f += k * lambda[q] * setting.sigma().of_cube(q);
            rhs_g += lambda[q] * setting.sigma().of_cube(q) * setting.dlbo().kbar_inf[q];
        }
        report.min_margin_f = std::min(report.min_margin_f, lhs_f - rhs_f);
        report.min_margin_g = std::min(report.min_margin_g, lhs_g - rhs_g);
        ++report.probes;
    };

    // every finest cell midpoint, then every sigma atom
    const int D = win.depth();
    std::vector<double> mid(win.dim());
    for (std::uint32_t root = 0; root < win.roots().size(); ++root) {
        const CubeId begin = win.depth_begin(root, D);
        for (std::size_t i = 0; i < win.depth_count(D); ++i) {
            const DyadicCube cell = win.cube(begin + static_cast<CubeId>(i));
            for (int a = 0; a < win.dim(); ++a) mid[a] = cell.lower(a) + 0.5 * cell.side();
            probe(mid);
        }
    }
    for (std::size_t j = 0; j < sigma.size(); ++j) probe(sigma.location(j));

    if (report.probes == 0) {
        report.min_margin_f = 0.0;
        report.min_margin_g = 0.0;
    }
    return report;
}

EquivalenceSummary equivalence_report(std::span<const EquivalenceRow> rows, double window) {
    EquivalenceSummary summary;
    summary.rows.assign(rows.begin(), rows.end());
    if (rows.empty()) return summary;

    std::vector<double> ratios;
    ratios.reserve(rows.size());
    for (const auto &row : rows) ratios.push_back(row.ratio);
    std::sort(ratios.begin(), ratios.end());
    summary.min_ratio = ratios.front();
    summary.max_ratio = ratios.back();
    const std::size_t h = ratios.size() / 2;
    summary.median_ratio =
            ratios.size() % 2 ? ratios[h] : 0.5 * (ratios[h - 1] + ratios[h]);
    if (window > 0.0) {
        summary.pass = summary.min_ratio > 0.0 && summary.max_ratio / summary.min_ratio <= window;
    }
    return summary;
}

} // namespace wolff
