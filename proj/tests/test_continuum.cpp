#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "wolff/continuum.hpp"
#include "wolff/errors.hpp"

using namespace wolff;

namespace {
const Point kOrigin1 = {0.0};
}

TEST_SUITE("continuum") {

    TEST_CASE("kbar closed forms") {
        SUBCASE("riesz against Lebesgue: kbar = k/alpha") {
            for (const double alpha : {0.2, 0.5, 0.8}) {
                const auto k = RadialProfile::riesz(1, alpha);
                const auto leb = ReferenceMeasure::lebesgue(1);
                for (const double r : {0.25, 1.0, 4.0}) {
                    CHECK(rel_close(kbar_radial(k, leb, kOrigin1, r), k(r) / alpha, 1e-10));
                }
            }
            // n=1, alpha=1/2, r=4: k/alpha = 2 * 4^(-1/2) = 1
            const auto k = RadialProfile::riesz(1, 0.5);
            CHECK(rel_close(kbar_radial(k, ReferenceMeasure::lebesgue(1), kOrigin1, 4.0), 1.0,
                            1e-10));
        }
        SUBCASE("an atom at the center makes the average diverge") {
            const auto k = RadialProfile::riesz(1, 0.5);
            const auto sigma = ReferenceMeasure::atomic(AtomicMeasure(1, {0.0}, {1.0}));
            CHECK_THROWS_AS(kbar_radial(k, sigma, kOrigin1, 1.0), DivergentTail);
            // table kernels diverge logarithmically at a center atom too
            const auto tab = RadialProfile::table(1, {1.0, 2.0}, {3.0, 1.0});
            CHECK_THROWS_AS(kbar_radial(tab, sigma, kOrigin1, 1.0), DivergentTail);
        }
        SUBCASE("empty ball") {
            const auto k = RadialProfile::riesz(1, 0.5);
            const auto sigma = ReferenceMeasure::atomic(AtomicMeasure(1, {2.0}, {1.0}));
            CHECK_THROWS_AS(kbar_radial(k, sigma, kOrigin1, 1.0), EmptyBall);
        }
        SUBCASE("atomic sigma, piecewise exact") {
            // one atom at distance 1, step kernel k=3 on [1/2, 2), 0 beyond:
            // J(r) = 3*ln(r/1) for r in (1, 2); kbar = J / mass
            const auto tab = RadialProfile::table(1, {0.5, 2.0}, {3.0, 3.0});
            const auto sigma = ReferenceMeasure::atomic(AtomicMeasure(1, {1.0}, {2.0}));
            const double r = 1.5;
            CHECK(rel_close(kbar_radial(tab, sigma, kOrigin1, r), 3.0 * std::log(1.5), 1e-12));
        }
    }

    TEST_CASE("lbo constant") {
        SUBCASE("Lebesgue sigma is translation invariant: A = 1") {
            const auto k = RadialProfile::riesz(1, 0.4);
            LboSampleSpec spec;
            spec.balls.push_back({{0.5}, 2.0});
            spec.probes.push_back({{0.1}, {-0.7}, {1.3}});
            const auto r = lbo_constant(k, ReferenceMeasure::lebesgue(1), spec);
            CHECK(rel_close(r.A, 1.0, 1e-12));
            CHECK(r.evaluated == 3);
        }
        SUBCASE("more probes never decrease the reported A") {
            const auto k = RadialProfile::riesz(1, 0.4);
            const auto sigma =
                    ReferenceMeasure::atomic(AtomicMeasure(1, {-1.0, 1.0}, {1.0, 1.0}));
            LboSampleSpec small;
            small.balls.push_back({{0.0}, 3.0});
            small.probes.push_back({{0.3}, {-0.4}});
            LboSampleSpec big = small;
            big.probes[0].push_back({1.6});
            big.probes[0].push_back({-2.2});
            const auto a_small = lbo_constant(k, sigma, small);
            const auto a_big = lbo_constant(k, sigma, big);
            CHECK(a_big.A >= a_small.A);
            CHECK(a_big.A >= 1.0);
        }
    }

    TEST_CASE("wolff_continuous") {
        const Exponents e(2.0, 1.0);

        SUBCASE("empty mu") {
            const auto k = RadialProfile::riesz(1, 0.25);
            CHECK(wolff_continuous(k, ReferenceMeasure::lebesgue(1), AtomicMeasure(1, {}, {}),
                                   e, kOrigin1) == 0.0);
        }
        SUBCASE("riesz + Lebesgue single-atom closed form") {
            // tail integral: m omega alpha^{-1} d^{2 alpha - n} / (n - 2 alpha)
            const double alpha = 0.2, d = 0.75, m = 1.5;
            const auto k = RadialProfile::riesz(1, alpha);
            const AtomicMeasure mu(1, {d}, {m});
            const double expected =
                    m * 2.0 / alpha * std::pow(d, 2.0 * alpha - 1.0) / (1.0 - 2.0 * alpha);
            CHECK(rel_close(wolff_continuous(k, ReferenceMeasure::lebesgue(1), mu, e, kOrigin1),
                            expected, 1e-12));
        }
        SUBCASE("divergent tail is detected analytically") {
            const auto k = RadialProfile::riesz(1, 0.6); // 2 alpha > n
            const AtomicMeasure mu(1, {0.5}, {1.0});
            CHECK_THROWS_AS(
                    wolff_continuous(k, ReferenceMeasure::lebesgue(1), mu, e, kOrigin1),
                    DivergentTail);
        }
        SUBCASE("truncation is monotone and the riesz tail matches the closed form") {
            const double alpha = 0.2;
            const auto k = RadialProfile::riesz(1, alpha);
            const AtomicMeasure mu(1, {0.5}, {1.0});
            const auto leb = ReferenceMeasure::lebesgue(1);
            const double w2 = wolff_continuous(k, leb, mu, e, kOrigin1, 2.0);
            const double w8 = wolff_continuous(k, leb, mu, e, kOrigin1, 8.0);
            const double winf = wolff_continuous(k, leb, mu, e, kOrigin1);
            CHECK(w2 <= w8);
            CHECK(w8 <= winf);
            const double g = (alpha - 1.0) * e.p_prime() + 1.0;
            const double tail = 2.0 / alpha * std::pow(8.0, g) / (-g);
            CHECK(rel_close(winf - w8, tail, 1e-8));
        }
        SUBCASE("closed form vs forced quadrature") {
            QuadratureOptions forced;
            forced.force_quadrature = true;
            const auto k = RadialProfile::riesz(1, 0.22);
            const AtomicMeasure mu(1, {0.4, 1.3, 2.1}, {1.0, 0.5, 2.0});
            const auto leb = ReferenceMeasure::lebesgue(1);
            const double exact = wolff_continuous(k, leb, mu, e, kOrigin1);
            const double quad = wolff_continuous(k, leb, mu, e, kOrigin1, kInfiniteRadius,
                                                 forced);
            CHECK(rel_close(exact, quad, 1e-6));
        }
        SUBCASE("atomic sigma via quadrature with analytic tail") {
            const auto k = RadialProfile::riesz(1, 0.22);
            const auto sigma =
                    ReferenceMeasure::atomic(AtomicMeasure(1, {-0.5, 0.9}, {1.0, 2.0}));
            const AtomicMeasure mu(1, {0.4, 1.3}, {1.0, 0.5});
            const double w = wolff_continuous(k, sigma, mu, e, kOrigin1);
            CHECK(w > 0.0);
            CHECK(std::isfinite(w));
            // truncation strictly cuts the tail and stays monotone in R
            const double w64 = wolff_continuous(k, sigma, mu, e, kOrigin1, 64.0);
            const double w256 = wolff_continuous(k, sigma, mu, e, kOrigin1, 256.0);
            CHECK(w64 < w);
            CHECK(w64 < w256);
            CHECK(w256 < w);
        }
        SUBCASE("tail starting exactly at the last sigma atom distance") {
            // sigma = one atom at distance 1, mu inside: the whole integral is
            // the tail piece, W = 1/(2 (1-alpha)^2) for p = 2, n = 1
            const double alpha = 0.25;
            const auto k = RadialProfile::riesz(1, alpha);
            const auto sigma = ReferenceMeasure::atomic(AtomicMeasure(1, {1.0}, {1.0}));
            const AtomicMeasure mu(1, {0.5}, {1.0});
            const double w = wolff_continuous(k, sigma, mu, e, kOrigin1);
            CHECK(rel_close(w, 1.0 / (2.0 * 0.75 * 0.75), 1e-12));
        }
        SUBCASE("finite truncation through the forced-quadrature path") {
            QuadratureOptions forced;
            forced.force_quadrature = true;
            const auto k = RadialProfile::riesz(1, 0.2);
            const AtomicMeasure mu(1, {0.5}, {1.0});
            const auto leb = ReferenceMeasure::lebesgue(1);
            for (const double R : {2.0, 8.0}) {
                const double exact = wolff_continuous(k, leb, mu, e, kOrigin1, R);
                const double quad = wolff_continuous(k, leb, mu, e, kOrigin1, R, forced);
                CHECK(rel_close(exact, quad, 1e-6));
            }
        }
    }

    TEST_CASE("wolff_convolution") {
        const Exponents e(2.0, 1.0);

        SUBCASE("p=2, n=1, alpha=1/4, unit atom at distance 1 gives 8") {
            const auto k = RadialProfile::riesz(1, 0.25);
            const AtomicMeasure mu(1, {1.0}, {1.0});
            CHECK(rel_close(wolff_convolution(k, mu, e, kOrigin1), 8.0, 1e-8));
        }
        SUBCASE("Lebesgue Wolff potential is omega_n times the convolution form") {
            for (const int n : {1, 2}) {
                const auto k = RadialProfile::riesz(n, 0.3 * n);
                std::vector<double> loc = {0.5};
                Point x(n, 0.0);
                AtomicMeasure mu = n == 1 ? AtomicMeasure(1, {0.5, 1.7}, {1.0, 0.5})
                                          : AtomicMeasure(2, {0.5, 0.2, 1.1, -0.4},
                                                          {1.0, 0.5});
                const double conv = wolff_convolution(k, mu, e, x);
                const double cont =
                        wolff_continuous(k, ReferenceMeasure::lebesgue(n), mu, e, x);
                CHECK(rel_close(cont, unit_ball_volume(n) * conv, 1e-10));
            }
        }
        SUBCASE("closed form vs forced quadrature") {
            QuadratureOptions forced;
            forced.force_quadrature = true;
            const auto k = RadialProfile::riesz(1, 0.25);
            const AtomicMeasure mu(1, {0.3, 1.0, 1.9}, {1.0, 1.0, 0.25});
            const double exact = wolff_convolution(k, mu, e, kOrigin1);
            const double quad = wolff_convolution(k, mu, e, kOrigin1, kInfiniteRadius, forced);
            CHECK(rel_close(exact, quad, 1e-6));
        }
        SUBCASE("table kernels integrate over their support only") {
            const auto tab = RadialProfile::table(1, {0.5, 1.5, 3.0}, {2.0, 1.0, 0.5});
            const AtomicMeasure mu(1, {0.4}, {1.0});
            const double w = wolff_convolution(tab, mu, e, kOrigin1);
            CHECK(w > 0.0);
            CHECK(std::isfinite(w));
            CHECK(wolff_convolution(tab, mu, e, kOrigin1, 3.0) == w);
        }
    }

    TEST_CASE("dilation") {
        SUBCASE("riesz dilation is a power-law rescale") {
            const auto k = RadialProfile::riesz(1, 0.4);
            const auto k2 = dilate(k, 2.0);
            for (const double r : {0.5, 1.0, 3.0}) {
                CHECK(rel_close(k2(r), k(2.0 * r), 1e-15));
                CHECK(rel_close(k2(r), std::pow(2.0, 0.4 - 1.0) * k(r), 1e-15));
            }
        }
        SUBCASE("identity and composition") {
            const auto tab = RadialProfile::table(1, {1.0, 2.0}, {2.0, 1.0});
            CHECK(dilate(tab, 1.0)(1.5) == tab(1.5));
            const auto once = dilate(dilate(tab, 2.0), 4.0);
            const auto direct = dilate(tab, 8.0);
            for (const double r : {0.05, 0.2, 0.3}) {
                CHECK(rel_close(once(r), direct(r), 1e-14));
            }
        }
    }

    TEST_CASE("energy_continuous") {
        const Exponents e(2.0, 1.0);

        SUBCASE("two distinct atoms closed form") {
            const auto k = RadialProfile::riesz(1, 0.5);
            const auto sigma = ReferenceMeasure::atomic(AtomicMeasure(1, {0.0}, {1.5}));
            const AtomicMeasure mu(1, {1.0}, {2.0});
            const auto r = energy_continuous(k, sigma, mu, e);
            CHECK(rel_close(r.value, 1.5 * std::pow(k(1.0) * 2.0, 2.0), 1e-14));
            CHECK(r.std_error == 0.0);
        }
        SUBCASE("kernel homogeneity") {
            const auto k = RadialProfile::riesz(1, 0.5);
            const auto k3 = RadialProfile::riesz(1, 0.5, 3.0);
            const auto sigma =
                    ReferenceMeasure::atomic(AtomicMeasure(1, {0.0, 2.0}, {1.0, 1.0}));
            const AtomicMeasure mu(1, {1.0, -0.5}, {2.0, 1.0});
            const double base = energy_continuous(k, sigma, mu, e).value;
            CHECK(rel_close(energy_continuous(k3, sigma, mu, e).value,
                            std::pow(3.0, e.p_prime()) * base, 1e-12));
        }
        SUBCASE("unbounded kernel at a shared atom is singular") {
            const auto k = RadialProfile::riesz(1, 0.5);
            const auto sigma = ReferenceMeasure::atomic(AtomicMeasure(1, {1.0}, {1.0}));
            const AtomicMeasure mu(1, {1.0}, {2.0});
            CHECK_THROWS_AS(energy_continuous(k, sigma, mu, e), SingularEvaluation);
            // a bounded table kernel evaluates fine
            const auto tab = RadialProfile::table(1, {1.0}, {5.0});
            CHECK(energy_continuous(tab, sigma, mu, e).value == 1.0 * 100.0);
        }
        SUBCASE("Monte Carlo is seeded and reproducible") {
            const auto k = RadialProfile::riesz(1, 0.75);
            const AtomicMeasure mu(1, {0.3, 0.8}, {1.0, 0.5});
            MonteCarloOptions mc;
            mc.seed = 42;
            mc.samples_per_stratum = 64;
            const auto a = energy_continuous(k, ReferenceMeasure::lebesgue(1), mu, e, mc);
            const auto b = energy_continuous(k, ReferenceMeasure::lebesgue(1), mu, e, mc);
            CHECK(a.value == b.value);
            CHECK(a.std_error == b.std_error);
            CHECK(a.std_error > 0.0);
        }
    }

    TEST_CASE("shifted energy sup") {
        const Exponents e(2.0, 1.0);
        const auto k = RadialProfile::riesz(1, 0.75);
        const AtomicMeasure mu(1, {0.31, 0.77}, {1.0, 0.5});

        SUBCASE("z = 0 alone reproduces the plain dyadic energy") {
            const std::vector<Point> zero = {{0.0}};
            const auto r = shifted_energy_sup(k, ReferenceMeasure::lebesgue(1), mu, e, zero,
                                              -4, 0);
            LatticeWindow window(1, {0.0}, -4, 0, {{0}});
            const TraceSetting setting(window, induce_dyadic(k, window),
                                       SigmaField::lebesgue(window));
            CHECK(r.sup == setting.wolff_energy(mu, e));
        }
        SUBCASE("adding shifts never decreases the sup") {
            std::vector<Point> shifts = {{0.0}};
            const auto base = shifted_energy_sup(k, ReferenceMeasure::lebesgue(1), mu, e,
                                                 shifts, -4, 0);
            Rng rng(5);
            for (int i = 0; i < 6; ++i) shifts.push_back({rng.uniform(0.0, 1.0)});
            const auto more = shifted_energy_sup(k, ReferenceMeasure::lebesgue(1), mu, e,
                                                 shifts, -4, 0);
            CHECK(more.sup >= base.sup);
            CHECK(more.per_shift[0] == base.per_shift[0]);
        }
    }

    TEST_CASE("doubling ratio metadata") {
        CHECK(sampled_doubling_ratio(ReferenceMeasure::lebesgue(2), 1) == 4.0);
        const auto sigma = ReferenceMeasure::atomic(AtomicMeasure(1, {0.0, 1.0}, {1.0, 1.0}));
        CHECK(sampled_doubling_ratio(sigma, 7) >= 1.0);
    }
}
