#include <doctest.h>

#include <cmath>

#include "naive_oracle.hpp"
#include "test_support.hpp"
#include "wolff/errors.hpp"

using namespace wolff;

namespace {

const std::vector<std::int64_t> kIdx0 = {0};
const std::vector<std::int64_t> kIdx1 = {1};

TraceSetting setting_with_sigma(const AtomicMeasure &sigma) {
    auto ex = running_example();
    return TraceSetting(ex.window, ex.kernel, SigmaField::atomic(ex.window, sigma));
}

} // namespace

TEST_SUITE("dyadic") {

    TEST_CASE("kbar_at chain averages") {
        const auto setting = running_setting();
        const double x[] = {0.25};

        SUBCASE("two-term chain at the root") {
            const DyadicCube root = setting.window().cube(setting.window().id_of(0, kIdx0));
            // (1/2)(1*2 + 2*1) = 2
            CHECK(setting.kbar_at(root, x) == 2.0);
        }
        SUBCASE("single-cube support gives K(Q) itself") {
            LatticeWindow window(1, {0.0}, 0, 0, {{0}});
            auto kernel = kernel_from_entries({{0, {0}, 2.0}}, window);
            const AtomicMeasure sigma(1, {0.25}, {1.0});
            const TraceSetting s(window, kernel, SigmaField::atomic(window, sigma));
            CHECK(s.kbar_at(window.cube(0), x) == 2.0);
        }
        SUBCASE("zero sigma mass gives zero by convention") {
            const TraceSetting s = setting_with_sigma(AtomicMeasure(1, {0.75}, {1.0}));
            const DyadicCube left = s.window().cube(s.window().id_of(-1, kIdx0));
            CHECK(s.kbar_at(left, x) == 0.0);
        }
        SUBCASE("point outside the cube is a domain error") {
            const DyadicCube left = setting.window().cube(setting.window().id_of(-1, kIdx0));
            const double y[] = {0.75};
            CHECK_THROWS_AS(setting.kbar_at(left, y), Error);
        }
    }

    TEST_CASE("dlbo constant is exact on finest cells") {
        SUBCASE("balanced sigma: constant profile, A = 1") {
            const auto setting = running_setting();
            CHECK(setting.dlbo().A == 1.0);
            CHECK(setting.dlbo().kbar_inf[setting.window().id_of(0, kIdx0)] == 2.0);
        }
        SUBCASE("single-cube kernels always give A = 1") {
            LatticeWindow window(1, {0.0}, 0, 0, {{0}});
            auto kernel = kernel_from_entries({{0, {0}, 3.0}}, window);
            const AtomicMeasure sigma(1, {0.3}, {1.0});
            const TraceSetting s(window, kernel, SigmaField::atomic(window, sigma));
            CHECK(s.dlbo().A == 1.0);
        }
        SUBCASE("unbalanced sigma: cells see different chains, A = 3") {
            const TraceSetting s = setting_with_sigma(AtomicMeasure(1, {0.25}, {1.0}));
            // root cell values: {1*1 + 2*1, 1*1} = {3, 1}
            CHECK(s.dlbo().A == 3.0);
            CHECK(s.dlbo().kbar_inf[s.window().id_of(0, kIdx0)] == 1.0);
        }
    }

    TEST_CASE("apply_T") {
        const auto setting = running_setting();
        const double x[] = {0.25};

        SUBCASE("zero density") {
            const std::vector<double> f = {0.0, 0.0};
            CHECK(setting.apply_T(f, x) == 0.0);
        }
        SUBCASE("unit density: T[sigma]") {
            const std::vector<double> f = {1.0, 1.0};
            CHECK(setting.apply_T(f, x) == 4.0); // 1*2 + 2*1
        }
        SUBCASE("far atom only reaches through the root") {
            const std::vector<double> f = {0.0, 1.0};
            CHECK(setting.apply_T(f, x) == 1.0);
        }
        SUBCASE("out-of-window point throws") {
            const std::vector<double> f = {1.0, 1.0};
            const double y[] = {2.5};
            CHECK_THROWS_AS(setting.apply_T(f, y), OutOfWindow);
        }
    }

    TEST_CASE("wolff potentials on the worked instance") {
        const auto setting = running_setting();
        const Exponents e(2.0, 1.0);
        const AtomicMeasure nu(1, {0.25}, {1.0});
        const double x[] = {0.25};

        SUBCASE("empty nu") {
            const AtomicMeasure none(1, {}, {});
            CHECK(setting.wolff_general(none, e, x) == 0.0);
            CHECK(setting.wolff_dlbo(none, e, x) == 0.0);
        }
        SUBCASE("two-term chain value 8, both forms") {
            CHECK(setting.wolff_general(nu, e, x) == 8.0);
            CHECK(setting.wolff_dlbo(nu, e, x) == 8.0);
        }
        SUBCASE("single-cube closed form") {
            LatticeWindow window(1, {0.0}, 0, 0, {{0}});
            auto kernel = kernel_from_entries({{0, {0}, 3.0}}, window);
            const AtomicMeasure sigma(1, {0.3, 0.6}, {1.0, 0.5});
            const TraceSetting s(window, kernel, SigmaField::atomic(window, sigma));
            const AtomicMeasure m(1, {0.4}, {2.0});
            // c [c nu(Q)]^(p'-1) sigma(Q)
            const double expected = 3.0 * (3.0 * 2.0) * 1.5;
            CHECK(rel_close(s.wolff_general(m, e, x), expected, 1e-14));
        }
    }

    TEST_CASE("energy and wolff_energy") {
        const auto setting = running_setting();
        const Exponents e(2.0, 1.0);
        const AtomicMeasure nu(1, {0.25}, {1.0});

        CHECK(setting.energy(AtomicMeasure(1, {}, {}), e) == 0.0);
        CHECK(setting.energy(nu, e) == 10.0); // 1*3^2 + 1*1^2
        CHECK(setting.wolff_energy(nu, e) == 8.0);

        SUBCASE("scaling in the kernel is exactly homogeneous for c = 2, p = 2") {
            auto ex = running_example();
            DyadicKernel doubled = ex.kernel;
            for (auto &v : doubled.values) v *= 2.0;
            const TraceSetting scaled(ex.window, doubled,
                                      SigmaField::atomic(ex.window, ex.sigma));
            CHECK(scaled.energy(nu, e) == 4.0 * setting.energy(nu, e));
            CHECK(scaled.wolff_energy(nu, e) == 4.0 * setting.wolff_energy(nu, e));
        }
        SUBCASE("sandwich ratio on the instance") {
            CHECK(setting.energy(nu, e) / setting.wolff_energy(nu, e) == 10.0 / 8.0);
        }
        SUBCASE("rescaling nu moves both sides by t^p', ratio unchanged") {
            const auto inst = random_instance(55, 1, 3, 8, 1.5, 0.5);
            const auto s = make_setting(inst);
            const Exponents exps = make_exponents(inst);
            const double ratio0 = s.energy(inst.mu, exps) / s.wolff_energy(inst.mu, exps);
            for (const double t : {0.25, 3.0}) {
                auto masses = inst.mu.masses();
                for (auto &v : masses) v *= t;
                const AtomicMeasure scaled = inst.mu.with_masses(masses);
                const double tp = std::pow(t, exps.p_prime());
                CHECK(rel_close(s.energy(scaled, exps), tp * s.energy(inst.mu, exps), 1e-12));
                CHECK(rel_close(s.wolff_energy(scaled, exps),
                                tp * s.wolff_energy(inst.mu, exps), 1e-12));
                CHECK(rel_close(s.energy(scaled, exps) / s.wolff_energy(scaled, exps), ratio0,
                                1e-12));
            }
        }
    }

    TEST_CASE("carleson constant") {
        const auto setting = running_setting();
        const Exponents e(2.0, 1.0);

        SUBCASE("vacuous when mu misses the kernel") {
            const auto r = setting.carleson_constant(AtomicMeasure(1, {}, {}), e);
            CHECK(r.status == CarlesonResult::Status::vacuous);
            CHECK(r.B == 0.0);
        }
        SUBCASE("single-cube closed form") {
            LatticeWindow window(1, {0.0}, 0, 0, {{0}});
            auto kernel = kernel_from_entries({{0, {0}, 2.0}}, window);
            const AtomicMeasure sigma(1, {0.3}, {1.5});
            const TraceSetting s(window, kernel, SigmaField::atomic(window, sigma));
            const AtomicMeasure mu(1, {0.6}, {0.5});
            const auto r = s.carleson_constant(mu, e);
            // K^p' mu^(p'-1) sigma = 4 * 0.5 * 1.5
            CHECK(rel_close(r.B, 3.0, 1e-14));
        }
        SUBCASE("argmax and value on the worked instance") {
            const AtomicMeasure mu(1, {0.25}, {1.0});
            const auto r = setting.carleson_constant(mu, e);
            CHECK(r.B == 8.0);
            CHECK(setting.window().cube(r.argmax).level == 0);
        }
    }

    TEST_CASE("make_mu1") {
        const auto setting = running_setting();
        const Exponents e(2.0, 1.0);

        SUBCASE("worked instance: mass 1/8") {
            const AtomicMeasure mu(1, {0.25}, {1.0});
            const auto r = setting.make_mu1(mu, e);
            REQUIRE(r.mu1.size() == 1);
            CHECK(r.mu1.mass(0) == 1.0 / 8.0);
            CHECK(r.dropped == 0);
        }
        SUBCASE("empty mu stays empty") {
            const auto r = setting.make_mu1(AtomicMeasure(1, {}, {}), e);
            CHECK(r.mu1.empty());
        }
        SUBCASE("atom outside the kernel support is dropped") {
            LatticeWindow window(1, {0.0}, -1, 0, {{0}, {1}});
            auto kernel = kernel_from_entries({{0, {0}, 1.0}}, window);
            const AtomicMeasure sigma(1, {0.25}, {1.0});
            const TraceSetting s(window, kernel, SigmaField::atomic(window, sigma));
            const AtomicMeasure mu(1, {0.25, 1.25}, {1.0, 1.0});
            const auto r = s.make_mu1(mu, e);
            CHECK(r.mu1.size() == 1);
            CHECK(r.dropped == 1);
        }
    }

    TEST_CASE("mu1 satisfies the Carleson condition with B <= 1") {
        for (std::uint64_t seed = 100; seed < 140; ++seed) {
            const double p = seed % 3 == 0 ? 1.5 : (seed % 3 == 1 ? 2.0 : 3.0);
            const auto inst = random_instance(seed, 1 + static_cast<int>(seed % 2), 3, 10,
                                              p, p / 2.0);
            const auto setting = make_setting(inst);
            const Exponents e = make_exponents(inst);
            const auto mu1 = setting.make_mu1(inst.mu, e);
            if (mu1.mu1.empty()) continue;
            const auto r = setting.carleson_constant(mu1.mu1, e);
            CHECK(r.B <= 1.0 + 1e-12);
        }
    }

    TEST_CASE("dlbo bracketing of the averaged kernel") {
        Rng rng(41);
        for (std::uint64_t seed = 200; seed < 220; ++seed) {
            const auto inst = random_instance(seed, 1, 4, 8);
            const auto setting = make_setting(inst);
            const auto &dlbo = setting.dlbo();
            const auto &w = inst.window;
            for (int trial = 0; trial < 10; ++trial) {
                const double x[] = {rng.uniform(0.0, 1.0)};
                for (const CubeId q : w.chain_ids(x)) {
                    if (!(setting.sigma().of_cube(q) > 0.0)) continue;
                    const double v = setting.kbar_at(q, x);
                    CHECK(v >= dlbo.kbar_inf[q] * (1.0 - 1e-12));
                    CHECK(v <= dlbo.A * dlbo.kbar_inf[q] * (1.0 + 1e-12));
                }
            }
        }
    }

    TEST_CASE("general and dlbo forms coincide when A = 1") {
        // radial kernels with Lebesgue sigma have constant averaged profiles
        for (std::uint64_t seed = 300; seed < 306; ++seed) {
            InstanceSpec spec;
            spec.seed = seed;
            spec.n = 1;
            spec.level_min = -4;
            spec.level_max = 0;
            spec.sigma_lebesgue = true;
            spec.kernel_class = InstanceSpec::KernelClass::riesz;
            spec.mu_atoms = 6;
            const auto inst = generate(spec);
            const auto setting = make_setting(inst);
            CHECK(setting.dlbo().A == 1.0);
            const Exponents e(2.0, 1.0);
            for (std::size_t j = 0; j < inst.mu.size(); ++j) {
                const double g = setting.wolff_general(inst.mu, e, inst.mu.location(j));
                const double d = setting.wolff_dlbo(inst.mu, e, inst.mu.location(j));
                CHECK(rel_close(g, d, 1e-12));
            }
        }
    }

    TEST_CASE("monotonicity: adding kernel mass never decreases anything") {
        const auto inst = random_instance(77, 1, 3, 8);
        auto setting = make_setting(inst);
        const Exponents e(2.0, 1.0);
        const double energy0 = setting.energy(inst.mu, e);
        const double wolff0 = setting.wolff_energy(inst.mu, e);
        const double carleson0 = setting.carleson_constant(inst.mu, e).B;

        DyadicKernel bigger{setting.kernel_values(), {}};
        bigger.values[3] += 1.0;
        const TraceSetting grown(inst.window, bigger,
                                 SigmaField::atomic(inst.window, inst.sigma));
        CHECK(grown.energy(inst.mu, e) >= energy0);
        CHECK(grown.wolff_energy(inst.mu, e) >= wolff0);
        CHECK(grown.carleson_constant(inst.mu, e).B >= carleson0 * (1.0 - 1e-12));
    }

    TEST_CASE("enlarging the window with zero-kernel cubes changes nothing") {
        const auto ex = running_example();
        const TraceSetting before(ex.window, ex.kernel,
                                  SigmaField::atomic(ex.window, ex.sigma));

        LatticeWindow deeper(1, {0.0}, -3, 0, {{0}});
        std::vector<KernelEntry> entries = {{0, {0}, 1.0}, {-1, {0}, 2.0}, {-1, {1}, 2.0}};
        const TraceSetting after(deeper, kernel_from_entries(entries, deeper),
                                 SigmaField::atomic(deeper, ex.sigma));

        const Exponents e(2.0, 1.0);
        const AtomicMeasure nu(1, {0.25}, {1.0});
        CHECK(after.dlbo().A == before.dlbo().A);
        CHECK(after.energy(nu, e) == before.energy(nu, e));
        CHECK(after.wolff_energy(nu, e) == before.wolff_energy(nu, e));
        CHECK(after.carleson_constant(nu, e).B == before.carleson_constant(nu, e).B);
        const double x[] = {0.25};
        CHECK(after.wolff_general(nu, e, x) == before.wolff_general(nu, e, x));
    }

    TEST_CASE("agreement with the naive oracle on small instances") {
        for (std::uint64_t seed = 400; seed < 420; ++seed) {
            const int n = 1 + static_cast<int>(seed % 2);
            const auto inst = random_instance(seed, n, n == 1 ? 4 : 2, 12,
                                              seed % 2 ? 2.0 : 1.5, 0.5);
            const auto setting = make_setting(inst);
            const Exponents e = make_exponents(inst);
            const auto &w = inst.window;
            const auto &K = setting.kernel_values();

            const auto ndlbo = naive::dlbo(w, K, inst.sigma);
            CHECK(rel_close(setting.dlbo().A, ndlbo.A, 1e-12));

            std::vector<double> f(inst.sigma.size());
            Rng rng(seed);
            for (auto &v : f) v = rng.dyadic(0.0, 2.0);

            for (std::size_t j = 0; j < inst.mu.size(); ++j) {
                const auto x = inst.mu.location(j);
                CHECK(rel_close(setting.apply_T(f, x),
                                naive::apply_T(w, K, inst.sigma, f, x), 1e-12));
                CHECK(rel_close(setting.wolff_general(inst.mu, e, x),
                                naive::wolff_general(w, K, inst.sigma, inst.mu, e, x), 1e-12));
                CHECK(rel_close(setting.wolff_dlbo(inst.mu, e, x),
                                naive::wolff_dlbo(w, K, inst.sigma, ndlbo.kbar_inf, inst.mu,
                                                  e, x),
                                1e-12));
            }
            CHECK(rel_close(setting.energy(inst.mu, e),
                            naive::energy(w, K, inst.sigma, inst.mu, e), 1e-12));
            CHECK(rel_close(setting.wolff_energy(inst.mu, e),
                            naive::wolff_energy(w, K, inst.sigma, ndlbo.kbar_inf, inst.mu, e),
                            1e-12));
            CHECK(rel_close(setting.carleson_constant(inst.mu, e).B,
                            naive::carleson(w, K, inst.sigma, ndlbo.kbar_inf, inst.mu, e),
                            1e-12));
        }
    }
}
