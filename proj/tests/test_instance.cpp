#include <doctest.h>

#include "test_support.hpp"
#include "wolff/errors.hpp"

using namespace wolff;

TEST_SUITE("instance") {

    TEST_CASE("serialization round-trips exactly") {
        for (std::uint64_t seed = 700; seed < 710; ++seed) {
            const auto inst = random_instance(seed, 1 + static_cast<int>(seed % 3), 3, 6,
                                              1.5, 0.75);
            const std::string bytes = serialize_instance(inst);
            const Instance parsed = parse_instance(bytes);
            CHECK(serialize_instance(parsed) == bytes);
            CHECK(parsed.mu == inst.mu);
            CHECK(parsed.sigma == inst.sigma);
            CHECK(parsed.window == inst.window);
        }
    }

    TEST_CASE("radial kernels round-trip") {
        InstanceSpec spec;
        spec.seed = 3;
        spec.kernel_class = InstanceSpec::KernelClass::riesz;
        spec.sigma_lebesgue = true;
        const auto inst = generate(spec);
        const auto parsed = parse_instance(serialize_instance(inst));
        CHECK(parsed.sigma_lebesgue);
        CHECK(parsed.kernel.is_radial());
        CHECK(parsed.kernel.profile().alpha() == inst.kernel.profile().alpha());
        CHECK(serialize_instance(parsed) == serialize_instance(inst));
    }

    TEST_CASE("generation is deterministic") {
        InstanceSpec spec;
        spec.seed = 99;
        spec.sigma_atoms = 5;
        spec.mu_atoms = 7;
        CHECK(serialize_instance(generate(spec)) == serialize_instance(generate(spec)));

        spec.seed = 100;
        CHECK(serialize_instance(generate(spec)) != serialize_instance(generate(InstanceSpec{99, 1, -4, 0, 1, 5, 7})));
    }

    TEST_CASE("empty measures are valid instances") {
        InstanceSpec spec;
        spec.seed = 4;
        spec.sigma_atoms = 0;
        spec.mu_atoms = 0;
        const auto inst = generate(spec);
        CHECK(inst.sigma.empty());
        CHECK(inst.mu.empty());
        CHECK(parse_instance(serialize_instance(inst)).sigma.empty());
    }

    TEST_CASE("single-cube windows always satisfy target A = 1") {
        InstanceSpec spec;
        spec.seed = 8;
        spec.level_min = 0;
        spec.level_max = 0;
        spec.target_A = 1.0;
        const auto inst = generate(spec);
        CHECK(make_setting(inst).dlbo().A == 1.0);
    }

    TEST_CASE("instance hash is content-addressed") {
        const auto a = random_instance(1);
        const auto b = random_instance(1);
        auto c = random_instance(1);
        c.p = 3.0;
        CHECK(instance_hash(a).size() == 16);
        CHECK(instance_hash(a) == instance_hash(b));
        CHECK(instance_hash(a) != instance_hash(c));
    }

    TEST_CASE("malformed input is a positioned parse error") {
        CHECK_THROWS_AS(parse_instance("{ not json"), ParseError);
        try {
            parse_instance("{\"schema\": \"wolff-trace/1\", }");
            CHECK(false);
        } catch (const ParseError &err) {
            CHECK(err.position > 0);
        }
    }

    TEST_CASE("semantic violations are parse errors") {
        auto inst = random_instance(13);
        // bad exponents
        std::string text = serialize_instance(inst);
        auto broken = text;
        const auto at = broken.find("\"q\":");
        broken.replace(at, 8, "\"q\": 9.0");
        CHECK_THROWS_AS(parse_instance(broken), ParseError);
    }

    TEST_CASE("kernel entries outside the window are rejected") {
        const auto inst = random_instance(17);
        std::vector<KernelEntry> entries = {{5, {0}, 1.0}};
        CHECK_THROWS_AS(kernel_from_entries(entries, inst.window), Error);
    }
}
