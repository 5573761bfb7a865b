#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wolff/dyadic.hpp"
#include "wolff/kernel.hpp"
#include "wolff/measure.hpp"
#include "wolff/window.hpp"

namespace wolff {

/// Kernel description as serialized: explicit table entries or a radial profile.
struct KernelSpec {
    std::variant<std::vector<KernelEntry>, RadialProfile> form;

    bool is_radial() const { return std::holds_alternative<RadialProfile>(form); }
    const RadialProfile &profile() const { return std::get<RadialProfile>(form); }
    const std::vector<KernelEntry> &entries() const {
        return std::get<std::vector<KernelEntry>>(form);
    }
};

/// One problem instance of schema `wolff-trace/1`: dimension, window, the
/// measures sigma and mu, a kernel, and the exponent pair.
struct Instance {
    int n = 1;
    LatticeWindow window{1, {0.0}, 0, 0, {{0}}};
    bool sigma_lebesgue = false;
    AtomicMeasure sigma; // ignored when sigma_lebesgue
    AtomicMeasure mu;
    KernelSpec kernel;
    double p = 2.0;
    double q = 1.0;
};

/// Canonical serialization: versioned JSON with sorted keys and shortest
/// round-trip reals, so parse(serialize(x)) == x exactly and equal instances
/// serialize to identical bytes.
std::string serialize_instance(const Instance &inst);

/// Parses and validates; throws ParseError with the byte position on
/// malformed input and on schema violations.
Instance parse_instance(const std::string &text);

/// FNV-1a 64-bit content hash of the canonical serialization, as fixed-width hex.
std::string instance_hash(const Instance &inst);
std::uint64_t fnv1a64(const std::string &bytes);

/// Materializes the dyadic side of an instance (kernel values over the
/// window plus the sigma field).
TraceSetting make_setting(const Instance &inst);
Exponents make_exponents(const Instance &inst);

} // namespace wolff
