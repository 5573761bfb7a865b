#include "wolff/instance.hpp"

#include <json.hpp>

#include "wolff/errors.hpp"
#include "wolff/version.hpp"

namespace wolff {

using json = nlohmann::json;

namespace {

json measure_to_json(const AtomicMeasure &m) {
    json atoms = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) {
        json x = json::array();
        for (const double c : m.location(j)) x.push_back(c);
        atoms.push_back(json::array({x, m.mass(j)}));
    }
    return atoms;
}

AtomicMeasure measure_from_json(const json &atoms, int n, const char *name) {
    std::vector<double> locations, masses;
    for (const auto &entry : atoms) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array() ||
            entry[0].size() != static_cast<std::size_t>(n)) {
            throw ParseError(std::string(name) + ": atoms must be [[x...], mass] with n coordinates", 0);
        }
        for (const auto &c : entry[0]) locations.push_back(c.get<double>());
        masses.push_back(entry[1].get<double>());
    }
    try {
        return AtomicMeasure(n, std::move(locations), std::move(masses));
    } catch (const Error &err) {
        throw ParseError(std::string(name) + ": " + err.what(), 0);
    }
}

json profile_to_json(const RadialProfile &p) {
    json out;
    if (p.kind() == RadialProfile::Kind::riesz) {
        out["type"] = "riesz";
        out["alpha"] = p.alpha();
        out["scale"] = p.scale();
    } else {
        out["type"] = "table";
        out["r"] = p.breakpoints();
        out["k"] = p.values();
        out["interp"] = p.interp() == RadialProfile::Interp::step ? "step" : "loglinear";
    }
    return out;
}

RadialProfile profile_from_json(const json &j, int n) {
    const std::string type = j.at("type").get<std::string>();
    try {
        if (type == "riesz") {
            return RadialProfile::riesz(n, j.at("alpha").get<double>(),
                                        j.value("scale", 1.0));
        }
        if (type == "table") {
            const auto interp = j.value("interp", std::string("step")) == "loglinear"
                                        ? RadialProfile::Interp::loglinear
                                        : RadialProfile::Interp::step;
            return RadialProfile::table(n, j.at("r").get<std::vector<double>>(),
                                        j.at("k").get<std::vector<double>>(), interp);
        }
    } catch (const Error &err) {
        throw ParseError(std::string("kernel profile: ") + err.what(), 0);
    }
    throw ParseError("kernel profile: unknown type '" + type + "'", 0);
}

} // namespace

std::string serialize_instance(const Instance &inst) {
    json j;
    j["schema"] = std::string(kInstanceSchema);
    j["n"] = inst.n;
    j["p"] = inst.p;
    j["q"] = inst.q;

    json window;
    window["shift"] = std::vector<double>(inst.window.shift().begin(), inst.window.shift().end());
    window["level_min"] = inst.window.level_min();
    window["level_max"] = inst.window.level_max();
    window["roots"] = inst.window.roots();
    j["window"] = window;

    if (inst.sigma_lebesgue) {
        j["sigma"] = "lebesgue";
    } else {
        j["sigma"] = measure_to_json(inst.sigma);
    }
    j["mu"] = measure_to_json(inst.mu);

    json kernel;
    if (inst.kernel.is_radial()) {
        kernel["type"] = "radial";
        kernel["profile"] = profile_to_json(inst.kernel.profile());
    } else {
        kernel["type"] = "table";
        json entries = json::array();
        for (const auto &entry : inst.kernel.entries()) {
            entries.push_back(json::array({entry.level, entry.index, entry.value}));
        }
        kernel["entries"] = entries;
    }
    j["kernel"] = kernel;

    return j.dump(2) + "\n";
}

Instance parse_instance(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &err) {
        throw ParseError(err.what(), err.byte);
    }

    try {
        Instance inst;
        const std::string schema = j.at("schema").get<std::string>();
        if (schema != kInstanceSchema) {
            throw ParseError("unsupported schema '" + schema + "'", 0);
        }
        inst.n = j.at("n").get<int>();
        inst.p = j.at("p").get<double>();
        inst.q = j.at("q").get<double>();
        if (!(inst.p > 1.0) || !(inst.q > 0.0) || !(inst.q < inst.p)) {
            throw ParseError("exponents must satisfy 1 < p and 0 < q < p", 0);
        }

        const json &w = j.at("window");
        inst.window = LatticeWindow(
                inst.n, w.at("shift").get<std::vector<double>>(), w.at("level_min").get<int>(),
                w.at("level_max").get<int>(),
                w.at("roots").get<std::vector<std::vector<std::int64_t>>>());

        const json &sigma = j.at("sigma");
        if (sigma.is_string()) {
            if (sigma.get<std::string>() != "lebesgue") {
                throw ParseError("sigma must be an atom array or \"lebesgue\"", 0);
            }
            inst.sigma_lebesgue = true;
        } else {
            inst.sigma = measure_from_json(sigma, inst.n, "sigma");
        }
        inst.mu = measure_from_json(j.at("mu"), inst.n, "mu");

        const json &kernel = j.at("kernel");
        const std::string type = kernel.at("type").get<std::string>();
        if (type == "radial") {
            inst.kernel.form = profile_from_json(kernel.at("profile"), inst.n);
        } else if (type == "table") {
            std::vector<KernelEntry> entries;
            for (const auto &e : kernel.at("entries")) {
                if (!e.is_array() || e.size() != 3) {
                    throw ParseError("kernel entries must be [level, [k...], value]", 0);
                }
                entries.push_back({e[0].get<int>(), e[1].get<std::vector<std::int64_t>>(),
                                   e[2].get<double>()});
            }
            // reject entries outside the window now, with a clear message
            kernel_from_entries(entries, inst.window);
            inst.kernel.form = std::move(entries);
        } else {
            throw ParseError("kernel type must be 'table' or 'radial'", 0);
        }
        return inst;
    } catch (const ParseError &) {
        throw;
    } catch (const json::exception &err) {
        throw ParseError(err.what(), 0);
    } catch (const Error &err) {
        throw ParseError(err.what(), 0);
    }
}

std::uint64_t fnv1a64(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string instance_hash(const Instance &inst) {
    const std::uint64_t h = fnv1a64(serialize_instance(inst));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

TraceSetting make_setting(const Instance &inst) {
    DyadicKernel kernel = inst.kernel.is_radial()
                                  ? induce_dyadic(inst.kernel.profile(), inst.window)
                                  : kernel_from_entries(inst.kernel.entries(), inst.window);
    SigmaField sigma = inst.sigma_lebesgue ? SigmaField::lebesgue(inst.window)
                                           : SigmaField::atomic(inst.window, inst.sigma);
    return TraceSetting(inst.window, std::move(kernel), std::move(sigma));
}

Exponents make_exponents(const Instance &inst) {
    return Exponents(inst.p, inst.q);
}

} // namespace wolff
