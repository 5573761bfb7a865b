// wolff-trace: dyadic and continuous nonlinear potential computations over
// instance files. Exit codes: 0 pass, 1 IO/parse error, 2 invariant
// violation, 3 infeasible/degenerate input.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wolff/certify.hpp"
#include "wolff/continuum.hpp"
#include "wolff/errors.hpp"
#include "wolff/generator.hpp"
#include "wolff/instance.hpp"
#include "wolff/parallel.hpp"
#include "wolff/rng.hpp"
#include "wolff/version.hpp"

using json = nlohmann::json;
using namespace wolff;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitDegenerate = 3;

struct CommonOpts {
    std::string instance_path;
    std::string out_path;
    std::string format = "json";
    std::uint64_t seed = 1;
    int restarts = 32;
    double tol = 1e-9;
    int shifts = 16;
    std::string window_levels; // "a:b"
};

Instance load_instance(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open instance file: " + path, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void emit(const CommonOpts &opts, const std::string &text) {
    if (!opts.out_path.empty()) {
        // report files are append-only
        std::ofstream out(opts.out_path, std::ios::binary | std::ios::app);
        if (!out) throw ParseError("cannot open output file: " + opts.out_path, 0);
        out << text;
    } else {
        std::cout << text;
    }
}

json report_shell(const std::string &command, const Instance *inst) {
    json r;
    r["command"] = command;
    r["library_version"] = std::string(kLibraryName) + " " + std::string(kLibraryVersion);
    if (inst) r["instance_hash"] = instance_hash(*inst);
    return r;
}

void finish_report(const CommonOpts &opts, json &report, double elapsed_ms) {
    report["timings"] = {{"total_ms", elapsed_ms}};
    emit(opts, report.dump(2) + "\n");
}

json cube_json(const DyadicCube &q) {
    return {{"level", q.level}, {"index", q.index}};
}

std::pair<int, int> parse_levels(const std::string &text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("--window-levels expects a:b", 0);
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
}

// ---------------------------------------------------------------------------
// gen

struct GenOpts {
    InstanceSpec spec;
    std::string kernel = "jitter";
    double target_a = 0.0; // 0 = unconstrained
};

int run_gen(const CommonOpts &common, GenOpts &gen) {
    const auto start = std::chrono::steady_clock::now();
    auto [lmin, lmax] =
            parse_levels(common.window_levels.empty() ? "-4:0" : common.window_levels);
    gen.spec.level_min = lmin;
    gen.spec.level_max = lmax;
    gen.spec.seed = common.seed;
    gen.spec.kernel_class = gen.kernel == "riesz" ? InstanceSpec::KernelClass::riesz
                                                  : InstanceSpec::KernelClass::jitter_table;
    if (gen.target_a > 0.0) gen.spec.target_A = gen.target_a;

    const Instance inst = generate(gen.spec);
    const std::string bytes = serialize_instance(inst);
    if (common.out_path.empty()) throw ParseError("gen requires --out PATH", 0);
    std::ofstream out(common.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot open output file: " + common.out_path, 0);
    out << bytes;
    out.close();

    json report = report_shell("gen", &inst);
    report["outputs"] = {{"path", common.out_path},
                         {"A", make_setting(inst).dlbo().A},
                         {"seed", gen.spec.seed}};
    CommonOpts stdout_only = common;
    stdout_only.out_path.clear();
    finish_report(stdout_only, report, elapsed_since(start));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// per-instance analysis commands

int run_dlbo(const CommonOpts &opts) {
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = load_instance(opts.instance_path);
    const auto setting = make_setting(inst);
    const auto &dlbo = setting.dlbo();

    json out;
    out["A"] = dlbo.A;
    if (dlbo.worst_cube != kNoCube) {
        out["worst_cube"] = cube_json(setting.window().cube(dlbo.worst_cube));
    }
    std::size_t positive = 0;
    for (const double v : dlbo.kbar_inf) {
        if (v > 0.0) ++positive;
    }
    out["cubes"] = setting.window().cube_count();
    out["kbar_inf_positive"] = positive;

    json report = report_shell("dlbo", &inst);
    report["outputs"] = out;
    finish_report(opts, report, elapsed_since(start));
    return kExitOk;
}

int run_wolff(const CommonOpts &opts) {
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = load_instance(opts.instance_path);
    const auto setting = make_setting(inst);
    const Exponents e = make_exponents(inst);

    const auto field = setting.wolff_general_field(inst.mu);
    const MassTree mu_tree(inst.window, inst.mu);

    json points = json::array();
    for (std::size_t j = 0; j < inst.mu.size(); ++j) {
        const auto x = inst.mu.location(j);
        json row;
        row["x"] = std::vector<double>(x.begin(), x.end());
        row["wolff_general"] = setting.wolff_general_from_field(field, e, x);
        row["wolff_dlbo"] = setting.wolff_dlbo_from_field(mu_tree.cube_mass(), e, x);
        points.push_back(row);
    }

    json report = report_shell("wolff", &inst);
    report["outputs"] = {{"points", points}, {"A", setting.dlbo().A}};
    finish_report(opts, report, elapsed_since(start));
    return kExitOk;
}

int run_energy(const CommonOpts &opts, bool verify_mode) {
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = load_instance(opts.instance_path);
    const auto setting = make_setting(inst);
    const Exponents e = make_exponents(inst);

    const double energy = setting.energy(inst.mu, e);
    const double wolff = setting.wolff_energy(inst.mu, e);

    json out;
    out["energy"] = energy;
    out["wolff_energy"] = wolff;
    int exit_code = kExitOk;
    if (energy == 0.0 && wolff == 0.0) {
        out["ratio"] = "vacuous";
    } else {
        const double ratio = energy / wolff;
        out["ratio"] = ratio;
        if (verify_mode && !(std::isfinite(ratio) && ratio > 0.0)) {
            out["pass"] = false;
            exit_code = kExitInvariant;
        } else if (verify_mode) {
            out["pass"] = true;
        }
    }

    json report = report_shell(verify_mode ? "verify-wolff" : "energy", &inst);
    report["outputs"] = out;
    finish_report(opts, report, elapsed_since(start));
    return exit_code;
}

int run_carleson(const CommonOpts &opts) {
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = load_instance(opts.instance_path);
    const auto setting = make_setting(inst);
    const auto result = setting.carleson_constant(inst.mu, make_exponents(inst));

    json out;
    out["B"] = result.B;
    out["status"] = result.status == CarlesonResult::Status::ok ? "ok" : "vacuous";
    if (result.argmax != kNoCube) {
        out["argmax"] = cube_json(setting.window().cube(result.argmax));
    }

    json report = report_shell("carleson", &inst);
    report["outputs"] = out;
    finish_report(opts, report, elapsed_since(start));
    return kExitOk;
}

int run_mu1(const CommonOpts &opts) {
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = load_instance(opts.instance_path);
    const auto setting = make_setting(inst);
    const Exponents e = make_exponents(inst);

    const auto result = setting.make_mu1(inst.mu, e);
    json out;
    json atoms = json::array();
    for (std::size_t j = 0; j < result.mu1.size(); ++j) {
        const auto x = result.mu1.location(j);
        atoms.push_back(json::array(
                {std::vector<double>(x.begin(), x.end()), result.mu1.mass(j)}));
    }
    out["mu1"] = atoms;
    out["dropped"] = result.dropped;

    int exit_code = kExitOk;
    if (result.mu1.empty() && !inst.mu.empty()) {
        out["status"] = "degenerate";
        exit_code = kExitDegenerate;
    } else {
        const auto carleson = setting.carleson_constant(result.mu1, e);
        out["carleson_B"] = carleson.B;
        const bool pass = carleson.B <= 1.0 + 1e-12;
        out["le_one"] = pass;
        if (!pass) exit_code = kExitInvariant;
    }

    json report = report_shell("mu1", &inst);
    report["outputs"] = out;
    finish_report(opts, report, elapsed_since(start));
    return exit_code;
}

json certify_outputs(const Instance &inst, const TraceSetting &setting, const Exponents &e,
                     const AscentConfig &config) {
    const Certificate cert = certificate(setting, inst.mu, e);
    const ConstantEstimate est = best_constant(setting, inst.mu, e, config);
    verify_estimate(setting, inst.mu, e, est);
    const double trace_constant = powr(est.value, e.q());

    json out;
    out["p"] = e.p();
    out["q"] = e.q();
    out["s"] = e.s();
    out["A"] = setting.dlbo().A;
    out["certificate"] = {{"s", cert.s},
                          {"wolff_norm", cert.wolff_norm},
                          {"value", cert.value},
                          {"finite", cert.finite}};
    out["best_constant"] = est.value;
    out["trace_constant"] = trace_constant;
    out["ratio"] = cert.value > 0.0 ? trace_constant / cert.value : 0.0;
    out["witness_f"] = est.witness_f;
    out["method"] = est.method;
    out["iterations"] = est.iterations;
    out["restarts"] = config.restarts;
    out["tolerance"] = config.tolerance;
    out["seed"] = config.seed;
    return out;
}

int run_certify(const CommonOpts &opts) {
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = load_instance(opts.instance_path);
    const auto setting = make_setting(inst);
    const Exponents e = make_exponents(inst);

    AscentConfig config;
    config.restarts = opts.restarts;
    config.tolerance = opts.tol;
    config.seed = opts.seed;

    json report = report_shell("certify", &inst);
    report["outputs"] = certify_outputs(inst, setting, e, config);
    finish_report(opts, report, elapsed_since(start));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// family

struct FamilyOpts {
    int count = 50;
    InstanceSpec base;
    std::string kernel = "jitter";
    double target_a = 4.0;
};

int run_family(const CommonOpts &common, FamilyOpts &fam) {
    const auto start = std::chrono::steady_clock::now();
    auto [lmin, lmax] =
            parse_levels(common.window_levels.empty() ? "-4:0" : common.window_levels);
    fam.base.level_min = lmin;
    fam.base.level_max = lmax;
    fam.base.kernel_class = fam.kernel == "riesz" ? InstanceSpec::KernelClass::riesz
                                                  : InstanceSpec::KernelClass::jitter_table;
    fam.base.target_A = fam.target_a;

    struct Row {
        std::uint64_t seed = 0;
        std::string hash;
        double A = 0.0;
        EquivalenceRow eq;
    };
    std::vector<Row> rows(fam.count);
    parallel_for(rows.size(), [&](std::size_t i) {
        InstanceSpec spec = fam.base;
        spec.seed = Rng::mix(common.seed, i);
        const Instance inst = generate(spec);
        const auto setting = make_setting(inst);
        const Exponents e = make_exponents(inst);
        AscentConfig config;
        config.restarts = common.restarts;
        config.tolerance = common.tol;
        config.seed = spec.seed;

        Row row;
        row.seed = spec.seed;
        row.hash = instance_hash(inst);
        row.A = setting.dlbo().A;
        const auto est = best_constant(setting, inst.mu, e, config);
        row.eq.best = est.value;
        row.eq.trace_constant = powr(est.value, e.q());
        row.eq.certificate = certificate(setting, inst.mu, e).value;
        row.eq.ratio = row.eq.certificate > 0.0 ? row.eq.trace_constant / row.eq.certificate
                                                : 0.0;
        rows[i] = std::move(row);
    });

    std::vector<EquivalenceRow> eq_rows;
    for (const auto &row : rows) eq_rows.push_back(row.eq);
    const auto summary = equivalence_report(eq_rows);

    if (common.format == "csv") {
        std::ostringstream csv;
        csv << "row,index,seed,instance_hash,A,best_constant,trace_constant,certificate,ratio\n";
        csv.precision(17);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto &row = rows[i];
            csv << "member," << i << "," << row.seed << "," << row.hash << "," << row.A << ","
                << row.eq.best << "," << row.eq.trace_constant << "," << row.eq.certificate
                << "," << row.eq.ratio << "\n";
        }
        csv << "summary," << rows.size() << ",,,," << summary.min_ratio << ","
            << summary.median_ratio << "," << summary.max_ratio << ","
            << (summary.min_ratio > 0.0 ? summary.max_ratio / summary.min_ratio : 0.0) << "\n";
        emit(common, csv.str());
    } else {
        json members = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto &row = rows[i];
            members.push_back({{"index", i},
                               {"seed", row.seed},
                               {"instance_hash", row.hash},
                               {"A", row.A},
                               {"best_constant", row.eq.best},
                               {"trace_constant", row.eq.trace_constant},
                               {"certificate", row.eq.certificate},
                               {"ratio", row.eq.ratio}});
        }
        json report = report_shell("family", nullptr);
        report["outputs"] = {{"members", members},
                             {"min_ratio", summary.min_ratio},
                             {"median_ratio", summary.median_ratio},
                             {"max_ratio", summary.max_ratio}};
        finish_report(common, report, elapsed_since(start));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// compare-continuum

int run_compare_continuum(const CommonOpts &opts) {
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = load_instance(opts.instance_path);
    if (!inst.kernel.is_radial()) {
        throw Error("compare-continuum requires a radial kernel instance");
    }
    const Exponents e = make_exponents(inst);
    const RadialProfile &profile = inst.kernel.profile();
    const ReferenceMeasure sigma = inst.sigma_lebesgue
                                           ? ReferenceMeasure::lebesgue(inst.n)
                                           : ReferenceMeasure::atomic(inst.sigma);

    int lmin = inst.window.level_min(), lmax = inst.window.level_max();
    if (!opts.window_levels.empty()) std::tie(lmin, lmax) = parse_levels(opts.window_levels);

    std::vector<Point> shifts;
    shifts.push_back(Point(inst.n, 0.0));
    Rng rng(Rng::mix(opts.seed, 0xc0));
    const double span = std::ldexp(1.0, lmax);
    for (int i = 1; i < opts.shifts; ++i) {
        Point z(inst.n);
        for (int a = 0; a < inst.n; ++a) z[a] = rng.uniform(0.0, span);
        shifts.push_back(std::move(z));
    }

    MonteCarloOptions mc;
    mc.seed = Rng::mix(opts.seed, 0xe0);
    const auto energy = energy_continuous(profile, sigma, inst.mu, e, mc);
    const auto shifted = shifted_energy_sup(profile, sigma, inst.mu, e, shifts, lmin, lmax);

    json out;
    out["energy_continuous"] = energy.value;
    out["energy_std_error"] = energy.std_error;
    out["shifted_energy_sup"] = shifted.sup;
    out["ratio"] = shifted.sup > 0.0 ? energy.value / shifted.sup : 0.0;
    out["shifts_used"] = shifts.size();
    out["seed"] = opts.seed;
    out["window_levels"] = {lmin, lmax};
    out["doubling_ratio_sampled"] = sampled_doubling_ratio(sigma, Rng::mix(opts.seed, 0xd0));

    json report = report_shell("compare-continuum", &inst);
    report["outputs"] = out;
    finish_report(opts, report, elapsed_since(start));
    return shifted.sup > 0.0 || energy.value == 0.0 ? kExitOk : kExitDegenerate;
}

// ---------------------------------------------------------------------------
// bench

struct BenchCell {
    int depth = 0;
    std::size_t atoms = 0;
};

double time_ms(const std::function<void()> &body) {
    // repeat until the measurement is long enough to trust, keep the minimum
    double best = std::numeric_limits<double>::infinity();
    double total = 0.0;
    int reps = 0;
    while (reps < 3 || (total < 50.0 && reps < 200)) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const double ms = elapsed_since(t0);
        best = std::min(best, ms);
        total += ms;
        ++reps;
    }
    return best;
}

int run_bench(const CommonOpts &opts, const std::string &sizes) {
    std::vector<BenchCell> cells;
    std::stringstream ss(sizes);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto colon = token.find(':');
        if (colon == std::string::npos) throw ParseError("--sizes expects depth:atoms,...", 0);
        cells.push_back({std::stoi(token.substr(0, colon)),
                         static_cast<std::size_t>(std::stoul(token.substr(colon + 1)))});
    }

    std::ostringstream csv;
    csv << "op,n,depth,atoms,naive_ms,tree_ms,speedup,max_rel_discrepancy\n";
    csv.precision(17);
    bool all_exact = true;

    for (const auto &cell : cells) {
        InstanceSpec spec;
        spec.seed = Rng::mix(opts.seed, cell.depth * 131071 + cell.atoms);
        spec.n = 1;
        spec.level_min = -cell.depth;
        spec.level_max = 0;
        spec.sigma_atoms = cell.atoms;
        spec.mu_atoms = cell.atoms;
        const Instance inst = generate(spec);
        const auto setting = make_setting(inst);
        const Exponents e = make_exponents(inst);
        const auto &w = inst.window;
        const auto &K = setting.kernel_values();

        // precompute every cube as a corner box for the naive loops
        std::vector<DyadicCube> cubes;
        cubes.reserve(w.cube_count());
        for (CubeId id = 0; id < w.cube_count(); ++id) cubes.push_back(w.cube(id));
        auto naive_contains = [](const DyadicCube &q, std::span<const double> x) {
            const double side = q.side();
            for (int a = 0; a < q.dim(); ++a) {
                const double lo = static_cast<double>(q.index[a]) * side + q.shift[a];
                if (!(x[a] >= lo && x[a] < lo + side)) return false;
            }
            return true;
        };

        // --- apply_T sweep: T[sigma] at all mu atoms
        const std::vector<double> ones(inst.sigma.size(), 1.0);
        std::vector<double> tree_vals, naive_vals(inst.mu.size(), 0.0);
        const double tree_ms = time_ms([&] { tree_vals = setting.apply_T_sweep(ones, inst.mu); });
        const double naive_ms = time_ms([&] {
            std::vector<double> integrals(w.cube_count(), 0.0);
            for (CubeId id = 0; id < w.cube_count(); ++id) {
                double s = 0.0;
                for (std::size_t j = 0; j < inst.sigma.size(); ++j) {
                    if (naive_contains(cubes[id], inst.sigma.location(j))) {
                        s += inst.sigma.mass(j);
                    }
                }
                integrals[id] = s;
            }
            for (std::size_t i = 0; i < inst.mu.size(); ++i) {
                double t = 0.0;
                for (CubeId id = 0; id < w.cube_count(); ++id) {
                    if (naive_contains(cubes[id], inst.mu.location(i))) {
                        t += K[id] * integrals[id];
                    }
                }
                naive_vals[i] = t;
            }
        });
        double disc = 0.0;
        for (std::size_t i = 0; i < naive_vals.size(); ++i) {
            const double scale = std::max({std::abs(naive_vals[i]), std::abs(tree_vals[i]), 1e-300});
            disc = std::max(disc, std::abs(naive_vals[i] - tree_vals[i]) / scale);
        }
        csv << "apply_T,1," << cell.depth << "," << cell.atoms << "," << naive_ms << ","
            << tree_ms << "," << naive_ms / tree_ms << "," << disc << "\n";
        if (disc > 1e-12) all_exact = false;

        // --- wolff sweep: W[mu] at all mu atoms (DLBO form)
        std::vector<double> wolff_tree(inst.mu.size()), wolff_naive(inst.mu.size());
        const auto &kbar = setting.dlbo().kbar_inf;
        const double wolff_tree_ms = time_ms([&] {
            const MassTree mu_tree(w, inst.mu);
            for (std::size_t i = 0; i < inst.mu.size(); ++i) {
                wolff_tree[i] =
                        setting.wolff_dlbo_or_zero(mu_tree.cube_mass(), e, inst.mu.location(i));
            }
        });
        const double wolff_naive_ms = time_ms([&] {
            std::vector<double> mass(w.cube_count(), 0.0);
            for (CubeId id = 0; id < w.cube_count(); ++id) {
                double s = 0.0;
                for (std::size_t j = 0; j < inst.mu.size(); ++j) {
                    if (naive_contains(cubes[id], inst.mu.location(j))) s += inst.mu.mass(j);
                }
                mass[id] = s;
            }
            for (std::size_t i = 0; i < inst.mu.size(); ++i) {
                double t = 0.0;
                for (CubeId id = 0; id < w.cube_count(); ++id) {
                    if (naive_contains(cubes[id], inst.mu.location(i))) {
                        t += K[id] * powr(kbar[id], e.pm1()) * powr(mass[id], e.pm1()) *
                             setting.sigma().of_cube(id);
                    }
                }
                wolff_naive[i] = t;
            }
        });
        disc = 0.0;
        for (std::size_t i = 0; i < wolff_naive.size(); ++i) {
            const double scale =
                    std::max({std::abs(wolff_naive[i]), std::abs(wolff_tree[i]), 1e-300});
            disc = std::max(disc, std::abs(wolff_naive[i] - wolff_tree[i]) / scale);
        }
        csv << "wolff,1," << cell.depth << "," << cell.atoms << "," << wolff_naive_ms << ","
            << wolff_tree_ms << "," << wolff_naive_ms / wolff_tree_ms << "," << disc << "\n";
        if (disc > 1e-12) all_exact = false;
    }

    emit(opts, csv.str());
    return all_exact ? kExitOk : kExitInvariant;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"wolff-trace: dyadic and continuous nonlinear potential laboratory"};
    app.require_subcommand(1);

    CommonOpts common;
    GenOpts gen;
    FamilyOpts fam;
    std::string bench_sizes = "4:100,6:1000,8:10000,10:10000";

    auto add_common = [&](CLI::App *cmd, bool needs_instance) {
        if (needs_instance) {
            cmd->add_option("--instance", common.instance_path, "instance file")->required();
        }
        cmd->add_option("--out", common.out_path, "output path (reports are appended)");
        cmd->add_option("--format", common.format, "json|csv")
                ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--seed", common.seed, "seed for any randomized part");
        cmd->add_option("--restarts", common.restarts, "ascent restarts");
        cmd->add_option("--tol", common.tol, "ascent convergence tolerance");
        cmd->add_option("--shifts", common.shifts, "number of lattice shifts");
        cmd->add_option("--window-levels", common.window_levels, "override levels a:b");
    };

    auto *cmd_gen = app.add_subcommand("gen", "generate a deterministic instance file");
    add_common(cmd_gen, false);
    cmd_gen->add_option("--n", gen.spec.n, "dimension (1-3)");
    cmd_gen->add_option("--sigma-atoms", gen.spec.sigma_atoms, "sigma atom count");
    cmd_gen->add_option("--mu-atoms", gen.spec.mu_atoms, "mu atom count");
    cmd_gen->add_option("--roots", gen.spec.roots_per_axis, "roots per axis at level_max");
    cmd_gen->add_option("--p", gen.spec.p, "exponent p");
    cmd_gen->add_option("--q", gen.spec.q, "exponent q");
    cmd_gen->add_option("--kernel", gen.kernel, "jitter|riesz")
            ->check(CLI::IsMember({"jitter", "riesz"}));
    cmd_gen->add_option("--target-a", gen.target_a, "DLBO ceiling (0 = unconstrained)");
    cmd_gen->add_flag("--lebesgue-sigma", gen.spec.sigma_lebesgue, "use Lebesgue sigma");

    auto *cmd_dlbo = app.add_subcommand("dlbo", "DLBO oscillation constant");
    add_common(cmd_dlbo, true);
    auto *cmd_wolff = app.add_subcommand("wolff", "Wolff potentials at mu atoms");
    add_common(cmd_wolff, true);
    auto *cmd_energy = app.add_subcommand("energy", "energy and Wolff energy");
    add_common(cmd_energy, true);
    auto *cmd_carleson = app.add_subcommand("carleson", "Carleson embedding constant");
    add_common(cmd_carleson, true);
    auto *cmd_mu1 = app.add_subcommand("mu1", "deflated measure and its Carleson check");
    add_common(cmd_mu1, true);
    auto *cmd_certify = app.add_subcommand("certify", "trace certificate vs best constant");
    add_common(cmd_certify, true);
    auto *cmd_verify = app.add_subcommand("verify-wolff", "Wolff inequality sandwich check");
    add_common(cmd_verify, true);
    auto *cmd_compare =
            app.add_subcommand("compare-continuum", "continuous vs shifted dyadic energy");
    add_common(cmd_compare, true);

    auto *cmd_family = app.add_subcommand("family", "seeded instance family report");
    add_common(cmd_family, false);
    cmd_family->add_option("--count", fam.count, "family size");
    cmd_family->add_option("--n", fam.base.n, "dimension");
    cmd_family->add_option("--sigma-atoms", fam.base.sigma_atoms, "sigma atoms per member");
    cmd_family->add_option("--mu-atoms", fam.base.mu_atoms, "mu atoms per member");
    cmd_family->add_option("--p", fam.base.p, "exponent p");
    cmd_family->add_option("--q", fam.base.q, "exponent q");
    cmd_family->add_option("--kernel", fam.kernel, "jitter|riesz");
    cmd_family->add_option("--target-a", fam.target_a, "DLBO ceiling");

    auto *cmd_bench = app.add_subcommand("bench", "naive vs tree sweep timings");
    add_common(cmd_bench, false);
    cmd_bench->add_option("--sizes", bench_sizes, "grid as depth:atoms,...");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &err) {
        return app.exit(err) == 0 ? kExitOk : kExitIo;
    }

    try {
        if (cmd_gen->parsed()) return run_gen(common, gen);
        if (cmd_dlbo->parsed()) return run_dlbo(common);
        if (cmd_wolff->parsed()) return run_wolff(common);
        if (cmd_energy->parsed()) return run_energy(common, false);
        if (cmd_verify->parsed()) return run_energy(common, true);
        if (cmd_carleson->parsed()) return run_carleson(common);
        if (cmd_mu1->parsed()) return run_mu1(common);
        if (cmd_certify->parsed()) return run_certify(common);
        if (cmd_family->parsed()) return run_family(common, fam);
        if (cmd_compare->parsed()) return run_compare_continuum(common);
        if (cmd_bench->parsed()) return run_bench(common, bench_sizes);
    } catch (const ParseError &err) {
        std::cerr << "parse error at byte " << err.position << ": " << err.what() << "\n";
        return kExitIo;
    } catch (const TargetAUnreachable &err) {
        std::cerr << "degenerate: " << err.what() << "\n";
        return kExitDegenerate;
    } catch (const NoMass &err) {
        std::cerr << "degenerate: " << err.what() << "\n";
        return kExitDegenerate;
    } catch (const DivergentTail &err) {
        std::cerr << "degenerate: " << err.what() << " (exponent " << err.exponent << ")\n";
        return kExitDegenerate;
    } catch (const SingularEvaluation &err) {
        std::cerr << "degenerate: " << err.what() << "\n";
        return kExitDegenerate;
    } catch (const Infeasible &err) {
        std::cerr << "infeasible: " << err.what() << "\n";
        return kExitDegenerate;
    } catch (const InvariantViolation &err) {
        std::cerr << "invariant violation: " << err.what() << "\n";
        return kExitInvariant;
    } catch (const Error &err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    } catch (const std::exception &err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    }
    return kExitIo;
}
