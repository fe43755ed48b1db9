#include "ergolab/experiment.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ergolab/catalog.hpp"
#include "ergolab/cocycle.hpp"
#include "ergolab/counterexample.hpp"
#include "ergolab/entropy.hpp"
#include "ergolab/measures.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/rng.hpp"

namespace ergolab {

namespace {

using nlohmann::json;

json point_json(const Point& p) {
    json a = json::array();
    for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
    return a;
}

json measure_json(const EmpiricalMeasure& m) {
    json support = json::array();
    for (const auto& p : m.support) support.push_back(point_json(p));
    return json{{"support", support}, {"weights", m.weights}};
}

Point point_from_config(const SystemSpec& sys, const ExperimentConfig& cfg, std::uint64_t salt = 0) {
    if (!cfg.x.empty()) {
        if (static_cast<int>(cfg.x.size()) != sys.space.dim())
            throw std::invalid_argument("--x needs " + std::to_string(sys.space.dim()) + " coordinates");
        Point p(0.0);
        switch (cfg.x.size()) {
            case 1: p = Point(cfg.x[0]); break;
            case 2: p = Point(cfg.x[0], cfg.x[1]); break;
            default: p = Point(cfg.x[0], cfg.x[1], cfg.x[2]); break;
        }
        if (!sys.space.contains(p, 1e-12)) throw std::invalid_argument("--x outside the phase space");
        return p;
    }
    Rng rng = Rng::for_sample(cfg.seed, salt);
    return sys.space.sample(rng);
}

std::vector<long long> default_m_list(const ExperimentConfig& cfg) {
    if (!cfg.m_list.empty()) return cfg.m_list;
    std::vector<long long> ms;
    for (long long m = 1; m <= 10; ++m) ms.push_back(m);
    return ms;
}

std::vector<long long> default_p_list(const ExperimentConfig& cfg) {
    if (!cfg.p_list.empty()) return cfg.p_list;
    return {1, 2, 4, 8};
}

json config_echo(const ExperimentConfig& cfg) {
    json j{{"command", cfg.command}, {"seed", cfg.seed}, {"n", cfg.n}};
    if (!cfg.system.empty()) j["system"] = cfg.system;
    return j;
}

std::string csv_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

ExperimentResult run_simulate(const ExperimentConfig& cfg) {
    const SystemSpec sys = make_system(cfg.system);
    const Point x0 = point_from_config(sys, cfg);
    const auto orbit = iterate(sys, x0, cfg.n);
    ExperimentResult res;
    res.report = json{{"schema", 1}, {"config", config_echo(cfg)}};
    json pts = json::array();
    for (const auto& p : orbit) pts.push_back(point_json(p));
    res.report["orbit"] = pts;
    std::ostringstream csv;
    csv << "k";
    for (int c = 0; c < sys.space.dim(); ++c) csv << ",x" << c;
    csv << "\n";
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        csv << k;
        for (int c = 0; c < sys.space.dim(); ++c) csv << "," << csv_double(orbit[k][c]);
        csv << "\n";
    }
    res.csv = csv.str();
    return res;
}

json lyapunov_json(const LyapunovReport& lyap, const StrongExponentReport& strong) {
    json lambda_p = json::object();
    for (std::size_t i = 0; i < strong.p_list.size(); ++i)
        lambda_p[std::to_string(strong.p_list[i])] = strong.lambda_p[i];
    json sigma_p = json::object();
    for (std::size_t i = 0; i < strong.p_list.size(); ++i)
        sigma_p[std::to_string(strong.p_list[i])] = strong.sigma_lambda_p[i];
    return json{{"x", point_json(lyap.x)},
                {"n", lyap.n},
                {"chi", lyap.chi},
                {"sigma_chi_plus", lyap.sigma_chi_plus},
                {"lambda_p", lambda_p},
                {"lambda", strong.lambda},
                {"sigma_lambda_p", sigma_p},
                {"sigma_lambda", strong.sigma_lambda}};
}

ExperimentResult run_lyapunov(const ExperimentConfig& cfg) {
    const SystemSpec sys = make_system(cfg.system);
    const Point x0 = point_from_config(sys, cfg);
    const auto lyap = lyapunov_report(sys, x0, cfg.n);
    const auto strong = strong_exponents(sys, x0, default_p_list(cfg), cfg.n);
    ExperimentResult res;
    res.report = json{{"schema", 1}, {"config", config_echo(cfg)}, {"result", lyapunov_json(lyap, strong)}};
    std::ostringstream csv;
    csv << "k,chi_k\n";
    for (std::size_t k = 0; k < lyap.chi.size(); ++k) csv << (k + 1) << "," << csv_double(lyap.chi[k]) << "\n";
    res.csv = csv.str();
    return res;
}

ExperimentResult run_entropy(const ExperimentConfig& cfg) {
    const SystemSpec sys = make_system(cfg.system);
    const Point x0 = point_from_config(sys, cfg);
    const Partition part = Partition::grid(sys.space, cfg.partition);
    const auto est = entropy_estimate(sys, x0, cfg.n, part, default_m_list(cfg));
    ExperimentResult res;
    res.report = json{{"schema", 1},
                      {"config", config_echo(cfg)},
                      {"result",
                       json{{"x", point_json(x0)},
                            {"n", cfg.n},
                            {"partition_cells", cfg.partition},
                            {"m", est.m_list},
                            {"curve", est.curve},
                            {"estimate", est.estimate},
                            {"undersampled", est.undersampled}}}};
    std::ostringstream csv;
    csv << "m,entropy_over_m\n";
    for (std::size_t i = 0; i < est.m_list.size(); ++i)
        csv << est.m_list[i] << "," << csv_double(est.curve[i]) << "\n";
    res.csv = csv.str();
    return res;
}

ExperimentResult run_kozlovski(const ExperimentConfig& cfg) {
    const SystemSpec sys = make_system(cfg.system);
    const double v = kozlovski_estimate(sys, cfg.n, cfg.samples, cfg.seed);
    ExperimentResult res;
    res.report = json{{"schema", 1},
                      {"config", config_echo(cfg)},
                      {"result", json{{"estimate", v}, {"n", cfg.n}, {"samples", cfg.samples}}}};
    res.csv = "estimate\n" + csv_double(v) + "\n";
    return res;
}

ExperimentResult run_separated(const ExperimentConfig& cfg) {
    const SystemSpec sys = make_system(cfg.system);
    const double v = separated_entropy(sys, cfg.n, cfg.alpha, cfg.grid_step);
    ExperimentResult res;
    res.report = json{{"schema", 1},
                      {"config", config_echo(cfg)},
                      {"result",
                       json{{"estimate", v}, {"n", cfg.n}, {"alpha", cfg.alpha}, {"grid_step", cfg.grid_step}}}};
    res.csv = "estimate\n" + csv_double(v) + "\n";
    return res;
}

json measure_set_json(const MeasureSet& set) {
    json clusters = json::array();
    for (std::size_t i = 0; i < set.members.size(); ++i) {
        json c = measure_json(set.members[i]);
        c["multiplicity"] = set.multiplicities[i];
        clusters.push_back(c);
    }
    return clusters;
}

ExperimentResult run_pw(const ExperimentConfig& cfg) {
    const SystemSpec sys = make_system(cfg.system);
    const Point x0 = point_from_config(sys, cfg);
    const auto fam = TestFunctionFamily::make_default(sys.space, cfg.nphi);
    std::vector<long long> cps = cfg.checkpoints;
    if (cps.empty()) {
        for (long long c : {cfg.n / 4, cfg.n / 2, 3 * cfg.n / 4, cfg.n})
            if (c >= 1 && (cps.empty() || c > cps.back())) cps.push_back(c);
    }
    const auto set = pw_estimate(sys, x0, cps, fam, cfg.eps_cluster);
    ExperimentResult res;
    res.report = json{{"schema", 1},
                      {"config", config_echo(cfg)},
                      {"result", json{{"x", point_json(x0)}, {"clusters", measure_set_json(set)}}}};
    res.csv = "cluster,multiplicity,support_size\n";
    for (std::size_t i = 0; i < set.members.size(); ++i)
        res.csv += std::to_string(i) + "," + std::to_string(set.multiplicities[i]) + "," +
                   std::to_string(set.members[i].support.size()) + "\n";
    return res;
}

ExperimentResult run_physical_like(const ExperimentConfig& cfg) {
    const SystemSpec sys = make_system(cfg.system);
    const auto fam = TestFunctionFamily::make_default(sys.space, cfg.nphi);
    const auto set = physical_like_estimate(sys, cfg.samples, cfg.n, cfg.seed, fam, cfg.eps_cluster);
    ExperimentResult res;
    res.report = json{{"schema", 1},
                      {"config", config_echo(cfg)},
                      {"result", json{{"samples", cfg.samples}, {"clusters", measure_set_json(set)}}}};
    res.csv = "cluster,multiplicity,support_size\n";
    for (std::size_t i = 0; i < set.members.size(); ++i)
        res.csv += std::to_string(i) + "," + std::to_string(set.multiplicities[i]) + "," +
                   std::to_string(set.members[i].support.size()) + "\n";
    return res;
}

ExperimentResult run_inequality(const ExperimentConfig& cfg) {
    const SystemSpec sys = make_system(cfg.system);
    const Partition part = Partition::grid(sys.space, cfg.partition);
    const auto m_list = default_m_list(cfg);

    struct Row {
        Point x;
        double sigma = 0.0;
        double entropy = 0.0;
        bool ruelle_ok = false;
        bool main_ok = false;
    };
    std::vector<Row> rows(static_cast<std::size_t>(cfg.samples));
    parallel_for(cfg.samples, [&](int i) {
        Rng rng = Rng::for_sample(cfg.seed, static_cast<std::uint64_t>(i));
        Row r;
        r.x = sys.space.sample(rng);
        r.sigma = lyapunov_report(sys, r.x, cfg.lyap_n).sigma_chi_plus;
        r.entropy = entropy_estimate(sys, r.x, cfg.n, part, m_list).estimate;
        r.ruelle_ok = r.entropy <= r.sigma + cfg.tol;
        r.main_ok = r.entropy >= r.sigma - cfg.tol;
        rows[static_cast<std::size_t>(i)] = r;
    });

    ExperimentResult res;
    json samples = json::array();
    bool all_ok = true;
    std::ostringstream csv;
    csv << "index,x,sigma_chi_plus,entropy_estimate,ruelle_ok,main_theorem_ok,margin\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        all_ok = all_ok && r.ruelle_ok && r.main_ok;
        samples.push_back(json{{"x", point_json(r.x)},
                               {"sigma_chi_plus", r.sigma},
                               {"entropy_estimate", r.entropy},
                               {"ruelle_ok", r.ruelle_ok},
                               {"main_theorem_ok", r.main_ok},
                               {"margin", r.entropy - r.sigma}});
        std::string xcol = csv_double(r.x[0]);
        for (int d = 1; d < r.x.dim(); ++d) xcol += ";" + csv_double(r.x[d]);
        csv << i << "," << xcol << "," << csv_double(r.sigma) << "," << csv_double(r.entropy)
            << "," << (r.ruelle_ok ? 1 : 0) << "," << (r.main_ok ? 1 : 0) << ","
            << csv_double(r.entropy - r.sigma) << "\n";
    }
    res.report = json{{"schema", 1},
                      {"config", config_echo(cfg)},
                      {"result", json{{"samples", samples}, {"all_ok", all_ok}, {"tol", cfg.tol}}}};
    res.csv = csv.str();
    res.exit_code = all_ok ? 0 : 2;
    return res;
}

ExperimentResult run_counterexample(const ExperimentConfig& cfg) {
    CounterexampleParams params;
    params.r = cfg.cr_r;
    params.lambda = cfg.cr_lambda;
    params.n0 = cfg.cr_n0;
    params.n_max = cfg.cr_nmax;
    const CounterexampleMap map = CounterexampleMap::build(params);

    json stages = json::array();
    for (const auto& s : map.stages()) {
        json js{{"n", s.n},
                {"j_lo", s.j_lo},
                {"j_hi", s.j_hi},
                {"log10_alpha", s.alpha.log_abs() / std::log(10.0)},
                {"log10_g", s.g_val.log_abs() / std::log(10.0)},
                {"crnorm_proxy", s.crnorm_proxy},
                {"branch_fraction", s.branch_fraction},
                {"transit_steps", s.transit_steps}};
        if (s.N_exact)
            js["N"] = s.N;
        else
            js["log10_N"] = s.log_N / std::log(10.0);
        stages.push_back(js);
    }

    json schedule = json::array();
    bool schedule_ok = true;
    for (int n = params.n0; n < params.n_max; ++n) {
        const auto e = map.verify_schedule(n);
        schedule_ok = schedule_ok && e.ok();
        schedule.push_back(json{{"n", e.n},
                                {"transit_steps", e.transit_steps},
                                {"contained", e.contained},
                                {"landed", e.landed},
                                {"landing_err_lo", e.landing_err_lo},
                                {"landing_err_hi", e.landing_err_hi}});
    }

    const auto cantor = map.cantor_measure(params.n_max);
    json cantor_curve = json::array();
    for (int up = params.n0; up <= params.n_max; ++up) {
        const auto part = map.cantor_measure(up);
        cantor_curve.push_back(json{{"up_to", up},
                                    {"partial_product", part.partial_product},
                                    {"partial_measure", part.partial_measure}});
    }
    const auto expo = map.exponent_on_E(params.n_max - params.n0 + 1);
    json expo_curve = json::array();
    for (const auto& se : expo.per_stage)
        expo_curve.push_back(json{{"n", se.n},
                                  {"running_ratio", se.running_ratio},
                                  {"telescoped_ratio", se.telescoped_ratio}});

    ExperimentResult res;
    json result{{"stages", stages},
                {"schedule", schedule},
                {"schedule_ok", schedule_ok},
                {"cantor",
                 json{{"leb_E_n0", cantor.leb_E_n0},
                      {"partial_product", cantor.partial_product},
                      {"partial_measure", cantor.partial_measure},
                      {"limit_product", cantor.limit_product},
                      {"limit_measure", cantor.limit_measure},
                      {"curve", cantor_curve}}},
                {"exponent",
                 json{{"accumulated", expo.accumulated},
                      {"telescoped", expo.telescoped},
                      {"target", expo.target},
                      {"curve", expo_curve}}}};

    if (cfg.certify) {
        long long steps = cfg.orbit_steps;
        if (steps <= 0) {
            steps = 0;
            for (const auto& s : map.stages()) steps += s.transit_steps + 1;
        }
        const auto cert = map.certify(steps);
        // weak-* distance of the symbolic orbit to the Dirac mass at 0
        std::vector<Point> pts;
        pts.reserve(cert.orbit_values.size());
        for (double v : cert.orbit_values) pts.push_back(Point(v));
        const auto fam = TestFunctionFamily::make_default(PhaseSpace::interval(0.0, 1.5), cfg.nphi);
        const double dirac_dist =
            dmetric(EmpiricalMeasure::from_points(std::move(pts)), EmpiricalMeasure::dirac(Point(0.0)), fam);
        result["certify"] = json{{"orbit_steps", cert.orbit_steps},
                                 {"stages_covered", cert.stages_covered},
                                 {"fraction_below_delta", cert.fraction_below_delta},
                                 {"fraction_threshold", cert.fraction_threshold},
                                 {"fraction_ok", cert.fraction_ok},
                                 {"exponent_running", cert.exponent_running},
                                 {"exponent_target", cert.exponent_target},
                                 {"dirac_distance", dirac_dist},
                                 {"schedule_ok", cert.schedule_ok},
                                 {"ok", cert.ok()}};
        res.exit_code = cert.ok() ? 0 : 2;
    }
    res.report = json{{"schema", 1}, {"config", config_echo(cfg)}, {"result", result}};
    std::ostringstream csv;
    csv << "n,running_exponent,telescoped\n";
    for (const auto& se : expo.per_stage)
        csv << se.n << "," << csv_double(se.running_ratio) << "," << csv_double(se.telescoped_ratio) << "\n";
    res.csv = csv.str();
    return res;
}

ExperimentResult run_admissible(const ExperimentConfig& cfg) {
    if (cfg.blocks.empty()) throw std::invalid_argument("admissible: --blocks must be nonempty");
    const auto out = count_admissible(cfg.blocks, cfg.a_threshold, cfg.floor_guard);
    ExperimentResult res;
    json result{{"count", out.count}, {"f_argument", out.f_argument}};
    if (std::isfinite(out.bound))
        result["bound"] = out.bound;
    else
        result["bound"] = nullptr;
    res.report = json{{"schema", 1}, {"config", config_echo(cfg)}, {"result", result}};
    res.csv = "count,f_argument\n" + std::to_string(out.count) + "," + csv_double(out.f_argument) + "\n";
    return res;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.command == "simulate") return run_simulate(cfg);
    if (cfg.command == "lyapunov") return run_lyapunov(cfg);
    if (cfg.command == "entropy") return run_entropy(cfg);
    if (cfg.command == "kozlovski") return run_kozlovski(cfg);
    if (cfg.command == "separated") return run_separated(cfg);
    if (cfg.command == "pw") return run_pw(cfg);
    if (cfg.command == "physical-like") return run_physical_like(cfg);
    if (cfg.command == "inequality") return run_inequality(cfg);
    if (cfg.command == "counterexample") return run_counterexample(cfg);
    if (cfg.command == "admissible") return run_admissible(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

void emit(const ExperimentResult& res, const ExperimentConfig& cfg) {
    std::string payload;
    if (cfg.format == "json")
        payload = res.report.dump(2) + "\n";
    else if (cfg.format == "csv")
        payload = res.csv;
    else
        throw std::invalid_argument("unknown format '" + cfg.format + "' (json or csv)");
    if (cfg.output.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path '" + cfg.output + "'");
    out << payload;
    if (!out) throw std::runtime_error("failed writing output path '" + cfg.output + "'");
}

namespace {

void add_common_flags(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--output,-o", cfg.output, "Write the report to this path (default: stdout)");
    cmd->add_option("--format", cfg.format, "Output format: json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", cfg.seed, "64-bit seed; identical seeds give byte-identical reports");
}

void add_system_flag(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--system", cfg.system,
                    "System id plus parameters, e.g. --system logistic mu=4.0 | cat | doubling | "
                    "rotation theta=0.618 | tent | counterexample r=2 lambda=2 n0=5 nmax=12")
        ->required()
        ->expected(-1);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    ExperimentConfig cfg;
    CLI::App app{"ergolab: orbitwise Lyapunov/entropy estimators, empirical-measure tools and a certified "
                 "finite-smoothness counterexample"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read defaults from a key=value file; explicit flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);  // unknown keys are rejected
    app.fallthrough(false);

    auto* sim = app.add_subcommand("simulate", "Iterate a system and emit the orbit (CSV columns: k,x0[,x1])");
    add_system_flag(sim, cfg);
    sim->add_option("--n", cfg.n, "Number of steps");
    sim->add_option("--x", cfg.x, "Initial point (defaults to a seeded sample)")->expected(-1);
    add_common_flags(sim, cfg);

    auto* lya = app.add_subcommand(
        "lyapunov", "Finite-time Lyapunov spectrum and strong exponents (CSV columns: k,chi_k)");
    add_system_flag(lya, cfg);
    lya->add_option("--n", cfg.n, "Orbit length");
    lya->add_option("--x", cfg.x, "Initial point")->expected(-1);
    lya->add_option("--p-list", cfg.p_list, "Block lengths for the strong exponents")->expected(-1);
    add_common_flags(lya, cfg);

    auto* ent = app.add_subcommand(
        "entropy", "Plug-in entropy of the empirical measure (CSV columns: m,entropy_over_m)");
    add_system_flag(ent, cfg);
    ent->add_option("--n", cfg.n, "Orbit length");
    ent->add_option("--x", cfg.x, "Initial point")->expected(-1);
    ent->add_option("--partition", cfg.partition, "Grid cells per axis (one value per axis)")->expected(-1);
    ent->add_option("--m-list", cfg.m_list, "Refinement depths m")->expected(-1);
    add_common_flags(ent, cfg);

    auto* koz = app.add_subcommand(
        "kozlovski", "Monte Carlo integral entropy estimate (CSV columns: estimate)");
    add_system_flag(koz, cfg);
    koz->add_option("--n", cfg.n, "Cocycle length");
    koz->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    add_common_flags(koz, cfg);

    auto* sep = app.add_subcommand(
        "separated", "Greedy separated-set entropy estimate (CSV columns: estimate)");
    add_system_flag(sep, cfg);
    sep->add_option("--n", cfg.n, "Orbit length");
    sep->add_option("--alpha", cfg.alpha, "Separation scale");
    sep->add_option("--grid-step", cfg.grid_step, "Candidate grid step (< alpha)");
    add_common_flags(sep, cfg);

    auto* pw = app.add_subcommand(
        "pw", "Accumulation points of the empirical measures (CSV: cluster,multiplicity,support_size)");
    add_system_flag(pw, cfg);
    pw->add_option("--n", cfg.n, "Largest checkpoint when --checkpoints is absent");
    pw->add_option("--x", cfg.x, "Initial point")->expected(-1);
    pw->add_option("--checkpoints", cfg.checkpoints, "Explicit checkpoint list")->expected(-1);
    pw->add_option("--nphi", cfg.nphi, "Test-function family size");
    pw->add_option("--eps-cluster", cfg.eps_cluster, "Cluster radius in the weak-* metric");
    add_common_flags(pw, cfg);

    auto* pl = app.add_subcommand(
        "physical-like", "Pooled pw clusters over Lebesgue-random starts (CSV: cluster,multiplicity,support_size)");
    add_system_flag(pl, cfg);
    pl->add_option("--n", cfg.n, "Orbit length per sample");
    pl->add_option("--samples", cfg.samples, "Number of random starts");
    pl->add_option("--nphi", cfg.nphi, "Test-function family size");
    pl->add_option("--eps-cluster", cfg.eps_cluster, "Cluster radius in the weak-* metric");
    add_common_flags(pl, cfg);

    auto* ineq = app.add_subcommand(
        "inequality",
        "Per-sample entropy vs positive exponent sum; exit 2 when a sample violates either bound "
        "(CSV columns: index,x,sigma_chi_plus,entropy_estimate,ruelle_ok,main_theorem_ok,margin)");
    add_system_flag(ineq, cfg);
    ineq->add_option("--n", cfg.n, "Orbit length for the entropy estimate");
    ineq->add_option("--lyap-n", cfg.lyap_n, "Orbit length for the exponents");
    ineq->add_option("--samples", cfg.samples, "Number of Lebesgue-random samples");
    ineq->add_option("--partition", cfg.partition, "Grid cells per axis (one value per axis)")->expected(-1);
    ineq->add_option("--m-list", cfg.m_list, "Refinement depths m")->expected(-1);
    ineq->add_option("--tol", cfg.tol, "Tolerance for both inequalities");
    add_common_flags(ineq, cfg);

    auto* cex = app.add_subcommand(
        "counterexample",
        "Build the finite-smoothness map, verify its schedule and report the Cantor measure and exponent "
        "(CSV columns: n,running_exponent,telescoped); --certify adds the orbit certificate and exits 2 on failure");
    cex->add_option("--r", cfg.cr_r, "Smoothness order (>= 2)");
    cex->add_option("--lambda", cfg.cr_lambda, "Expansion slope (> 1)");
    cex->add_option("--n0", cfg.cr_n0, "First stage index (>= 3)");
    cex->add_option("--nmax", cfg.cr_nmax, "Last built stage");
    cex->add_flag("--certify", cfg.certify, "Track the symbolic orbit and certify the construction");
    cex->add_option("--orbit-steps", cfg.orbit_steps, "Orbit length for --certify (default: all built stages)");
    cex->add_option("--nphi", cfg.nphi, "Test-function family size for the Dirac distance");
    add_common_flags(cex, cfg);

    auto* adm = app.add_subcommand(
        "admissible", "Exhaustive admissible-sequence count against the combinatorial bound "
        "(CSV columns: count,f_argument)");
    adm->add_option("--blocks", cfg.blocks, "Per-block log norms")->required()->expected(-1);
    adm->add_option("--a-threshold", cfg.a_threshold, "Admissibility threshold A");
    adm->add_option("--floor-guard", cfg.floor_guard, "Lower floor offset for the enumeration");
    add_common_flags(adm, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // 0 for --help, 1 for any usage error
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        const ExperimentResult res = run_experiment(cfg);
        emit(res, cfg);
        return res.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli_line(const std::string& command_line) {
    std::istringstream is(command_line);
    std::vector<std::string> tokens{"ergolab"};
    std::string tok;
    while (is >> tok) tokens.push_back(tok);
    std::vector<const char*> argv;
    argv.reserve(tokens.size());
    for (const auto& t : tokens) argv.push_back(t.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace ergolab
