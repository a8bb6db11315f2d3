#include "jumpga/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "jumpga/analysis.hpp"
#include "jumpga/diversity.hpp"
#include "jumpga/error.hpp"
#include "jumpga/experiments.hpp"
#include "jumpga/ga.hpp"
#include "jumpga/io.hpp"

namespace jumpga::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
namespace ex = jumpga::experiments;

enum class Kind { UInt, Double, Bool, Choice, UIntList, Text };

struct KeySpec {
    std::string name;
    std::string fallback;
    Kind kind = Kind::Text;
    std::string help;
    std::vector<std::string> choices;
};

constexpr Subcommand kSubcommands[] = {Subcommand::Run,     Subcommand::Takeover, Subcommand::Survival,
                                       Subcommand::Figure1, Subcommand::Compare,  Subcommand::Bounds,
                                       Subcommand::Sweep,   Subcommand::Oracle};

std::string_view describe(Subcommand s) {
    switch (s) {
    case Subcommand::Run:
        return "independent GA runs from a uniform population until the optimum";
    case Subcommand::Takeover:
        return "iterations until the largest species of a monomorphic plateau population shrinks to mu/2";
    case Subcommand::Survival:
        return "regrowth of species to lambda*mu after takeover";
    case Subcommand::Figure1:
        return "pairwise Hamming-distance frequencies over a run";
    case Subcommand::Compare:
        return "evaluations to the optimum with and without crossover";
    case Subcommand::Bounds:
        return "closed-form bounds over a parameter grid";
    case Subcommand::Sweep:
        return "conditioned Monte Carlo transitions against their bounds";
    case Subcommand::Oracle:
        return "exact optimum-construction probability against Monte Carlo";
    }
    return "";
}

struct Defaults {
    const char* n;
    const char* k;
    const char* mu;
    const char* pc;
};

Defaults defaults_for(Subcommand s) {
    switch (s) {
    case Subcommand::Survival:
        return {"200", "3", "16", "0.5"};
    case Subcommand::Figure1:
        return {"100", "5", "20", "1"};
    case Subcommand::Compare:
        return {"40", "3", "12", "0.5"};
    case Subcommand::Oracle:
        return {"20", "3", "2", "1"};
    default:
        return {"100", "3", "20", "0.5"};
    }
}

KeySpec key(std::string name, std::string fallback, Kind kind, std::string help,
            std::vector<std::string> choices = {}) {
    return {std::move(name), std::move(fallback), kind, std::move(help), std::move(choices)};
}

std::vector<KeySpec> keys_for(Subcommand s) {
    const Defaults d = defaults_for(s);
    std::vector<KeySpec> keys = {
        key("n", d.n, Kind::UInt, "string length"),
        key("k", d.k, Kind::UInt, "gap size"),
        key("mu", d.mu, Kind::UInt, "population size"),
        key("pc", d.pc, Kind::Double, "crossover probability"),
        key("chi", "1", Kind::Double, "mutation rate is chi/n"),
        key("seed", "1", Kind::UInt, "top-level seed"),
        key("threads", "1", Kind::UInt, "worker threads (0 = all cores); output does not depend on it"),
        key("output-dir", "out", Kind::Text, "output directory"),
    };
    auto add = [&keys](KeySpec k) { keys.push_back(std::move(k)); };
    switch (s) {
    case Subcommand::Run:
        add(key("replicates", "10", Kind::UInt, "independent runs"));
        add(key("max-iterations", "10000000", Kind::UInt, "iteration cap per run"));
        add(key("init", "uniform", Kind::Choice, "initial population", {"uniform", "plateau"}));
        break;
    case Subcommand::Takeover:
        add(key("replicates", "50", Kind::UInt, "independent runs"));
        add(key("max-iterations", "10000000", Kind::UInt, "iteration cap per run"));
        break;
    case Subcommand::Survival:
        add(key("replicates", "30", Kind::UInt, "independent runs"));
        add(key("lambda", "0.75", Kind::Double, "regrowth threshold fraction in (1/2, 1)"));
        add(key("t-max", "100000", Kind::UInt, "monitoring horizon"));
        add(key("max-iterations", "10000000", Kind::UInt, "iteration cap for the takeover phase"));
        break;
    case Subcommand::Figure1:
        add(key("replicates", "10", Kind::UInt, "independent runs"));
        add(key("max-iterations", "100000000", Kind::UInt, "iteration cap per run"));
        add(key("stride", "0", Kind::UInt, "snapshot stride (0 = 1 for mu <= 64, else 10)"));
        add(key("svg", "true", Kind::Bool, "also write an SVG plot per run"));
        break;
    case Subcommand::Compare:
        add(key("replicates", "20", Kind::UInt, "paired runs per arm"));
        add(key("max-iterations", "50000000", Kind::UInt, "iteration cap per run"));
        break;
    case Subcommand::Bounds:
        add(key("grid", "default", Kind::Choice, "default grid or the given parameters only", {"default", "params"}));
        add(key("lambda", "0.75", Kind::Double, "survival threshold fraction"));
        add(key("t", "100000", Kind::UInt, "horizon for the survival tail"));
        break;
    case Subcommand::Sweep:
        add(key("mus", "4,8,16", Kind::UIntList, "population sizes"));
        add(key("trials", "100000", Kind::UInt, "accepted trials per cell"));
        add(key("o-constant", "10", Kind::Double, "O-constant for the mutation-only p+ band"));
        break;
    case Subcommand::Oracle:
        add(key("d", "", Kind::UIntList, "half distances (empty = 0..k)"));
        add(key("trials", "1000000", Kind::UInt, "Monte Carlo trials per distance"));
        break;
    }
    return keys;
}

std::optional<Subcommand> subcommand_from_string(std::string_view name) {
    for (const Subcommand s : kSubcommands) {
        if (to_string(s) == name) {
            return s;
        }
    }
    return std::nullopt;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<std::uint64_t> parse_uint(std::string_view text) {
    const std::string s = trim(text);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size() && !s.empty()) {
        return v;
    }
    // Accept integral scientific notation such as 1e7.
    double d = 0.0;
    const auto dres = std::from_chars(s.data(), s.data() + s.size(), d);
    if (dres.ec == std::errc() && dres.ptr == s.data() + s.size() && !s.empty() && d >= 0.0 && d <= 0x1p53 &&
        std::floor(d) == d) {
        return static_cast<std::uint64_t>(d);
    }
    return std::nullopt;
}

std::optional<double> parse_double(std::string_view text) {
    const std::string s = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size() && !s.empty() && std::isfinite(v)) {
        return v;
    }
    return std::nullopt;
}

/// Canonical form of `raw` for key `spec`; throws UsageError naming `origin`.
std::string normalise(const KeySpec& spec, std::string_view raw, const std::string& origin) {
    auto fail = [&](const std::string& why) -> std::string {
        throw UsageError(origin + ": invalid value '" + std::string(raw) + "' for " + spec.name + " (" + why + ")");
    };
    switch (spec.kind) {
    case Kind::UInt: {
        const auto v = parse_uint(raw);
        return v ? std::to_string(*v) : fail("expected a non-negative integer");
    }
    case Kind::Double: {
        const auto v = parse_double(raw);
        return v ? io::format_number(*v) : fail("expected a number");
    }
    case Kind::Bool: {
        const std::string s = trim(raw);
        if (s == "true" || s == "1" || s == "yes" || s == "on") {
            return "true";
        }
        if (s == "false" || s == "0" || s == "no" || s == "off") {
            return "false";
        }
        return fail("expected true or false");
    }
    case Kind::Choice: {
        const std::string s = trim(raw);
        if (std::find(spec.choices.begin(), spec.choices.end(), s) == spec.choices.end()) {
            std::string list;
            for (const auto& c : spec.choices) {
                list += (list.empty() ? "" : ", ") + c;
            }
            return fail("expected one of " + list);
        }
        return s;
    }
    case Kind::UIntList: {
        std::string out;
        std::string_view rest = raw;
        if (trim(rest).empty()) {
            return {};
        }
        while (true) {
            const auto comma = rest.find(',');
            const auto v = parse_uint(rest.substr(0, comma));
            if (!v) {
                return fail("expected comma-separated non-negative integers");
            }
            out += (out.empty() ? "" : ",") + std::to_string(*v);
            if (comma == std::string_view::npos) {
                break;
            }
            rest = rest.substr(comma + 1);
        }
        return out;
    }
    case Kind::Text: {
        const std::string s = trim(raw);
        return s.empty() ? fail("must not be empty") : s;
    }
    }
    return std::string(raw);
}

const KeySpec* find_key(const std::vector<KeySpec>& keys, std::string_view name) {
    for (const auto& k : keys) {
        if (k.name == name) {
            return &k;
        }
    }
    return nullptr;
}

/// Values from the config file section of `active`; other sections are checked but not applied.
std::map<std::string, std::string> read_config(const fs::path& path, Subcommand active) {
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigINI().from_file(path.string());
    } catch (const CLI::FileError& e) {
        throw UsageError(std::string("cannot read config file: ") + e.what());
    }
    std::map<std::string, std::string> values;
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") {
            continue;
        }
        const std::string where = path.string() + " key '" + item.fullname() + "'";
        if (item.parents.size() != 1) {
            throw UsageError(where + ": keys must sit in a [subcommand] section");
        }
        const auto section = subcommand_from_string(item.parents.front());
        if (!section) {
            throw UsageError(path.string() + ": unknown section [" + item.parents.front() + "]");
        }
        const auto keys = keys_for(*section);
        const KeySpec* spec = find_key(keys, item.name);
        if (spec == nullptr) {
            throw UsageError(where + ": unknown key");
        }
        std::string joined;
        for (const auto& in : item.inputs) {
            joined += (joined.empty() ? "" : ",") + in;
        }
        const std::string value = normalise(*spec, joined, where);
        if (*section == active) {
            values[item.name] = value;
        }
    }
    return values;
}

// ---------------------------------------------------------------------------
// Typed access to resolved settings

std::uint64_t get_uint(const CliInvocation& inv, std::string_view key) { return *parse_uint(inv.value(key)); }
double get_double(const CliInvocation& inv, std::string_view key) { return *parse_double(inv.value(key)); }
bool get_bool(const CliInvocation& inv, std::string_view key) { return inv.value(key) == "true"; }

std::vector<std::size_t> get_list(const CliInvocation& inv, std::string_view key) {
    std::vector<std::size_t> out;
    std::string_view rest = inv.value(key);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        out.push_back(static_cast<std::size_t>(*parse_uint(rest.substr(0, comma))));
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
    }
    return out;
}

GaParams params_of(const CliInvocation& inv) {
    GaParams p;
    p.n = static_cast<std::size_t>(get_uint(inv, "n"));
    p.k = static_cast<std::size_t>(get_uint(inv, "k"));
    p.mu = static_cast<std::size_t>(get_uint(inv, "mu"));
    p.p_c = get_double(inv, "pc");
    p.chi = get_double(inv, "chi");
    p.seed = get_uint(inv, "seed");
    p.validate();
    if (2 * p.k > p.n) {
        throw UsageError("k must not exceed n/2");
    }
    return p;
}

std::size_t replicates_of(const CliInvocation& inv) {
    const auto r = get_uint(inv, "replicates");
    if (r < 1) {
        throw UsageError("replicates must be at least 1");
    }
    return static_cast<std::size_t>(r);
}

unsigned threads_of(const CliInvocation& inv) { return static_cast<unsigned>(get_uint(inv, "threads")); }

json params_json(const GaParams& p) {
    return json{{"n", p.n}, {"k", p.k}, {"mu", p.mu}, {"p_c", p.p_c}, {"chi", p.chi}, {"seed", p.seed}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

void write_json(const fs::path& path, const json& j) { io::write_file(path, j.dump(2) + "\n"); }

std::string bool_text(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// Subcommands

int do_run(const CliInvocation& inv, std::ostream& out) {
    const GaParams params = params_of(inv);
    const std::size_t reps = replicates_of(inv);
    const auto cap = get_uint(inv, "max-iterations");
    const bool plateau = inv.value("init") == "plateau";

    std::vector<io::RunRow> rows(reps);
    ex::parallel_for(reps, threads_of(inv), [&](std::size_t r) {
        Rng rng = make_rng(params.seed, r);
        Population pop = plateau ? init_monomorphic_plateau(params, rng) : init_uniform(params, rng);
        StopCondition stop;
        stop.max_iterations = cap;
        const RunResult res = run(std::move(pop), params, stop, rng);
        rows[r] = {r, params.seed, res.iterations, res.evaluations, std::string(to_string(res.stop_reason))};
    });
    io::write_file(inv.output_dir / "runs.csv", io::runs_csv(rows));

    std::vector<double> evals;
    std::size_t censored = 0;
    for (const auto& row : rows) {
        if (row.stop_reason == to_string(StopReason::OptimumFound)) {
            evals.push_back(static_cast<double>(row.evaluations));
        } else {
            ++censored;
        }
    }
    std::sort(evals.begin(), evals.end());
    double mean = 0.0;
    for (const double e : evals) {
        mean += e / static_cast<double>(evals.size());
    }
    write_json(inv.output_dir / "summary.json", json{{"subcommand", "run"},
                                                     {"params", params_json(params)},
                                                     {"replicates", reps},
                                                     {"censored", censored},
                                                     {"mean_evaluations", evals.empty() ? json(nullptr) : json(mean)}});
    out << "run: " << reps - censored << "/" << reps << " reached the optimum";
    if (!evals.empty()) {
        out << ", mean evaluations " << io::format_number(mean);
    }
    out << "\n";
    return 0;
}

int do_takeover(const CliInvocation& inv, std::ostream& out) {
    ex::TakeoverConfig config;
    config.params = params_of(inv);
    config.replicates = replicates_of(inv);
    config.max_iterations = get_uint(inv, "max-iterations");
    config.threads = threads_of(inv);
    const ex::TakeoverSummary s = ex::run_takeover(config);

    std::vector<io::RunRow> rows;
    for (const auto& r : s.replicates) {
        const std::string reason = r.optimum_first ? "optimum_found" : r.censored ? "max_iterations" : "takeover";
        rows.push_back({r.replicate, config.params.seed, r.hitting_time, config.params.mu + r.hitting_time, reason});
    }
    io::write_file(inv.output_dir / "runs.csv", io::runs_csv(rows));
    write_json(inv.output_dir / "summary.json", json{{"subcommand", "takeover"},
                                                     {"params", params_json(config.params)},
                                                     {"replicates", config.replicates},
                                                     {"censored", s.censored},
                                                     {"optimum_first", s.optimum_first},
                                                     {"mean", s.mean},
                                                     {"median", s.median},
                                                     {"reference", s.reference},
                                                     {"ratio", s.ratio}});
    out << "takeover: mean " << io::format_number(s.mean) << " iterations, reference mu*n + mu^2*ln(mu) = "
        << io::format_number(s.reference) << ", ratio " << io::format_number(s.ratio) << ", censored " << s.censored
        << ", optimum first " << s.optimum_first << "\n";
    return 0;
}

int do_survival(const CliInvocation& inv, std::ostream& out) {
    ex::SurvivalConfig config;
    config.params = params_of(inv);
    config.replicates = replicates_of(inv);
    config.lambda = get_double(inv, "lambda");
    config.t_max = get_uint(inv, "t-max");
    config.max_takeover_iterations = get_uint(inv, "max-iterations");
    config.threads = threads_of(inv);
    const ex::SurvivalSummary s = ex::run_survival(config);

    std::string csv = "replicate,takeover_time,takeover_censored,monitored,optimum_found,tracked_excursion,"
                      "tracked_first_hit,tracked_peak,max_excursion,max_first_hit,max_peak\n";
    for (const auto& r : s.replicates) {
        csv += std::to_string(r.replicate) + ',' + std::to_string(r.takeover_time) + ',' +
               bool_text(r.takeover_censored) + ',' + std::to_string(r.monitored) + ',' + bool_text(r.optimum_found) +
               ',' + bool_text(r.tracked_excursion) + ',' + std::to_string(r.tracked_first_hit) + ',' +
               std::to_string(r.tracked_peak) + ',' + bool_text(r.max_excursion) + ',' +
               std::to_string(r.max_first_hit) + ',' + std::to_string(r.max_peak) + '\n';
    }
    io::write_file(inv.output_dir / "survival.csv", csv);
    write_json(inv.output_dir / "summary.json", json{{"subcommand", "survival"},
                                                     {"params", params_json(config.params)},
                                                     {"replicates", config.replicates},
                                                     {"lambda", config.lambda},
                                                     {"t_max", config.t_max},
                                                     {"threshold", s.threshold},
                                                     {"tracked_excursions", s.tracked_excursions},
                                                     {"max_excursions", s.max_excursions},
                                                     {"tracked_frequency", s.tracked_frequency},
                                                     {"max_frequency", s.max_frequency},
                                                     {"optimum_interrupted", s.optimum_interrupted},
                                                     {"takeover_censored", s.takeover_censored},
                                                     {"survival_constant", s.survival_constant},
                                                     {"analytic_tail", s.analytic_tail},
                                                     {"analytic_vacuous", s.analytic_vacuous}});
    out << "survival: threshold " << s.threshold << ", tracked excursions " << s.tracked_excursions << "/"
        << config.replicates << ", running-max excursions " << s.max_excursions << "/" << config.replicates
        << ", optimum interrupted " << s.optimum_interrupted << ", analytic tail "
        << io::format_number(s.analytic_tail) << (s.analytic_vacuous ? " (vacuous)" : "") << "\n";
    return 0;
}

int do_figure1(const CliInvocation& inv, std::ostream& out) {
    ex::Figure1Config config;
    config.params = params_of(inv);
    config.replicates = replicates_of(inv);
    config.max_iterations = get_uint(inv, "max-iterations");
    config.stride = get_uint(inv, "stride");
    config.threads = threads_of(inv);
    const bool svg = get_bool(inv, "svg");
    const std::vector<ex::Figure1Run> runs = ex::run_figure1(config);
    const std::size_t k = config.params.k;

    std::vector<io::RunRow> rows;
    json per_run = json::array();
    for (const auto& r : runs) {
        const std::string stem = "figure1_r" + std::to_string(r.replicate);
        io::write_series_csv(r.series, k, inv.output_dir / (stem + ".csv"));
        if (svg) {
            io::render_svg(r.series, k, inv.output_dir / (stem + ".svg"));
        }
        rows.push_back({r.replicate, config.params.seed, r.iterations, config.params.mu + r.iterations,
                        r.optimum_found ? "optimum_found" : "max_iterations"});
        json passage = json::array();
        for (const auto& f : r.first_passage) {
            passage.push_back(optional_json(f));
        }
        per_run.push_back(json{{"replicate", r.replicate},
                               {"iterations", r.iterations},
                               {"optimum_found", r.optimum_found},
                               {"snapshots", r.snapshots},
                               {"d0_low_iteration", optional_json(r.d0_low_iteration)},
                               {"d0_max_after_low", r.d0_max_after_low},
                               {"first_passage_0.1", passage},
                               {"off_plateau_mass", r.off_plateau_mass}});
    }
    io::write_file(inv.output_dir / "runs.csv", io::runs_csv(rows));
    write_json(inv.output_dir / "summary.json",
               json{{"subcommand", "figure1"}, {"params", params_json(config.params)}, {"runs", per_run}});
    out << "figure1: " << runs.size() << " runs written to " << inv.output_dir.string() << "\n";
    return 0;
}

json arm_json(const ex::ArmSummary& a) {
    return json{{"p_c", a.p_c},
                {"censored", a.censored},
                {"mean_evaluations", a.mean_evaluations},
                {"median_evaluations", optional_json(a.median_evaluations)}};
}

int do_compare(const CliInvocation& inv, std::ostream& out) {
    ex::ComparisonConfig config;
    config.params = params_of(inv);
    config.replicates = replicates_of(inv);
    config.max_iterations = get_uint(inv, "max-iterations");
    config.threads = threads_of(inv);
    const ex::ComparisonSummary s = ex::run_comparison(config);

    auto arm_rows = [&](const ex::ArmSummary& arm) {
        std::vector<io::RunRow> rows;
        for (const auto& r : arm.replicates) {
            rows.push_back({r.replicate, config.params.seed, r.iterations, r.evaluations,
                            r.censored ? "max_iterations" : "optimum_found"});
        }
        return rows;
    };
    io::write_file(inv.output_dir / "runs_crossover.csv", io::runs_csv(arm_rows(s.crossover)));
    io::write_file(inv.output_dir / "runs_mutation_only.csv", io::runs_csv(arm_rows(s.mutation_only)));
    write_json(inv.output_dir / "summary.json", json{{"subcommand", "compare"},
                                                     {"params", params_json(config.params)},
                                                     {"replicates", config.replicates},
                                                     {"crossover", arm_json(s.crossover)},
                                                     {"mutation_only", arm_json(s.mutation_only)},
                                                     {"median_ratio", optional_json(s.median_ratio)}});
    out << "compare: median evaluations p_c=" << io::format_number(s.crossover.p_c) << ": "
        << (s.crossover.median_evaluations ? io::format_number(*s.crossover.median_evaluations) : "n/a")
        << ", p_c=0: "
        << (s.mutation_only.median_evaluations ? io::format_number(*s.mutation_only.median_evaluations) : "n/a")
        << ", ratio " << (s.median_ratio ? io::format_number(*s.median_ratio) : "n/a") << "\n";
    return 0;
}

int do_bounds(const CliInvocation& inv, std::ostream& out) {
    const GaParams given = params_of(inv);
    const double lambda = get_double(inv, "lambda");
    const auto horizon = static_cast<double>(get_uint(inv, "t"));

    std::vector<std::size_t> ns = {given.n};
    std::vector<std::size_t> mus = {given.mu};
    std::vector<double> pcs = {given.p_c};
    if (inv.value("grid") == "default") {
        ns = {100, 200, 1000};
        mus = {4, 8, 16, 20};
        pcs = {0.5, 1.0};
    }
    const std::size_t k = given.k;
    const double chi = given.chi;

    std::string csv = "bound,n,k,mu,y,d,chi,p_c,lambda,value,o_scale,note\n";
    auto row = [&csv](std::string_view name, std::size_t n, std::size_t kk, std::string mu, std::string y,
                      std::string d, double c, std::string pc, std::string lam, double value, std::string o_scale,
                      std::string_view note) {
        csv += std::string(name) + ',' + std::to_string(n) + ',' + std::to_string(kk) + ',' + mu + ',' + y + ',' + d +
               ',' + io::format_number(c) + ',' + pc + ',' + lam + ',' + io::format_number(value) + ',' + o_scale +
               ',' + std::string(note) + '\n';
    };
    const std::string none;
    for (const std::size_t n : ns) {
        const double p_m = chi / static_cast<double>(n);
        if (2 * k <= n && p_m > 0.0 && p_m < 1.0) {
            for (std::size_t d = 0; d <= k; ++d) {
                row("lemma2_construction_probability", n, k, none, none, std::to_string(d), chi, none, none,
                    analysis::lemma2_construction_probability(n, k, d, p_m), none, "");
            }
        }
        for (const std::size_t mu : mus) {
            std::vector<std::size_t> ys = ex::sweep_species_sizes(mu);
            ys.push_back(mu);
            for (const std::size_t y : ys) {
                const auto lt = analysis::rdrift_upper_leading_term(y, mu, chi, n);
                row("rdrift_upper_leading_term", n, k, std::to_string(mu), std::to_string(y), none, chi, none, none,
                    lt.leading, io::format_number(lt.o_scale), "leading term");
                if (y < mu) {
                    row("ldrift_lower_bound", n, k, std::to_string(mu), std::to_string(y), none, chi, none, none,
                        analysis::ldrift_lower_bound(y, mu, chi, n), none, "");
                }
                const auto mb = analysis::mutation_transition_bounds(y, mu, chi, n);
                row("mutation_transition_bound", n, k, std::to_string(mu), std::to_string(y), none, chi, none, none,
                    mb.p_minus_lower, io::format_number(mb.o_scale), "p- lower bound and p+ leading term");
            }
            if (chi > 0.0) {
                for (const double pc : pcs) {
                    if (pc <= 0.0) {
                        continue;
                    }
                    row("survival_tail_bound", n, k, std::to_string(mu), none, none, chi, io::format_number(pc),
                        io::format_number(lambda), analysis::survival_tail_bound(horizon, lambda, chi, pc, mu), none,
                        "t=" + io::format_number(horizon) + ", raw (may exceed 1)");
                    if (k >= 3 && n >= k) {
                        row("runtime_bound_log10", n, k, std::to_string(mu), none, none, chi, io::format_number(pc),
                            none, analysis::runtime_bound_log10(n, k, mu, chi, pc), none,
                            "order-of-magnitude, constants set to 1");
                    }
                }
            }
        }
    }
    if (chi > 0.0) {
        for (const double pc : pcs) {
            if (pc > 0.0) {
                row("survival_constant", 0, 0, none, none, none, chi, io::format_number(pc), io::format_number(lambda),
                    analysis::survival_constant(lambda, chi, pc), none, "");
            }
        }
    }
    io::write_file(inv.output_dir / "bounds.csv", csv);
    out << csv;
    return 0;
}

int do_sweep(const CliInvocation& inv, std::ostream& out) {
    ex::SweepConfig config;
    config.params = params_of(inv);
    config.mus = get_list(inv, "mus");
    if (config.mus.empty()) {
        throw UsageError("mus must list at least one population size");
    }
    config.trials = get_uint(inv, "trials");
    if (config.trials < 1) {
        throw UsageError("trials must be at least 1");
    }
    config.mutation_o_constant = get_double(inv, "o-constant");
    config.threads = threads_of(inv);
    const std::vector<ex::SweepCell> cells = ex::run_bound_sweep(config);

    std::string reports = "mu,y,distance,event,bound,analytic_value,estimate,stderr,samples,satisfied,asserted,"
                          "inconclusive\n";
    bool all_ok = true;
    std::size_t failed = 0;
    for (const std::size_t mu : config.mus) {
        std::vector<ex::SweepCell> of_mu;
        for (const auto& c : cells) {
            if (c.mu == mu) {
                of_mu.push_back(c);
            }
        }
        io::write_file(inv.output_dir / ("transitions_mu" + std::to_string(mu) + ".csv"), io::transitions_csv(of_mu));
    }
    for (const auto& c : cells) {
        if (!c.satisfied()) {
            all_ok = false;
            ++failed;
        }
        for (const auto& r : c.reports) {
            reports += std::to_string(c.mu) + ',' + std::to_string(c.y) + ',' + std::to_string(2 * c.half_distance) +
                       ',' + std::string(to_string(c.event)) + ',' + r.name + ',' + io::format_number(r.analytic_value) +
                       ',' + io::format_number(r.estimate) + ',' + io::format_number(r.stderr_value) + ',' +
                       std::to_string(r.samples) + ',' + bool_text(r.satisfied) + ',' + bool_text(r.asserted) + ',' +
                       bool_text(r.inconclusive) + '\n';
        }
    }
    io::write_file(inv.output_dir / "bound_reports.csv", reports);
    write_json(inv.output_dir / "summary.json", json{{"subcommand", "sweep"},
                                                     {"params", params_json(config.params)},
                                                     {"cells", cells.size()},
                                                     {"failed_cells", failed},
                                                     {"all_satisfied", all_ok}});
    out << "sweep: " << cells.size() - failed << "/" << cells.size() << " cells satisfied\n";
    return all_ok ? 0 : 3;
}

int do_oracle(const CliInvocation& inv, std::ostream& out) {
    const GaParams params = params_of(inv);
    const auto trials = get_uint(inv, "trials");
    if (trials < 1) {
        throw UsageError("trials must be at least 1");
    }
    std::vector<std::size_t> ds = get_list(inv, "d");
    if (ds.empty()) {
        for (std::size_t d = 0; d <= params.k; ++d) {
            ds.push_back(d);
        }
    }
    const double p_m = params.p_m();
    std::string csv = "d,exact,lemma2,mc_frequency,stderr,within_3_stderr\n";
    bool all_within = true;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const std::size_t d = ds[i];
        Rng rng = make_rng(params.seed, i);
        const auto [a, b] = ex::plateau_pair(params.n, params.k, d, rng);
        const double exact = analysis::exact_optimum_probability(a, b, p_m);
        const bool lemma_defined = 2 * params.k <= params.n && p_m > 0.0 && p_m < 1.0;
        const double lemma = lemma_defined ? analysis::lemma2_construction_probability(params.n, params.k, d, p_m)
                                           : std::numeric_limits<double>::quiet_NaN();
        const ex::OptimumFrequency f = ex::sample_optimum_frequency(a, b, p_m, trials, rng);
        const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
        const bool within = std::fabs(f.frequency - exact) <= 3.0 * se;
        all_within = all_within && within;
        csv += std::to_string(d) + ',' + io::format_number(exact) + ',' + io::format_number(lemma) + ',' +
               io::format_number(f.frequency) + ',' + io::format_number(se) + ',' + bool_text(within) + '\n';
    }
    io::write_file(inv.output_dir / "oracle.csv", csv);
    out << csv;
    out << "oracle: " << (all_within ? "all distances within 3 stderr" : "some distance outside 3 stderr") << "\n";
    return 0;
}

} // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Subcommand s) {
    switch (s) {
    case Subcommand::Run:
        return "run";
    case Subcommand::Takeover:
        return "takeover";
    case Subcommand::Survival:
        return "survival";
    case Subcommand::Figure1:
        return "figure1";
    case Subcommand::Compare:
        return "compare";
    case Subcommand::Bounds:
        return "bounds";
    case Subcommand::Sweep:
        return "sweep";
    case Subcommand::Oracle:
        return "oracle";
    }
    return "";
}

Environment Environment::from_process() {
    Environment env;
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
        env.output_dir = dir;
    }
    return env;
}

const std::string& CliInvocation::value(std::string_view key) const {
    for (const auto& [k, v] : settings) {
        if (k == key) {
            return v;
        }
    }
    throw UsageError("unknown key " + std::string(key));
}

namespace {

struct Parser {
    CLI::App app{"(mu+1) GA on Jump_k: simulation, diversity telemetry and bound validation", "jumpga"};
    std::map<Subcommand, CLI::App*> subs;
    std::map<Subcommand, std::map<std::string, std::string>> raw;
    std::map<Subcommand, std::string> config_files;

    Parser() {
        app.require_subcommand(1, 1);
        app.fallthrough(false);
        for (const Subcommand s : kSubcommands) {
            CLI::App* sub = app.add_subcommand(std::string(to_string(s)), std::string(describe(s)));
            sub->add_option("--config", config_files[s], "INI file with a [" + std::string(to_string(s)) + "] section");
            for (const auto& key : keys_for(s)) {
                std::string help = key.help;
                if (!key.fallback.empty()) {
                    help += " (default " + key.fallback + ")";
                }
                sub->add_option("--" + key.name, raw[s][key.name], help)->type_size(1);
            }
            subs[s] = sub;
        }
    }
};

} // namespace

std::string usage() {
    Parser p;
    return p.app.help();
}

CliInvocation parse_cli(std::span<const std::string> args, const Environment& env) {
    Parser p;
    if (args.empty()) {
        throw HelpRequested{p.app.help(), 2};
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        p.app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto chosen = p.app.get_subcommands();
        throw HelpRequested{chosen.empty() ? p.app.help() : chosen.front()->help(), 0};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{p.app.help("", CLI::AppFormatMode::All), 0};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    CliInvocation inv;
    const std::string chosen = p.app.get_subcommands().front()->get_name();
    inv.subcommand = *subcommand_from_string(chosen);
    CLI::App* sub = p.subs[inv.subcommand];

    std::map<std::string, std::string> from_config;
    if (sub->count("--config") > 0) {
        inv.config_path = p.config_files[inv.subcommand];
        from_config = read_config(*inv.config_path, inv.subcommand);
    }

    for (const auto& key : keys_for(inv.subcommand)) {
        std::string value = key.fallback;
        if (auto it = from_config.find(key.name); it != from_config.end()) {
            value = it->second;
        }
        if (key.name == "output-dir" && env.output_dir) {
            value = normalise(key, *env.output_dir, std::string("environment ") + kOutputDirEnv);
        }
        if (sub->count("--" + key.name) > 0) {
            const std::string& given = p.raw[inv.subcommand][key.name];
            inv.overrides[key.name] = given;
            value = normalise(key, given, "--" + key.name);
        } else {
            value = normalise(key, value, "default");
        }
        inv.settings.emplace_back(key.name, value);
    }
    inv.output_dir = inv.value("output-dir");
    inv.seed = *parse_uint(inv.value("seed"));
    return inv;
}

std::string resolved_config(const CliInvocation& inv) {
    std::string out = "[" + std::string(to_string(inv.subcommand)) + "]\n";
    for (const auto& [k, v] : inv.settings) {
        out += k + " = " + (v.empty() ? "\"\"" : v) + "\n";
    }
    return out;
}

int execute(const CliInvocation& inv, std::ostream& out) {
    io::write_file(inv.output_dir / "config.resolved", resolved_config(inv));
    switch (inv.subcommand) {
    case Subcommand::Run:
        return do_run(inv, out);
    case Subcommand::Takeover:
        return do_takeover(inv, out);
    case Subcommand::Survival:
        return do_survival(inv, out);
    case Subcommand::Figure1:
        return do_figure1(inv, out);
    case Subcommand::Compare:
        return do_compare(inv, out);
    case Subcommand::Bounds:
        return do_bounds(inv, out);
    case Subcommand::Sweep:
        return do_sweep(inv, out);
    case Subcommand::Oracle:
        return do_oracle(inv, out);
    }
    return 1;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    try {
        const CliInvocation inv = parse_cli(args, Environment::from_process());
        const auto n = *parse_uint(inv.value("n"));
        const auto k = *parse_uint(inv.value("k"));
        if (4 * k > n) {
            err << "warning: k=" << k << " exceeds n/4 (n=" << n << "); the runtime analysis assumes a small gap\n";
        }
        return execute(inv, out);
    } catch (const HelpRequested& help) {
        (help.exit_code == 0 ? out : err) << help.text;
        return help.exit_code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace jumpga::cli
