#include "jumpga/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "jumpga/analysis.hpp"
#include "jumpga/diversity.hpp"
#include "jumpga/error.hpp"
#include "jumpga/operators.hpp"

namespace jumpga::experiments {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

// ---------------------------------------------------------------------------
// Start populations

PopulationSpec PopulationSpec::two_species(std::size_t y, std::size_t half_distance) {
    PopulationSpec spec;
    spec.kind = Kind::TwoSpecies;
    spec.y = y;
    spec.half_distance = half_distance;
    return spec;
}

PopulationSpec PopulationSpec::explicit_population(std::vector<Genotype> members, Genotype tracked) {
    PopulationSpec spec;
    spec.kind = Kind::Explicit;
    spec.members = std::move(members);
    spec.tracked = std::move(tracked);
    return spec;
}

std::string PopulationSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::Monomorphic:
        os << "monomorphic";
        break;
    case Kind::TwoSpecies:
        os << "two-species y=" << y << " distance=" << 2 * half_distance;
        break;
    case Kind::Explicit:
        os << "explicit mu=" << members.size();
        break;
    }
    return os.str();
}

StartPopulation build_population(const PopulationSpec& spec, const GaParams& params, Rng& rng) {
    params.validate();
    StartPopulation out;
    switch (spec.kind) {
    case PopulationSpec::Kind::Monomorphic:
        out.population = init_monomorphic_plateau(params, rng);
        out.tracked = out.population[0];
        break;
    case PopulationSpec::Kind::TwoSpecies: {
        if (spec.y < 1 || spec.y >= params.mu) {
            throw UsageError("two-species population needs 1 <= y <= mu-1");
        }
        if (spec.half_distance < 1 || spec.half_distance > params.k || spec.half_distance > params.n - params.k) {
            throw UsageError("two-species population needs 1 <= distance/2 <= min(k, n-k)");
        }
        GaParams single = params;
        const Genotype base = init_monomorphic_plateau(single, rng)[0];
        std::vector<std::size_t> zeros;
        std::vector<std::size_t> ones;
        for (std::size_t i = 0; i < params.n; ++i) {
            (base.get(i) ? ones : zeros).push_back(i);
        }
        // Swap half_distance zeros with half_distance ones, chosen uniformly.
        Genotype other = base;
        for (std::size_t i = 0; i < spec.half_distance; ++i) {
            const auto zj = i + static_cast<std::size_t>(rng.below(zeros.size() - i));
            std::swap(zeros[i], zeros[zj]);
            other.set(zeros[i], true);
            const auto oj = i + static_cast<std::size_t>(rng.below(ones.size() - i));
            std::swap(ones[i], ones[oj]);
            other.set(ones[i], false);
        }
        std::vector<Genotype> members(spec.y, base);
        members.insert(members.end(), params.mu - spec.y, other);
        out.population = Population::from_genotypes(members, params.k);
        out.tracked = base;
        break;
    }
    case PopulationSpec::Kind::Explicit:
        if (spec.members.size() != params.mu) {
            throw UsageError("explicit population size does not match mu");
        }
        out.population = Population::from_genotypes(spec.members, params.k);
        out.tracked = spec.tracked;
        break;
    }
    for (const auto& m : out.population.members) {
        if (m.genotype.size() != params.n || ones_count(m.genotype) != params.n - params.k) {
            throw UsageError("start population must lie entirely on the plateau");
        }
    }
    if (census(out.population).count_of(out.tracked) == 0) {
        throw UsageError("tracked species does not occur in the start population");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conditioned transitions

double ConditionedEstimate::drift_stderr() const {
    if (trials == 0) {
        return 0.0;
    }
    const double second_moment = p_plus_hat + p_minus_hat;
    const double mean = drift();
    return std::sqrt(std::max(0.0, second_moment - mean * mean) / static_cast<double>(trials));
}

ConditionedEstimate estimate_transition(const GaParams& params, const StartPopulation& start,
                                        std::optional<EventClass> event, std::uint64_t trials, Rng& rng,
                                        std::uint64_t max_attempts) {
    params.validate();
    if (trials == 0) {
        throw UsageError("estimate_transition: trials must be positive");
    }
    if (start.population.size() != params.mu) {
        throw UsageError("estimate_transition: population size does not match mu");
    }
    if (max_attempts == 0) {
        max_attempts = event ? 100 * trials : trials;
    }

    ConditionedEstimate est;
    est.event = event;
    est.y = census(start.population).count_of(start.tracked);

    Population scratch = start.population;
    std::uint64_t plus = 0;
    std::uint64_t minus = 0;
    while (est.trials < trials && est.attempts < max_attempts) {
        const StepResult step = ga_step(scratch, params, rng);
        ++est.attempts;
        // Only the replaced slot differs from the start population.
        if (step.trace.removed_index < params.mu) {
            scratch.members[step.trace.removed_index] = start.population.members[step.trace.removed_index];
        }
        scratch.generation = start.population.generation;

        if (event && step.trace.event != *event) {
            continue;
        }
        ++est.trials;
        const bool gained = step.trace.offspring == start.tracked;
        const bool lost = step.evicted == start.tracked;
        if (gained && !lost) {
            ++plus;
        } else if (lost && !gained) {
            ++minus;
        }
    }

    est.inconclusive = est.trials < ConditionedEstimate::kMinAcceptedTrials;
    if (est.trials > 0) {
        const auto n = static_cast<double>(est.trials);
        est.p_plus_hat = static_cast<double>(plus) / n;
        est.p_minus_hat = static_cast<double>(minus) / n;
        est.stderr_plus = std::sqrt(est.p_plus_hat * (1.0 - est.p_plus_hat) / n);
        est.stderr_minus = std::sqrt(est.p_minus_hat * (1.0 - est.p_minus_hat) / n);
    }
    return est;
}

ConditionedEstimate estimate_transition(const GaParams& params, const PopulationSpec& spec,
                                        std::optional<EventClass> event, std::uint64_t trials, std::uint64_t stream,
                                        std::uint64_t max_attempts) {
    Rng rng = make_rng(params.seed, stream);
    const StartPopulation start = build_population(spec, params, rng);
    ConditionedEstimate est = estimate_transition(params, start, event, trials, rng, max_attempts);
    est.config_descriptor = spec.describe();
    return est;
}

// ---------------------------------------------------------------------------
// Optimum construction

std::pair<Genotype, Genotype> plateau_pair(std::size_t n, std::size_t k, std::size_t d, Rng& rng) {
    GaParams params;
    params.n = n;
    params.k = k;
    params.mu = 2;
    params.chi = 0.0;
    if (d == 0) {
        const StartPopulation start = build_population(PopulationSpec::monomorphic(), params, rng);
        return {start.population[0], start.population[1]};
    }
    const StartPopulation start = build_population(PopulationSpec::two_species(1, d), params, rng);
    return {start.population[0], start.population[1]};
}

OptimumFrequency sample_optimum_frequency(const Genotype& a, const Genotype& b, double p_m, std::uint64_t trials,
                                          Rng& rng) {
    if (a.size() != b.size()) {
        throw UsageError("sample_optimum_frequency: parent lengths differ");
    }
    if (trials == 0) {
        throw UsageError("sample_optimum_frequency: trials must be positive");
    }
    OptimumFrequency out;
    out.trials = trials;
    Genotype child(a.size());
    for (std::uint64_t t = 0; t < trials; ++t) {
        uniform_crossover_into(a, b, child, rng);
        mutate_in_place(child, p_m, rng);
        out.hits += ones_count(child) == a.size() ? 1 : 0;
    }
    const auto n = static_cast<double>(trials);
    out.frequency = static_cast<double>(out.hits) / n;
    out.stderr_value = std::sqrt(out.frequency * (1.0 - out.frequency) / n);
    return out;
}

// ---------------------------------------------------------------------------
// Takeover

namespace {

double median_of(std::vector<double> values) {
    if (values.empty()) {
        return 0.0;
    }
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

struct TakeoverPhase {
    Population population;
    std::uint64_t iterations = 0;
    bool reached = false;
    bool optimum = false;
};

// Runs from `pop` until the largest species has at most mu/2 members.
TakeoverPhase takeover_phase(Population pop, const GaParams& params, std::uint64_t max_iterations, Rng& rng) {
    TakeoverPhase out;
    SpeciesTracker tracker(pop);
    if (2 * tracker.largest() <= params.mu) {
        out.population = std::move(pop);
        out.reached = true;
        return out;
    }
    StopCondition stop;
    stop.on_optimum = true;
    stop.max_iterations = max_iterations;
    stop.predicate = [&tracker, mu = params.mu](const Population&, const StepResult& step) {
        tracker.apply(step);
        return 2 * tracker.largest() <= mu;
    };
    RunResult res = run(std::move(pop), params, stop, rng);
    out.iterations = res.iterations;
    out.reached = res.stop_reason == StopReason::Predicate;
    out.optimum = res.stop_reason == StopReason::OptimumFound;
    out.population = std::move(res.final_population);
    return out;
}

} // namespace

TakeoverSummary run_takeover(const TakeoverConfig& config) {
    config.params.validate();
    if (config.replicates < 1) {
        throw UsageError("takeover: replicates must be at least 1");
    }
    TakeoverSummary summary;
    summary.replicates.resize(config.replicates);
    parallel_for(config.replicates, config.threads, [&](std::size_t r) {
        Rng rng = make_rng(config.params.seed, r);
        Population pop = init_monomorphic_plateau(config.params, rng);
        const TakeoverPhase phase = takeover_phase(std::move(pop), config.params, config.max_iterations, rng);
        auto& rep = summary.replicates[r];
        rep.replicate = r;
        rep.hitting_time = phase.iterations;
        rep.optimum_first = phase.optimum;
        rep.censored = !phase.reached && !phase.optimum;
    });

    std::vector<double> times;
    for (const auto& rep : summary.replicates) {
        summary.censored += rep.censored ? 1 : 0;
        summary.optimum_first += rep.optimum_first ? 1 : 0;
        if (!rep.censored && !rep.optimum_first) {
            times.push_back(static_cast<double>(rep.hitting_time));
        }
    }
    const auto mu = static_cast<double>(config.params.mu);
    summary.reference = mu * static_cast<double>(config.params.n) + mu * mu * std::log(mu);
    if (!times.empty()) {
        double total = 0.0;
        for (const double t : times) {
            total += t;
        }
        summary.mean = total / static_cast<double>(times.size());
        summary.median = median_of(times);
        summary.ratio = summary.mean / summary.reference;
    }
    return summary;
}

// ---------------------------------------------------------------------------
// Survival

SurvivalSummary run_survival(const SurvivalConfig& config) {
    const GaParams& params = config.params;
    params.validate();
    if (!(config.lambda > 0.5 && config.lambda < 1.0)) {
        throw UsageError("survival: lambda must lie in (1/2, 1)");
    }
    if (config.replicates < 1 || config.t_max < 1) {
        throw UsageError("survival: replicates and t_max must be positive");
    }

    SurvivalSummary summary;
    summary.threshold = static_cast<std::size_t>(std::ceil(config.lambda * static_cast<double>(params.mu) - 1e-9));
    summary.replicates.resize(config.replicates);

    parallel_for(config.replicates, config.threads, [&](std::size_t r) {
        auto& rep = summary.replicates[r];
        rep.replicate = r;
        Rng rng = make_rng(params.seed, r);
        TakeoverPhase phase =
            takeover_phase(init_monomorphic_plateau(params, rng), params, config.max_takeover_iterations, rng);
        rep.takeover_time = phase.iterations;
        if (phase.optimum) {
            rep.optimum_found = true;
            return;
        }
        if (!phase.reached) {
            rep.takeover_censored = true;
            return;
        }

        SpeciesTracker tracker(phase.population);
        const SpeciesCensus start_census = census(phase.population);
        Genotype tracked;
        for (const auto& [genotype, count] : start_census.classes) {
            if (count == start_census.largest_size) {
                tracked = genotype;
                break;
            }
        }
        std::size_t tracked_size = tracker.count_of(tracked);
        std::size_t largest = tracker.largest();
        rep.tracked_peak = tracked_size;
        rep.max_peak = largest;
        std::uint64_t t = 0;

        StopCondition stop;
        stop.on_optimum = true;
        stop.max_iterations = config.t_max;
        stop.predicate = [&](const Population&, const StepResult& step) {
            ++t;
            tracker.apply(step);
            const std::size_t now_tracked = tracker.count_of(tracked);
            const std::size_t now_largest = tracker.largest();
            if (now_tracked > params.mu || now_tracked + 1 < tracked_size || tracked_size + 1 < now_tracked ||
                now_largest + 1 < largest || largest + 1 < now_largest) {
                throw IntegrityError("survival: species size moved by more than one in a single iteration");
            }
            tracked_size = now_tracked;
            largest = now_largest;
            rep.tracked_peak = std::max(rep.tracked_peak, tracked_size);
            rep.max_peak = std::max(rep.max_peak, largest);
            if (!rep.tracked_excursion && tracked_size >= summary.threshold) {
                rep.tracked_excursion = true;
                rep.tracked_first_hit = t;
            }
            if (!rep.max_excursion && largest >= summary.threshold) {
                rep.max_excursion = true;
                rep.max_first_hit = t;
            }
            return false;
        };
        const RunResult res = run(std::move(phase.population), params, stop, rng);
        rep.monitored = res.iterations;
        rep.optimum_found = res.stop_reason == StopReason::OptimumFound;
    });

    for (const auto& rep : summary.replicates) {
        summary.tracked_excursions += rep.tracked_excursion ? 1 : 0;
        summary.max_excursions += rep.max_excursion ? 1 : 0;
        summary.optimum_interrupted += rep.optimum_found ? 1 : 0;
        summary.takeover_censored += rep.takeover_censored ? 1 : 0;
    }
    const auto reps = static_cast<double>(config.replicates);
    summary.tracked_frequency = static_cast<double>(summary.tracked_excursions) / reps;
    summary.max_frequency = static_cast<double>(summary.max_excursions) / reps;
    if (params.p_c > 0.0 && params.chi > 0.0) {
        summary.survival_constant = analysis::survival_constant(config.lambda, params.chi, params.p_c);
        summary.analytic_tail = analysis::survival_tail_bound(static_cast<double>(config.t_max), config.lambda,
                                                              params.chi, params.p_c, params.mu);
    } else {
        summary.analytic_tail = std::numeric_limits<double>::infinity();
    }
    summary.analytic_vacuous = summary.analytic_tail > 1.0;
    return summary;
}

// ---------------------------------------------------------------------------
// Pairwise Hamming distances

std::vector<double> even_distance_frequencies(const Population& pop, std::size_t k) {
    const HammingHistogram h = hamming_histogram(pop);
    std::vector<double> row(k + 1, 0.0);
    for (std::size_t j = 0; j <= k; ++j) {
        row[j] = h.relative(2 * j);
    }
    return row;
}

std::vector<Figure1Run> run_figure1(const Figure1Config& config) {
    const GaParams& params = config.params;
    params.validate();
    if (config.replicates < 1) {
        throw UsageError("figure1: replicates must be at least 1");
    }
    const std::uint64_t stride = config.stride == 0 ? default_stride(params.mu) : config.stride;
    std::vector<Figure1Run> runs(config.replicates);

    parallel_for(config.replicates, config.threads, [&](std::size_t r) {
        Figure1Run& out = runs[r];
        out.replicate = r;
        Rng rng = make_rng(params.seed, r);
        Population pop = init_monomorphic_plateau(params, rng);

        double off_mass = 0.0;
        TelemetryHook hook;
        hook.name = "hamming";
        hook.stride = stride;
        hook.sample = [&off_mass, k = params.k](const Population& p) {
            const HammingHistogram h = hamming_histogram(p);
            std::vector<double> row(k + 1, 0.0);
            double on = 0.0;
            for (std::size_t j = 0; j <= k; ++j) {
                if (2 * j < h.counts.size()) {
                    row[j] = h.relative(2 * j);
                    on += static_cast<double>(h.counts[2 * j]);
                }
            }
            off_mass = std::max(off_mass, 1.0 - on / static_cast<double>(h.total_pairs));
            return row;
        };

        StopCondition stop;
        stop.on_optimum = true;
        stop.max_iterations = config.max_iterations;
        RunResult res = run(std::move(pop), params, stop, rng, std::span<const TelemetryHook>(&hook, 1));
        out.iterations = res.iterations;
        out.optimum_found = res.stop_reason == StopReason::OptimumFound;
        out.series = std::move(res.telemetry["hamming"]);
        out.off_plateau_mass = off_mass;
        out.snapshots = out.series.size();

        out.first_passage.assign(params.k + 1, std::nullopt);
        for (std::size_t s = 0; s < out.series.size(); ++s) {
            const auto row = out.series.row(s);
            const std::uint64_t it = out.series.iterations[s];
            if (!out.d0_low_iteration && row[0] < 0.05) {
                out.d0_low_iteration = it;
                out.d0_max_after_low = row[0];
            }
            if (out.d0_low_iteration) {
                out.d0_max_after_low = std::max(out.d0_max_after_low, row[0]);
            }
            for (std::size_t j = 0; j <= params.k; ++j) {
                if (!out.first_passage[j] && row[j] >= 0.1) {
                    out.first_passage[j] = it;
                }
            }
        }
        if (!config.keep_series) {
            out.series = TelemetrySeries{};
        }
    });
    return runs;
}

// ---------------------------------------------------------------------------
// Comparison

namespace {

ArmSummary run_arm(const ComparisonConfig& config, double p_c) {
    GaParams params = config.params;
    params.p_c = p_c;
    ArmSummary arm;
    arm.p_c = p_c;
    arm.replicates.resize(config.replicates);
    parallel_for(config.replicates, config.threads, [&](std::size_t r) {
        Rng rng = make_rng(params.seed, r);
        Population pop = init_uniform(params, rng);
        StopCondition stop;
        stop.on_optimum = true;
        stop.max_iterations = config.max_iterations;
        const RunResult res = run(std::move(pop), params, stop, rng);
        auto& rep = arm.replicates[r];
        rep.replicate = r;
        rep.iterations = res.iterations;
        rep.evaluations = res.evaluations;
        rep.censored = !res.optimum_found;
    });

    std::vector<double> completed;
    std::vector<double> all;
    for (const auto& rep : arm.replicates) {
        if (rep.censored) {
            ++arm.censored;
            all.push_back(std::numeric_limits<double>::infinity());
        } else {
            completed.push_back(static_cast<double>(rep.evaluations));
            all.push_back(static_cast<double>(rep.evaluations));
        }
    }
    if (!completed.empty()) {
        double total = 0.0;
        for (const double e : completed) {
            total += e;
        }
        arm.mean_evaluations = total / static_cast<double>(completed.size());
    }
    if (2 * completed.size() > all.size()) {
        arm.median_evaluations = median_of(all);
    }
    return arm;
}

} // namespace

ComparisonSummary run_comparison(const ComparisonConfig& config) {
    config.params.validate();
    if (config.replicates < 1) {
        throw UsageError("compare: replicates must be at least 1");
    }
    ComparisonSummary summary;
    summary.crossover = run_arm(config, config.params.p_c);
    summary.mutation_only = run_arm(config, 0.0);
    if (summary.crossover.median_evaluations && summary.mutation_only.median_evaluations) {
        summary.median_ratio = *summary.mutation_only.median_evaluations / *summary.crossover.median_evaluations;
    }
    return summary;
}

// ---------------------------------------------------------------------------
// Bound sweep

bool SweepCell::satisfied() const {
    return std::all_of(reports.begin(), reports.end(),
                       [](const BoundReport& r) { return !r.asserted || r.inconclusive || r.satisfied; });
}

std::vector<std::size_t> sweep_species_sizes(std::size_t mu) {
    const std::size_t half = (mu + 1) / 2;
    const std::size_t three_quarters = (3 * mu + 3) / 4;
    std::vector<std::size_t> ys = {half, three_quarters, mu - 1};
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    ys.erase(std::remove_if(ys.begin(), ys.end(), [mu](std::size_t y) { return y < 1 || y >= mu; }), ys.end());
    return ys;
}

std::vector<SweepCell> run_bound_sweep(const SweepConfig& config) {
    config.params.validate();
    struct Plan {
        std::size_t mu;
        std::size_t y;
        std::size_t half_distance;
        EventClass event;
        bool monomorphic;
    };
    std::vector<Plan> plan;
    for (const std::size_t mu : config.mus) {
        if (mu < 2) {
            throw UsageError("sweep: every mu must be at least 2");
        }
        for (const std::size_t y : sweep_species_sizes(mu)) {
            plan.push_back({mu, y, 1, EventClass::A, false});
            plan.push_back({mu, y, 1, EventClass::B, false});
            plan.push_back({mu, y, 2, EventClass::APrime, false});
        }
        plan.push_back({mu, mu, 0, EventClass::A, true});
    }

    std::vector<SweepCell> cells(plan.size());
    parallel_for(plan.size(), config.threads, [&](std::size_t c) {
        const Plan& p = plan[c];
        GaParams params = config.params;
        params.mu = p.mu;
        // The conditional law given the event does not depend on p_c; pick the rate that never rejects.
        params.p_c = p.event == EventClass::B ? 0.0 : 1.0;
        const PopulationSpec spec =
            p.monomorphic ? PopulationSpec::monomorphic() : PopulationSpec::two_species(p.y, p.half_distance);

        SweepCell& cell = cells[c];
        cell.mu = p.mu;
        cell.y = p.y;
        cell.half_distance = p.half_distance;
        cell.event = p.event;
        cell.estimate = estimate_transition(params, spec, p.event, config.trials, c);
        const ConditionedEstimate& est = cell.estimate;

        auto report = [&](std::string name, double analytic, double estimate, double se, bool ok, bool asserted) {
            BoundReport r;
            r.name = std::move(name);
            r.analytic_value = analytic;
            r.estimate = estimate;
            r.stderr_value = se;
            r.samples = est.trials;
            r.satisfied = ok;
            r.asserted = asserted;
            r.inconclusive = est.inconclusive;
            cell.reports.push_back(std::move(r));
        };

        const std::size_t n = params.n;
        const double chi = params.chi;
        if (p.monomorphic) {
            const double scaled = est.p_minus_hat * static_cast<double>(n) / static_cast<double>(params.k);
            cell.bound = 0.0;
            report("monomorphic_minus_scaled", 0.0, scaled,
                   est.stderr_minus * static_cast<double>(n) / static_cast<double>(params.k), scaled > 0.0, false);
            return;
        }
        switch (p.event) {
        case EventClass::A: {
            const double lower = analysis::ldrift_lower_bound(p.y, p.mu, chi, n);
            cell.bound = lower;
            report("ldrift_minus_lower", lower, est.p_minus_hat, est.stderr_minus,
                   est.p_minus_hat >= lower - 3.0 * est.stderr_minus, true);
            const analysis::LeadingTerm upper = analysis::rdrift_upper_leading_term(p.y, p.mu, chi, n);
            const double fitted = upper.o_scale > 0.0 ? (est.p_plus_hat - upper.leading) / upper.o_scale : 0.0;
            report("rdrift_plus_fitted_constant", upper.leading, fitted, est.stderr_plus / upper.o_scale,
                   est.p_plus_hat <= upper.leading + 3.0 * est.stderr_plus, false);
            break;
        }
        case EventClass::B: {
            const analysis::MutationBounds mb = analysis::mutation_transition_bounds(p.y, p.mu, chi, n);
            cell.bound = mb.p_minus_lower;
            report("mutation_minus_lower", mb.p_minus_lower, est.p_minus_hat, est.stderr_minus,
                   est.p_minus_hat >= mb.p_minus_lower - 3.0 * est.stderr_minus, true);
            const double band = 3.0 * est.stderr_plus + config.mutation_o_constant * mb.o_scale;
            report("mutation_plus_band", mb.p_plus_leading, est.p_plus_hat, est.stderr_plus,
                   std::fabs(est.p_plus_hat - mb.p_plus_leading) <= band, true);
            break;
        }
        case EventClass::APrime: {
            cell.bound = 2.0 * est.p_plus_hat;
            report("hamdrift4_ratio", 2.0 * est.p_plus_hat, est.p_minus_hat, est.stderr_plus + est.stderr_minus,
                   est.p_minus_hat >= 2.0 * est.p_plus_hat - 3.0 * (est.stderr_plus + est.stderr_minus), true);
            break;
        }
        }
    });
    return cells;
}

} // namespace jumpga::experiments
