#pragma once

/// @file experiments.hpp
/// Seeded experiment protocols built on the GA engine: conditioned one-step
/// transition estimates, takeover and survival of species, the pairwise
/// Hamming-distance time series, and crossover-vs-mutation runtime comparison.
///
/// Every replicate or grid cell `i` draws from make_rng(seed, i), and results
/// are collected by index, so the output does not depend on the thread count.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jumpga/ga.hpp"
#include "jumpga/genotype.hpp"
#include "jumpga/jump.hpp"
#include "jumpga/rng.hpp"

namespace jumpga::experiments {

/// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// A full-plateau start population and the species whose size is tracked.
struct PopulationSpec {
    enum class Kind { Monomorphic, TwoSpecies, Explicit };

    Kind kind = Kind::Monomorphic;
    /// Size of the tracked species (TwoSpecies only).
    std::size_t y = 0;
    /// The two species differ in 2 * half_distance positions (TwoSpecies only).
    std::size_t half_distance = 1;
    /// Members and tracked genotype (Explicit only).
    std::vector<Genotype> members;
    Genotype tracked;

    static PopulationSpec monomorphic() { return {}; }
    static PopulationSpec two_species(std::size_t y, std::size_t half_distance);
    static PopulationSpec explicit_population(std::vector<Genotype> members, Genotype tracked);

    std::string describe() const;
};

struct StartPopulation {
    Population population;
    Genotype tracked;
};

/// Materialises `spec` for `params`, drawing plateau positions from `rng`.
/// Throws UsageError when the spec is infeasible or not entirely on the plateau.
StartPopulation build_population(const PopulationSpec& spec, const GaParams& params, Rng& rng);

struct ConditionedEstimate {
    /// Conditioning event; empty for the unconditioned one-step drift.
    std::optional<EventClass> event;
    std::size_t y = 0;
    double p_plus_hat = 0.0;
    double p_minus_hat = 0.0;
    double stderr_plus = 0.0;
    double stderr_minus = 0.0;
    /// Accepted (event-matching) trials.
    std::uint64_t trials = 0;
    /// All simulated steps, accepted or not.
    std::uint64_t attempts = 0;
    /// Fewer than `kMinAcceptedTrials` steps matched the event.
    bool inconclusive = false;
    std::string config_descriptor;

    static constexpr std::uint64_t kMinAcceptedTrials = 100;

    /// Empirical E[Delta Y] = p+ - p-.
    double drift() const { return p_plus_hat - p_minus_hat; }
    double drift_stderr() const;
};

/// Repeats single ga_steps from the same start population with fresh
/// randomness. Steps whose event differs from `event` are rejected; sampling
/// stops once `trials` steps were accepted or `max_attempts` steps were run
/// (0 means 100 * trials). Reports how often the tracked species grew or shrank by one.
ConditionedEstimate estimate_transition(const GaParams& params, const StartPopulation& start,
                                        std::optional<EventClass> event, std::uint64_t trials, Rng& rng,
                                        std::uint64_t max_attempts = 0);

/// Convenience overload building the start population from make_rng(params.seed, stream).
ConditionedEstimate estimate_transition(const GaParams& params, const PopulationSpec& spec,
                                        std::optional<EventClass> event, std::uint64_t trials,
                                        std::uint64_t stream = 0, std::uint64_t max_attempts = 0);

// ---------------------------------------------------------------------------
// Optimum construction by crossover and mutation

/// Two plateau genotypes at Hamming distance 2d: a uniform plateau point and a
/// copy with d zeros and d ones exchanged. Requires d <= min(k, n-k).
std::pair<Genotype, Genotype> plateau_pair(std::size_t n, std::size_t k, std::size_t d, Rng& rng);

struct OptimumFrequency {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double frequency = 0.0;
    double stderr_value = 0.0;
};

/// Fraction of `trials` independent uniform_crossover(a, b) + mutation(p_m)
/// draws that produce the all-ones string.
OptimumFrequency sample_optimum_frequency(const Genotype& a, const Genotype& b, double p_m, std::uint64_t trials,
                                          Rng& rng);

// ---------------------------------------------------------------------------
// Takeover

struct TakeoverConfig {
    GaParams params;
    std::size_t replicates = 50;
    std::uint64_t max_iterations = 10'000'000;
    unsigned threads = 1;
};

struct TakeoverReplicate {
    std::size_t replicate = 0;
    std::uint64_t hitting_time = 0;
    bool censored = false;
    /// The optimum appeared before the largest species shrank to mu/2.
    bool optimum_first = false;
};

struct TakeoverSummary {
    std::vector<TakeoverReplicate> replicates;
    std::size_t censored = 0;
    std::size_t optimum_first = 0;
    /// Over replicates that hit mu/2.
    double mean = 0.0;
    double median = 0.0;
    /// mu n + mu^2 ln mu.
    double reference = 0.0;
    double ratio = 0.0;
};

/// From a monomorphic plateau population, iterations until the largest
/// species has at most mu/2 members.
TakeoverSummary run_takeover(const TakeoverConfig& config);

// ---------------------------------------------------------------------------
// Survival

struct SurvivalConfig {
    GaParams params;
    std::size_t replicates = 30;
    double lambda = 0.75;
    std::uint64_t t_max = 100'000;
    /// Cap for the takeover phase preceding the monitoring window.
    std::uint64_t max_takeover_iterations = 10'000'000;
    unsigned threads = 1;
};

struct SurvivalReplicate {
    std::size_t replicate = 0;
    std::uint64_t takeover_time = 0;
    bool takeover_censored = false;
    /// Iterations actually monitored (less than t_max if the optimum appeared).
    std::uint64_t monitored = 0;
    bool optimum_found = false;
    /// Species that was largest when the takeover phase ended.
    bool tracked_excursion = false;
    std::uint64_t tracked_first_hit = 0;
    std::size_t tracked_peak = 0;
    /// Maximum over all species.
    bool max_excursion = false;
    std::uint64_t max_first_hit = 0;
    std::size_t max_peak = 0;
};

struct SurvivalSummary {
    std::vector<SurvivalReplicate> replicates;
    /// ceil(lambda * mu).
    std::size_t threshold = 0;
    std::size_t tracked_excursions = 0;
    std::size_t max_excursions = 0;
    std::size_t optimum_interrupted = 0;
    std::size_t takeover_censored = 0;
    double tracked_frequency = 0.0;
    double max_frequency = 0.0;
    double survival_constant = 0.0;
    /// t_max^2 exp(-C mu).
    double analytic_tail = 0.0;
    bool analytic_vacuous = false;
};

/// After the largest species first shrinks to mu/2, watches t_max iterations
/// for the tracked species (and the running maximum) to regrow to lambda mu.
SurvivalSummary run_survival(const SurvivalConfig& config);

// ---------------------------------------------------------------------------
// Pairwise Hamming distances over time

struct Figure1Config {
    GaParams params;
    std::size_t replicates = 10;
    std::uint64_t max_iterations = 100'000'000;
    /// 0 selects default_stride(mu).
    std::uint64_t stride = 0;
    bool keep_series = true;
    unsigned threads = 1;
};

struct Figure1Run {
    std::size_t replicate = 0;
    std::uint64_t iterations = 0;
    bool optimum_found = false;
    /// Columns: relative frequency of distances 0, 2, ..., 2k.
    TelemetrySeries series;

    /// First snapshot iteration with distance-0 frequency below 0.05.
    std::optional<std::uint64_t> d0_low_iteration;
    /// Largest distance-0 frequency from d0_low_iteration on.
    double d0_max_after_low = 1.0;
    /// first_passage[j]: first iteration at which distance 2j reaches 0.1.
    std::vector<std::optional<std::uint64_t>> first_passage;
    /// Largest relative frequency of odd or > 2k distances over all snapshots.
    double off_plateau_mass = 0.0;
    /// Snapshot count (kept even when the series is dropped).
    std::size_t snapshots = 0;
};

/// Runs from a monomorphic plateau population until the optimum is created,
/// sampling the pairwise-distance histogram.
std::vector<Figure1Run> run_figure1(const Figure1Config& config);

/// Relative frequencies of distances 0, 2, ..., 2k in `pop`.
std::vector<double> even_distance_frequencies(const Population& pop, std::size_t k);

// ---------------------------------------------------------------------------
// Crossover vs mutation only

struct ComparisonConfig {
    GaParams params;
    std::size_t replicates = 20;
    std::uint64_t max_iterations = 50'000'000;
    unsigned threads = 1;
};

struct ArmReplicate {
    std::size_t replicate = 0;
    std::uint64_t iterations = 0;
    std::uint64_t evaluations = 0;
    bool censored = false;
};

struct ArmSummary {
    double p_c = 0.0;
    std::vector<ArmReplicate> replicates;
    std::size_t censored = 0;
    /// Mean over completed runs; median over all runs when more than half completed.
    double mean_evaluations = 0.0;
    std::optional<double> median_evaluations;
};

struct ComparisonSummary {
    ArmSummary crossover;
    ArmSummary mutation_only;
    /// median(mutation only) / median(crossover), when both medians exist.
    std::optional<double> median_ratio;
};

/// Paired runs from uniform initialisation: replicate i of both arms uses stream i.
ComparisonSummary run_comparison(const ComparisonConfig& config);

// ---------------------------------------------------------------------------
// Bound sweep

struct BoundReport {
    std::string name;
    double analytic_value = 0.0;
    double estimate = 0.0;
    double stderr_value = 0.0;
    std::uint64_t samples = 0;
    bool satisfied = false;
    /// Reported-only checks (unknown O-constants) never fail a sweep.
    bool asserted = true;
    bool inconclusive = false;
};

struct SweepConfig {
    GaParams params;
    std::vector<std::size_t> mus = {4, 8, 16};
    std::uint64_t trials = 100'000;
    /// Fitted O-constant for the mutation-only p+ band.
    double mutation_o_constant = 10.0;
    unsigned threads = 1;
};

struct SweepCell {
    std::size_t mu = 0;
    std::size_t y = 0;
    std::size_t half_distance = 0;
    EventClass event = EventClass::A;
    ConditionedEstimate estimate;
    /// Comparator written to the transitions table.
    double bound = 0.0;
    std::vector<BoundReport> reports;

    bool satisfied() const;
};

/// Grid of conditioned estimates paired with their closed-form bounds:
/// for each mu and y in {ceil(mu/2), ceil(3mu/4), mu-1}: event A and B on the
/// distance-2 two-species family, event A' on the distance-4 family; plus a
/// monomorphic event-A cell per mu reporting p-(mu|A) n / k.
std::vector<SweepCell> run_bound_sweep(const SweepConfig& config);

/// The y grid used by the sweep (deduplicated, ascending).
std::vector<std::size_t> sweep_species_sizes(std::size_t mu);

} // namespace jumpga::experiments
