#pragma once

/// @file ga.hpp
/// The steady-state (mu+1) GA on Jump_k.
///
/// One iteration draws its randomness in a fixed order:
///   1. crossover coin u in [0,1); crossover iff u < p_c
///   2. parent index (two indices with replacement when crossing over)
///   3. crossover mask, one 64-bit word per genotype word (crossover only)
///   4. mutation flips by geometric skipping (none when p_m = 0 or 1)
///   5. removal tie-break among the minimum-fitness candidates, drawn only
///      when more than one candidate ties
/// Candidates for removal are indexed 0..mu-1 for the current members and
/// mu for the offspring. The offspring replaces the removed member in place.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jumpga/genotype.hpp"
#include "jumpga/jump.hpp"
#include "jumpga/rng.hpp"

namespace jumpga {

struct Individual {
    Genotype genotype;
    Fitness fitness = 0;

    bool operator==(const Individual&) const = default;
};

struct Population {
    std::vector<Individual> members;
    std::uint64_t generation = 0;

    std::size_t size() const { return members.size(); }
    const Genotype& operator[](std::size_t i) const { return members[i].genotype; }

    Fitness max_fitness() const;
    Fitness min_fitness() const;

    /// Population of the given genotypes with freshly evaluated fitness.
    static Population from_genotypes(std::span<const Genotype> genotypes, std::size_t k);
};

/// Per-iteration conditioning classes: crossover with parent Hamming distance
/// <= 2 (A), crossover with distance > 2 (A'), mutation only (B).
enum class EventClass : std::uint8_t { A, APrime, B };

std::string_view to_string(EventClass e);
EventClass event_class_from_string(std::string_view s);

/// B without crossover, otherwise A or A' by the parents' Hamming distance.
/// `parents` must hold two genotypes iff `used_crossover`.
EventClass classify_event(bool used_crossover, std::span<const Genotype* const> parents);

struct StepTrace {
    std::uint64_t t = 0;
    EventClass event = EventClass::B;
    std::array<std::uint32_t, 2> parent_indices{};
    std::uint8_t parent_count = 1;
    Genotype offspring;
    Fitness offspring_fitness = 0;
    /// Index into the (mu+1)-candidate multiset; mu means the offspring itself.
    std::uint32_t removed_index = 0;
    bool optimum_created = false;

    bool operator==(const StepTrace&) const = default;
};

/// Outcome of one iteration: the trace plus the genotype that left the population.
struct StepResult {
    StepTrace trace;
    Genotype evicted;
};

/// P^(0): mu independent uniform genotypes.
Population init_uniform(const GaParams& params, Rng& rng);

/// mu copies of one genotype drawn uniformly among all strings with exactly k zeros.
Population init_monomorphic_plateau(const GaParams& params, Rng& rng);

/// Executes one iteration in place and returns its trace.
StepResult ga_step(Population& pop, const GaParams& params, Rng& rng);

enum class StopReason : std::uint8_t { OptimumFound, MaxIterations, PlateauReached, Predicate };

std::string_view to_string(StopReason r);

/// Stop criteria checked after every iteration; any satisfied one ends the run.
/// A run with no criterion enabled is rejected.
struct StopCondition {
    bool on_optimum = true;
    std::optional<std::uint64_t> max_iterations;
    /// Whole population has fitness >= n (plateau or optimum).
    bool on_full_plateau = false;
    /// Custom criterion fed with every step (e.g. species-size thresholds).
    std::function<bool(const Population&, const StepResult&)> predicate;

    static StopCondition optimum_found() { return {}; }
    static StopCondition iterations(std::uint64_t limit) {
        StopCondition s;
        s.on_optimum = false;
        s.max_iterations = limit;
        return s;
    }
    static StopCondition full_population_on_plateau_or_optimum() {
        StopCondition s;
        s.on_full_plateau = true;
        return s;
    }
};

/// Snapshot sampler: called on P^(t) for t = 0, stride, 2*stride, ... before
/// the iteration that would start from it, for every t below the final
/// iteration count. The final population is not sampled.
struct TelemetryHook {
    std::string name;
    std::uint64_t stride = 1;
    std::function<std::vector<double>(const Population&)> sample;
};

/// Snapshot rows stored contiguously; every row has `width` values.
struct TelemetrySeries {
    std::vector<std::uint64_t> iterations;
    std::vector<double> values;
    std::size_t width = 0;

    std::size_t size() const { return iterations.size(); }
    std::span<const double> row(std::size_t i) const { return {values.data() + i * width, width}; }
    void append(std::uint64_t iteration, std::span<const double> row);
};

/// Stride default: every iteration for mu <= 64, every 10th otherwise.
std::uint64_t default_stride(std::size_t mu);

struct RunResult {
    Population final_population;
    std::uint64_t iterations = 0;
    /// mu initial evaluations plus one per iteration.
    std::uint64_t evaluations = 0;
    StopReason stop_reason = StopReason::MaxIterations;
    bool optimum_found = false;
    std::map<std::string, TelemetrySeries> telemetry;

    bool converged() const { return optimum_found; }
};

RunResult run(Population pop, const GaParams& params, const StopCondition& stop, Rng& rng,
              std::span<const TelemetryHook> hooks = {});

} // namespace jumpga
