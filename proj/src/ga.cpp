#include "jumpga/ga.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "jumpga/error.hpp"
#include "jumpga/operators.hpp"

namespace jumpga {

Fitness Population::max_fitness() const {
    Fitness best = members.front().fitness;
    for (const auto& m : members) {
        best = std::max(best, m.fitness);
    }
    return best;
}

Fitness Population::min_fitness() const {
    Fitness worst = members.front().fitness;
    for (const auto& m : members) {
        worst = std::min(worst, m.fitness);
    }
    return worst;
}

Population Population::from_genotypes(std::span<const Genotype> genotypes, std::size_t k) {
    Population pop;
    pop.members.reserve(genotypes.size());
    for (const auto& g : genotypes) {
        pop.members.push_back({g, jump_fitness(g, k)});
    }
    return pop;
}

std::string_view to_string(EventClass e) {
    switch (e) {
    case EventClass::A:
        return "A";
    case EventClass::APrime:
        return "A'";
    case EventClass::B:
        return "B";
    }
    return "?";
}

EventClass event_class_from_string(std::string_view s) {
    if (s == "A") {
        return EventClass::A;
    }
    if (s == "A'" || s == "Aprime" || s == "A_prime") {
        return EventClass::APrime;
    }
    if (s == "B") {
        return EventClass::B;
    }
    throw UsageError("unknown event class '" + std::string(s) + "' (expected A, A' or B)");
}

EventClass classify_event(bool used_crossover, std::span<const Genotype* const> parents) {
    if (!used_crossover) {
        if (parents.size() != 1) {
            throw UsageError("classify_event: mutation-only steps have exactly one parent");
        }
        return EventClass::B;
    }
    if (parents.size() != 2) {
        throw UsageError("classify_event: crossover steps have exactly two parents");
    }
    return hamming_distance(*parents[0], *parents[1]) <= 2 ? EventClass::A : EventClass::APrime;
}

std::string_view to_string(StopReason r) {
    switch (r) {
    case StopReason::OptimumFound:
        return "optimum_found";
    case StopReason::MaxIterations:
        return "max_iterations";
    case StopReason::PlateauReached:
        return "plateau_reached";
    case StopReason::Predicate:
        return "predicate";
    }
    return "?";
}

Population init_uniform(const GaParams& params, Rng& rng) {
    params.validate();
    Population pop;
    pop.members.reserve(params.mu);
    for (std::size_t i = 0; i < params.mu; ++i) {
        Genotype g(params.n);
        auto words = g.words();
        for (auto& w : words) {
            w = rng.next();
        }
        words.back() &= g.tail_mask();
        const Fitness f = jump_fitness(g, params.k);
        pop.members.push_back({std::move(g), f});
    }
    return pop;
}

Population init_monomorphic_plateau(const GaParams& params, Rng& rng) {
    params.validate();
    // Partial Fisher-Yates: the first k slots form a uniform k-subset of zero positions.
    std::vector<std::size_t> positions(params.n);
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    Genotype g = Genotype::all_ones(params.n);
    for (std::size_t i = 0; i < params.k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(params.n - i));
        std::swap(positions[i], positions[j]);
        g.set(positions[i], false);
    }
    const Fitness f = jump_fitness(g, params.k);
    Population pop;
    pop.members.assign(params.mu, Individual{g, f});
    return pop;
}

StepResult ga_step(Population& pop, const GaParams& params, Rng& rng) {
    const std::size_t mu = pop.size();
    StepResult result;
    StepTrace& trace = result.trace;
    trace.t = pop.generation;

    const bool crossover = rng.uniform01() < params.p_c;
    Genotype offspring;
    if (crossover) {
        const auto i = static_cast<std::uint32_t>(rng.below(mu));
        const auto j = static_cast<std::uint32_t>(rng.below(mu));
        trace.parent_indices = {i, j};
        trace.parent_count = 2;
        const Genotype* parents[2] = {&pop[i], &pop[j]};
        trace.event = classify_event(true, parents);
        uniform_crossover_into(pop[i], pop[j], offspring, rng);
    } else {
        const auto i = static_cast<std::uint32_t>(rng.below(mu));
        trace.parent_indices = {i, i};
        trace.parent_count = 1;
        trace.event = EventClass::B;
        offspring = pop[i];
    }
    mutate_in_place(offspring, params.p_m(), rng);

    const std::size_t ones = ones_count(offspring);
    const Fitness fitness = jump_fitness_from_ones(ones, params.n, params.k);
    trace.offspring_fitness = fitness;
    trace.optimum_created = ones == params.n;

    // Minimum over the mu+1 candidates, ties broken uniformly.
    Fitness worst = fitness;
    for (const auto& m : pop.members) {
        worst = std::min(worst, m.fitness);
    }
    std::size_t ties = 0;
    for (const auto& m : pop.members) {
        ties += m.fitness == worst ? 1 : 0;
    }
    ties += fitness == worst ? 1 : 0;

    std::size_t pick = ties > 1 ? static_cast<std::size_t>(rng.below(ties)) : 0;
    std::size_t removed = mu;
    for (std::size_t i = 0; i < mu; ++i) {
        if (pop.members[i].fitness == worst) {
            if (pick == 0) {
                removed = i;
                break;
            }
            --pick;
        }
    }
    trace.removed_index = static_cast<std::uint32_t>(removed);

    trace.offspring = offspring;
    if (removed < mu) {
        std::swap(pop.members[removed].genotype, offspring);
        pop.members[removed].fitness = fitness;
    }
    result.evicted = std::move(offspring);
    ++pop.generation;
    return result;
}

void TelemetrySeries::append(std::uint64_t iteration, std::span<const double> row) {
    if (iterations.empty()) {
        width = row.size();
    } else if (row.size() != width) {
        throw UsageError("TelemetrySeries: row width changed between snapshots");
    }
    iterations.push_back(iteration);
    values.insert(values.end(), row.begin(), row.end());
}

std::uint64_t default_stride(std::size_t mu) { return mu <= 64 ? 1 : 10; }

namespace {

bool contains_optimum(const Population& pop, std::size_t n) {
    return std::any_of(pop.members.begin(), pop.members.end(),
                       [n](const Individual& m) { return ones_count(m.genotype) == n; });
}

bool full_plateau(const Population& pop, std::size_t n) {
    return pop.min_fitness() >= static_cast<Fitness>(n);
}

} // namespace

RunResult run(Population pop, const GaParams& params, const StopCondition& stop, Rng& rng,
              std::span<const TelemetryHook> hooks) {
    params.validate();
    if (pop.size() != params.mu) {
        throw UsageError("run: population size does not match mu");
    }
    if (!stop.on_optimum && !stop.max_iterations && !stop.on_full_plateau && !stop.predicate) {
        throw UsageError("run: no stop condition enabled");
    }
    if (stop.max_iterations && *stop.max_iterations == 0) {
        throw UsageError("run: max_iterations must be positive");
    }
    for (const auto& hook : hooks) {
        if (hook.stride == 0 || !hook.sample) {
            throw UsageError("run: telemetry hook '" + hook.name + "' needs a positive stride and a sampler");
        }
    }

    RunResult result;
    for (const auto& hook : hooks) {
        result.telemetry[hook.name];
    }

    const std::uint64_t start = pop.generation;
    bool done = false;
    result.optimum_found = contains_optimum(pop, params.n);
    if (stop.on_optimum && result.optimum_found) {
        result.stop_reason = StopReason::OptimumFound;
        done = true;
    } else if (stop.on_full_plateau && full_plateau(pop, params.n)) {
        result.stop_reason = StopReason::PlateauReached;
        done = true;
    }

    while (!done) {
        const std::uint64_t t = pop.generation - start;
        for (const auto& hook : hooks) {
            if (t % hook.stride == 0) {
                auto& series = result.telemetry[hook.name];
                const std::vector<double> row = hook.sample(pop);
                series.append(t, row);
            }
        }

        const StepResult step = ga_step(pop, params, rng);
        const std::uint64_t done_iterations = pop.generation - start;

        if (step.trace.optimum_created) {
            result.optimum_found = true;
        }
        if (stop.on_optimum && step.trace.optimum_created) {
            result.stop_reason = StopReason::OptimumFound;
            done = true;
        } else if (stop.predicate && stop.predicate(pop, step)) {
            result.stop_reason = StopReason::Predicate;
            done = true;
        } else if (stop.on_full_plateau && full_plateau(pop, params.n)) {
            result.stop_reason = StopReason::PlateauReached;
            done = true;
        } else if (stop.max_iterations && done_iterations >= *stop.max_iterations) {
            result.stop_reason = StopReason::MaxIterations;
            done = true;
        }
    }

    result.iterations = pop.generation - start;
    result.evaluations = params.mu + result.iterations;
    result.final_population = std::move(pop);
    return result;
}

} // namespace jumpga
