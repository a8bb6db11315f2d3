#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"

#include "jumpga/diversity.hpp"
#include "jumpga/error.hpp"
#include "jumpga/ga.hpp"
#include "reference.hpp"

using namespace jumpga;
using reference::within_sigma;

namespace {

GaParams make_params(std::size_t n, std::size_t k, std::size_t mu, double p_c, double chi, std::uint64_t seed = 1) {
    GaParams p;
    p.n = n;
    p.k = k;
    p.mu = mu;
    p.p_c = p_c;
    p.chi = chi;
    p.seed = seed;
    return p;
}

std::map<std::string, std::size_t> multiset(const Population& pop) {
    std::map<std::string, std::size_t> m;
    for (const auto& ind : pop.members) {
        ++m[ind.genotype.to_string()];
    }
    return m;
}

Fitness jump_oracle(std::size_t ones, std::size_t n, std::size_t k) {
    if (ones == n || ones <= n - k) {
        return static_cast<Fitness>(k + ones);
    }
    return static_cast<Fitness>(n - ones);
}

// One iteration of the (mu+1) GA written from the algorithm description, for
// strings of at most 64 bits stored as a plain integer (bit i = position i).
struct HandStep {
    bool crossover = false;
    std::uint32_t first = 0;
    std::uint32_t second = 0;
    std::uint64_t child = 0;
    Fitness child_fitness = 0;
    std::uint32_t removed = 0;
};

HandStep hand_step(std::vector<std::uint64_t>& pop, std::size_t n, std::size_t k, double p_c, double p_m,
                   reference::Xoshiro& r) {
    HandStep s;
    const std::size_t mu = pop.size();
    s.crossover = r.unit() < p_c;
    if (s.crossover) {
        s.first = static_cast<std::uint32_t>(r.bounded(mu));
        s.second = static_cast<std::uint32_t>(r.bounded(mu));
        const std::uint64_t mask = r.next();
        s.child = (pop[s.first] & mask) | (pop[s.second] & ~mask);
        s.child &= n == 64 ? ~0ULL : ((1ULL << n) - 1);
    } else {
        s.first = s.second = static_cast<std::uint32_t>(r.bounded(mu));
        s.child = pop[s.first];
    }
    std::size_t pos = 0;
    while (true) {
        const std::uint64_t gap = r.skip(p_m, n);
        if (gap >= n - pos) {
            break;
        }
        pos += gap;
        s.child ^= 1ULL << pos;
        ++pos;
    }
    auto fit = [&](std::uint64_t g) { return jump_oracle(static_cast<std::size_t>(__builtin_popcountll(g)), n, k); };
    s.child_fitness = fit(s.child);
    std::vector<std::uint32_t> worst;
    Fitness lowest = s.child_fitness;
    for (const auto g : pop) {
        lowest = std::min(lowest, fit(g));
    }
    for (std::uint32_t i = 0; i < mu; ++i) {
        if (fit(pop[i]) == lowest) {
            worst.push_back(i);
        }
    }
    if (s.child_fitness == lowest) {
        worst.push_back(static_cast<std::uint32_t>(mu));
    }
    s.removed = worst.size() > 1 ? worst[r.bounded(worst.size())] : worst.front();
    if (s.removed < mu) {
        pop[s.removed] = s.child;
    }
    return s;
}

Genotype from_word(std::uint64_t w, std::size_t n) {
    Genotype g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.set(i, (w >> i) & 1U);
    }
    return g;
}

} // namespace

TEST_CASE("init_uniform") {
    SUBCASE("smallest case") {
        const GaParams p = make_params(1, 1, 2, 0.5, 1.0);
        Rng rng(4);
        const Population pop = init_uniform(p, rng);
        REQUIRE(pop.size() == 2);
        for (const auto& m : pop.members) {
            CHECK(m.genotype.size() == 1);
            CHECK(m.fitness == jump_oracle(ones_count(m.genotype), 1, 1));
        }
        CHECK(pop.generation == 0);
    }
    SUBCASE("bits are fair: mean ones count n/2") {
        const GaParams p = make_params(100, 3, 50, 0.5, 1.0);
        double total = 0.0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            Rng rng(seed);
            for (const auto& m : init_uniform(p, rng).members) {
                total += static_cast<double>(ones_count(m.genotype));
            }
        }
        const double genotypes = 100.0 * 50.0;
        CHECK(within_sigma(total / genotypes, 50.0, 5.0 / std::sqrt(genotypes)));
    }
    SUBCASE("same seed gives the same population") {
        const GaParams p = make_params(70, 3, 9, 0.5, 1.0);
        Rng a(8);
        Rng b(8);
        CHECK(init_uniform(p, a).members == init_uniform(p, b).members);
    }
}

TEST_CASE("init_monomorphic_plateau") {
    const GaParams p = make_params(6, 2, 5, 0.5, 1.0);
    Rng rng(1);
    const Population pop = init_monomorphic_plateau(p, rng);
    CHECK(census(pop).species_count == 1);
    CHECK(census(pop).largest_size == 5);
    for (const auto& m : pop.members) {
        CHECK(m.fitness == 6);
        CHECK(ones_count(m.genotype) == 4);
    }

    // All C(6,2) = 15 zero patterns equally likely.
    std::map<std::string, int> counts;
    constexpr int kSeeds = 10000;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        Rng r(seed);
        ++counts[init_monomorphic_plateau(p, r)[0].to_string()];
    }
    CHECK(counts.size() == 15);
    const double q = 1.0 / 15.0;
    for (const auto& [pattern, c] : counts) {
        INFO(pattern);
        CHECK(within_sigma(static_cast<double>(c) / kSeeds, q, std::sqrt(q * (1 - q) / kSeeds)));
    }
}

TEST_CASE("classify_event") {
    const Genotype a = Genotype::from_string("000111111");
    const Genotype b = Genotype::from_string("111000111");
    const Genotype* one[1] = {&a};
    const Genotype* same[2] = {&a, &a};
    const Genotype* far[2] = {&a, &b};
    CHECK(classify_event(false, one) == EventClass::B);
    CHECK(classify_event(true, same) == EventClass::A);
    CHECK(classify_event(true, far) == EventClass::APrime);
    const Genotype c = Genotype::from_string("001011111");
    const Genotype* near[2] = {&a, &c};
    CHECK(classify_event(true, near) == EventClass::A);
    CHECK_THROWS_AS(classify_event(true, one), UsageError);
    CHECK(event_class_from_string(to_string(EventClass::APrime)) == EventClass::APrime);
}

TEST_CASE("ga_step: gap offspring is removed immediately") {
    const GaParams p = make_params(20, 3, 5, 0.0, 1.0);
    Rng rng(2);
    Population pop = init_monomorphic_plateau(p, rng);
    int gap_offspring = 0;
    for (int t = 0; t < 2000; ++t) {
        const auto before = multiset(pop);
        const StepResult s = ga_step(pop, p, rng);
        if (s.trace.offspring_fitness < 20) {
            ++gap_offspring;
            REQUIRE(s.trace.removed_index == 5);
            REQUIRE(multiset(pop) == before);
        }
    }
    CHECK(gap_offspring > 0);
}

TEST_CASE("ga_step: no variation keeps a monomorphic population") {
    const GaParams p = make_params(30, 3, 6, 1.0, 0.0);
    Rng rng(3);
    Population pop = init_monomorphic_plateau(p, rng);
    const Genotype g = pop[0];
    for (int t = 0; t < 100; ++t) {
        const StepResult s = ga_step(pop, p, rng);
        REQUIRE(s.trace.offspring == g);
        REQUIRE(s.trace.parent_count == 2);
        REQUIRE(s.trace.event == EventClass::A);
        REQUIRE(census(pop).species_count == 1);
    }
}

TEST_CASE("ga_step matches a hand simulation: mu=2, n=2, k=1") {
    const GaParams p = make_params(2, 1, 2, 0.5, 1.0);
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        std::vector<std::uint64_t> hand = {0b01, 0b00};
        Population pop = Population::from_genotypes(std::vector<Genotype>{from_word(0b01, 2), from_word(0b00, 2)}, 1);
        Rng rng(seed);
        reference::Xoshiro ref(seed);
        for (int t = 0; t < 4; ++t) {
            const HandStep h = hand_step(hand, 2, 1, p.p_c, p.p_m(), ref);
            const StepResult s = ga_step(pop, p, rng);
            INFO("seed " << seed << " step " << t);
            REQUIRE(s.trace.t == static_cast<std::uint64_t>(t));
            REQUIRE((s.trace.parent_count == 2) == h.crossover);
            REQUIRE(s.trace.parent_indices[0] == h.first);
            REQUIRE(s.trace.parent_indices[1] == h.second);
            REQUIRE(s.trace.offspring == from_word(h.child, 2));
            REQUIRE(s.trace.offspring_fitness == h.child_fitness);
            REQUIRE(s.trace.removed_index == h.removed);
            REQUIRE(s.trace.optimum_created == (h.child == 0b11));
            for (std::size_t i = 0; i < 2; ++i) {
                REQUIRE(pop[i] == from_word(hand[i], 2));
            }
        }
    }
}

TEST_CASE("ga_step matches a hand simulation on larger random populations") {
    const GaParams p = make_params(40, 4, 7, 0.6, 1.5);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng init(seed + 1000);
        Population pop = init_uniform(p, init);
        std::vector<std::uint64_t> hand;
        for (const auto& m : pop.members) {
            hand.push_back(m.genotype.words()[0]);
        }
        Rng rng(seed);
        reference::Xoshiro ref(seed);
        for (int t = 0; t < 300; ++t) {
            const HandStep h = hand_step(hand, 40, 4, p.p_c, p.p_m(), ref);
            const StepResult s = ga_step(pop, p, rng);
            REQUIRE(s.trace.removed_index == h.removed);
            REQUIRE(s.trace.offspring == from_word(h.child, 40));
        }
        for (std::size_t i = 0; i < hand.size(); ++i) {
            REQUIRE(pop[i] == from_word(hand[i], 40));
            REQUIRE(pop.members[i].fitness == jump_oracle(ones_count(pop[i]), 40, 4));
        }
    }
}

TEST_CASE("ga_step replay is deterministic and keeps invariants") {
    const GaParams p = make_params(25, 3, 8, 0.5, 1.0);
    Rng init(5);
    const Population start = init_uniform(p, init);
    Population a = start;
    Population b = start;
    Rng ra(6);
    Rng rb(6);
    Fitness best = start.max_fitness();
    for (int t = 0; t < 3000; ++t) {
        const StepResult sa = ga_step(a, p, ra);
        const StepResult sb = ga_step(b, p, rb);
        REQUIRE(sa.trace == sb.trace);
        REQUIRE(a.size() == 8);
        REQUIRE(a.max_fitness() >= best);
        best = a.max_fitness();
        if (sa.trace.removed_index < 8) {
            REQUIRE(a[sa.trace.removed_index] == sa.trace.offspring);
        } else {
            REQUIRE(sa.evicted == sa.trace.offspring);
        }
    }
    CHECK(a.generation == 3000);
}

TEST_CASE("run") {
    SUBCASE("optimum already present stops at once") {
        const GaParams p = make_params(10, 2, 4, 0.5, 1.0);
        Rng rng(1);
        Population pop = init_monomorphic_plateau(p, rng);
        pop.members[2] = {Genotype::all_ones(10), 12};
        const RunResult r = run(pop, p, StopCondition::optimum_found(), rng);
        CHECK(r.iterations == 0);
        CHECK(r.evaluations == 4);
        CHECK(r.optimum_found);
        CHECK(r.stop_reason == StopReason::OptimumFound);
    }
    SUBCASE("n=20, k=2, mu=8 finds the optimum in every seed") {
        const GaParams p = make_params(20, 2, 8, 0.5, 1.0);
        StopCondition stop = StopCondition::optimum_found();
        stop.max_iterations = 10'000'000;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            Rng rng = make_rng(seed, 0);
            const RunResult r = run(init_uniform(p, rng), p, stop, rng);
            REQUIRE(r.optimum_found);
            REQUIRE(r.iterations < 10'000'000);
            REQUIRE(r.evaluations == 8 + r.iterations);
            REQUIRE(r.final_population.max_fitness() == 22);
        }
    }
    SUBCASE("iteration cap reports non-convergence") {
        const GaParams p = make_params(60, 5, 4, 0.5, 1.0);
        Rng rng(1);
        const RunResult r = run(init_monomorphic_plateau(p, rng), p, StopCondition::iterations(50), rng);
        CHECK(r.iterations == 50);
        CHECK(r.evaluations == 54);
        CHECK_FALSE(r.converged());
        CHECK(r.stop_reason == StopReason::MaxIterations);
    }
    SUBCASE("telemetry snapshots every stride") {
        const GaParams p = make_params(30, 3, 5, 0.5, 1.0);
        Rng rng(2);
        TelemetryHook hook{"largest", 3, [](const Population& pop) {
                               return std::vector<double>{static_cast<double>(census(pop).largest_size)};
                           }};
        const RunResult r = run(init_monomorphic_plateau(p, rng), p, StopCondition::iterations(10), rng,
                                std::span<const TelemetryHook>(&hook, 1));
        const auto& s = r.telemetry.at("largest");
        CHECK(s.iterations == std::vector<std::uint64_t>{0, 3, 6, 9});
        CHECK(s.row(0)[0] == 5.0);
    }
    SUBCASE("run without a stop criterion is rejected") {
        const GaParams p = make_params(30, 3, 5, 0.5, 1.0);
        Rng rng(2);
        StopCondition none;
        none.on_optimum = false;
        CHECK_THROWS_AS(run(init_uniform(p, rng), p, none, rng), UsageError);
    }
}
