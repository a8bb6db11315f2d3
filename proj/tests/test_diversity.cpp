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

GaParams make_params(std::size_t n, std::size_t k, std::size_t mu, double p_c, double chi) {
    GaParams p;
    p.n = n;
    p.k = k;
    p.mu = mu;
    p.p_c = p_c;
    p.chi = chi;
    return p;
}

std::size_t naive_largest(const Population& pop) {
    std::map<std::string, std::size_t> m;
    std::size_t best = 0;
    for (const auto& ind : pop.members) {
        best = std::max(best, ++m[ind.genotype.to_string()]);
    }
    return best;
}

} // namespace

TEST_CASE("census examples") {
    const GaParams p = make_params(12, 3, 7, 0.5, 1.0);
    Rng rng(1);
    const Population mono = init_monomorphic_plateau(p, rng);
    const SpeciesCensus c = census(mono);
    CHECK(c.species_count == 1);
    CHECK(c.largest_size == 7);
    CHECK(c.count_of(mono[0]) == 7);

    const Genotype g = Genotype::from_string("1101");
    const Genotype h = Genotype::from_string("0111");
    const Population pop = Population::from_genotypes(std::vector<Genotype>{g, h, g}, 1);
    const SpeciesCensus d = census(pop);
    REQUIRE(d.classes.size() == 2);
    CHECK(d.classes[0].first == g);
    CHECK(d.classes[0].second == 2);
    CHECK(d.classes[1].first == h);
    CHECK(d.classes[1].second == 1);
    CHECK(d.largest_size == 2);
    CHECK(d.count_of(Genotype::from_string("0000")) == 0);
}

TEST_CASE("census and histogram do not depend on member order") {
    const GaParams p = make_params(6, 2, 12, 0.5, 1.0);
    Rng rng(2);
    Population pop = init_uniform(p, rng);
    const SpeciesCensus before = census(pop);
    const HammingHistogram hb = hamming_histogram(pop);
    std::reverse(pop.members.begin(), pop.members.end());
    std::swap(pop.members[0], pop.members[5]);
    const SpeciesCensus after = census(pop);
    const HammingHistogram ha = hamming_histogram(pop);
    CHECK(after.largest_size == before.largest_size);
    CHECK(after.species_count == before.species_count);
    for (const auto& [g, c] : before.classes) {
        CHECK(after.count_of(g) == c);
    }
    CHECK(ha.counts == hb.counts);
}

TEST_CASE("SpeciesTracker follows a run and equals a full census") {
    const GaParams p = make_params(10, 2, 10, 0.5, 1.0);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng = make_rng(seed, 0);
        Population pop = init_uniform(p, rng);
        const Population initial = pop;
        SpeciesTracker tracker(pop);
        std::vector<StepTrace> traces;
        std::vector<std::size_t> full = {naive_largest(pop)};
        for (int t = 0; t < 1000; ++t) {
            const StepResult s = ga_step(pop, p, rng);
            tracker.apply(s);
            traces.push_back(s.trace);
            full.push_back(naive_largest(pop));
            REQUIRE(tracker.largest() == full.back());
            REQUIRE(tracker.species_count() == census(pop).species_count);
            REQUIRE(tracker.total() == 10);
        }
        const auto series = largest_species_series(traces, initial);
        REQUIRE(series == full);
        for (std::size_t i = 0; i < series.size(); ++i) {
            REQUIRE(series[i] >= 1);
            REQUIRE(series[i] <= 10);
            if (i > 0) {
                REQUIRE(std::abs(static_cast<long>(series[i]) - static_cast<long>(series[i - 1])) <= 1);
            }
        }
    }
}

TEST_CASE("largest_species_series") {
    const GaParams p = make_params(20, 3, 6, 0.0, 1.0);
    Rng rng(3);
    Population pop = init_monomorphic_plateau(p, rng);
    const Population initial = pop;

    SUBCASE("no-op steps give a constant series") {
        std::vector<StepTrace> traces;
        Population cur = initial;
        for (int t = 0; t < 3; ++t) {
            StepTrace tr;
            tr.t = static_cast<std::uint64_t>(t);
            tr.event = EventClass::B;
            tr.parent_count = 1;
            tr.offspring = Genotype(20);
            tr.offspring_fitness = 3;
            tr.removed_index = 6;
            traces.push_back(tr);
        }
        CHECK(largest_species_series(traces, initial) == std::vector<std::size_t>(4, 6));
    }
    SUBCASE("inconsistent traces are rejected") {
        std::vector<StepTrace> traces;
        for (int t = 0; t < 50; ++t) {
            traces.push_back(ga_step(pop, p, rng).trace);
        }
        auto skipped = traces;
        skipped.erase(skipped.begin() + 10);
        CHECK_THROWS_AS(largest_species_series(skipped, initial), IntegrityError);
        auto bad_index = traces;
        bad_index[3].removed_index = 99;
        CHECK_THROWS_AS(largest_species_series(bad_index, initial), IntegrityError);
    }
}

TEST_CASE("tracker rejects removing an absent genotype") {
    const GaParams p = make_params(8, 2, 3, 0.5, 1.0);
    Rng rng(1);
    SpeciesTracker t(init_monomorphic_plateau(p, rng));
    CHECK_THROWS_AS(t.remove(Genotype::all_ones(8)), IntegrityError);
}

TEST_CASE("hamming_histogram examples") {
    const GaParams p = make_params(15, 3, 9, 0.5, 1.0);
    Rng rng(4);
    const HammingHistogram mono = hamming_histogram(init_monomorphic_plateau(p, rng));
    CHECK(mono.total_pairs == 36);
    CHECK(mono.counts[0] == 36);
    CHECK(mono.relative(0) == 1.0);

    const Population two =
        Population::from_genotypes(std::vector<Genotype>{Genotype::from_string("110011"), Genotype::from_string("001111")}, 2);
    const HammingHistogram h = hamming_histogram(two);
    CHECK(h.total_pairs == 1);
    CHECK(h.counts[4] == 1);
    CHECK(std::count(h.counts.begin(), h.counts.end(), 0U) == static_cast<long>(h.counts.size()) - 1);

    const Population single = Population::from_genotypes(std::vector<Genotype>{Genotype(4)}, 1);
    CHECK_THROWS_AS(hamming_histogram(single), UsageError);
}

TEST_CASE("mean pairwise distance of uniform populations is n/2") {
    constexpr std::size_t n = 30;
    constexpr std::size_t mu = 10;
    constexpr int kSeeds = 100;
    // Per bit, with m ones among mu members, the fraction of disagreeing pairs
    // is m (mu - m) / C(mu, 2) with m ~ Bin(mu, 1/2).
    const double pairs = mu * (mu - 1) / 2.0;
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t m = 0; m <= mu; ++m) {
        const double w = std::exp(std::lgamma(mu + 1.0) - std::lgamma(m + 1.0) - std::lgamma(mu - m + 1.0)) /
                         std::pow(2.0, static_cast<double>(mu));
        const double f = static_cast<double>(m * (mu - m)) / pairs;
        mean += w * f;
        second += w * f * f;
    }
    CHECK(mean == doctest::Approx(0.5));
    const double sigma = std::sqrt(n * (second - mean * mean) / kSeeds);

    const GaParams p = make_params(n, 3, mu, 0.5, 1.0);
    double total = 0.0;
    for (int s = 0; s < kSeeds; ++s) {
        Rng rng = make_rng(77, static_cast<std::uint64_t>(s));
        total += hamming_histogram(init_uniform(p, rng)).mean_distance();
    }
    CHECK(within_sigma(total / kSeeds, 15.0, sigma));
}

TEST_CASE("plateau populations only show even distances") {
    const GaParams p = make_params(40, 4, 12, 1.0, 1.0);
    Rng rng(6);
    Population pop = init_monomorphic_plateau(p, rng);
    for (int t = 0; t < 3000; ++t) {
        ga_step(pop, p, rng);
        const HammingHistogram h = hamming_histogram(pop);
        REQUIRE(h.total_pairs == 66);
        for (std::size_t d = 1; d < h.counts.size(); d += 2) {
            REQUIRE(h.counts[d] == 0);
        }
        for (std::size_t d = 2 * 4 + 1; d < h.counts.size(); ++d) {
            REQUIRE(h.counts[d] == 0);
        }
        if (census(pop).species_count > 1) {
            REQUIRE(h.counts[0] < h.total_pairs);
        }
    }
}
