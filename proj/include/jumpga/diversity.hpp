#pragma once

/// @file diversity.hpp
/// Species (genotype class) bookkeeping and pairwise Hamming-distance histograms.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jumpga/ga.hpp"
#include "jumpga/genotype.hpp"

namespace jumpga {

struct SpeciesCensus {
    /// Genotype classes in order of first appearance in the population.
    std::vector<std::pair<Genotype, std::size_t>> classes;
    std::size_t largest_size = 0;
    std::size_t species_count = 0;

    /// Count of genotype g (0 when absent).
    std::size_t count_of(const Genotype& g) const;
};

SpeciesCensus census(const Population& pop);

/// Incrementally maintained class counts with O(1) access to the largest class.
class SpeciesTracker {
public:
    explicit SpeciesTracker(const Population& pop);

    void add(const Genotype& g);
    /// Throws IntegrityError when g is not present.
    void remove(const Genotype& g);

    /// Applies one step: the offspring enters, the evicted genotype leaves.
    void apply(const StepResult& step) {
        add(step.trace.offspring);
        remove(step.evicted);
    }

    std::size_t count_of(const Genotype& g) const;
    std::size_t largest() const { return largest_; }
    std::size_t species_count() const { return counts_.size(); }
    std::size_t total() const { return total_; }

private:
    std::unordered_map<Genotype, std::size_t, GenotypeHash> counts_;
    /// size_frequency_[s] = number of classes of size s.
    std::vector<std::size_t> size_frequency_;
    std::size_t largest_ = 0;
    std::size_t total_ = 0;
};

/// Largest class size before the first trace and after each trace, replayed
/// from `initial`. Throws IntegrityError when the traces do not form a valid
/// consecutive run starting at `initial`.
std::vector<std::size_t> largest_species_series(std::span<const StepTrace> traces, const Population& initial);

struct HammingHistogram {
    /// counts[d] = number of unordered pairs at distance d, d in [0, n].
    std::vector<std::uint64_t> counts;
    std::uint64_t total_pairs = 0;

    double relative(std::size_t d) const {
        return d < counts.size() ? static_cast<double>(counts[d]) / static_cast<double>(total_pairs) : 0.0;
    }
    double mean_distance() const;
};

/// Exact histogram over all mu(mu-1)/2 unordered pairs. Requires mu >= 2.
HammingHistogram hamming_histogram(const Population& pop);

} // namespace jumpga
