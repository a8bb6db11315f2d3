#include "jumpga/diversity.hpp"

#include <algorithm>
#include <string>

#include "jumpga/error.hpp"

namespace jumpga {

std::size_t SpeciesCensus::count_of(const Genotype& g) const {
    for (const auto& [genotype, count] : classes) {
        if (genotype == g) {
            return count;
        }
    }
    return 0;
}

SpeciesCensus census(const Population& pop) {
    SpeciesCensus out;
    std::unordered_map<Genotype, std::size_t, GenotypeHash> index;
    for (const auto& m : pop.members) {
        auto [it, inserted] = index.try_emplace(m.genotype, out.classes.size());
        if (inserted) {
            out.classes.emplace_back(m.genotype, 0);
        }
        ++out.classes[it->second].second;
    }
    out.species_count = out.classes.size();
    for (const auto& c : out.classes) {
        out.largest_size = std::max(out.largest_size, c.second);
    }
    return out;
}

SpeciesTracker::SpeciesTracker(const Population& pop) : size_frequency_(pop.size() + 2, 0) {
    for (const auto& m : pop.members) {
        add(m.genotype);
    }
}

void SpeciesTracker::add(const Genotype& g) {
    const std::size_t c = ++counts_[g];
    if (c >= size_frequency_.size()) {
        size_frequency_.resize(c + 1, 0);
    }
    if (c > 1) {
        --size_frequency_[c - 1];
    }
    ++size_frequency_[c];
    largest_ = std::max(largest_, c);
    ++total_;
}

void SpeciesTracker::remove(const Genotype& g) {
    auto it = counts_.find(g);
    if (it == counts_.end()) {
        throw IntegrityError("SpeciesTracker: removing a genotype that is not present");
    }
    const std::size_t c = it->second;
    --size_frequency_[c];
    if (c == 1) {
        counts_.erase(it);
    } else {
        --it->second;
        ++size_frequency_[c - 1];
    }
    if (c == largest_ && size_frequency_[c] == 0) {
        largest_ = c - 1;
    }
    --total_;
}

std::size_t SpeciesTracker::count_of(const Genotype& g) const {
    const auto it = counts_.find(g);
    return it == counts_.end() ? 0 : it->second;
}

std::vector<std::size_t> largest_species_series(std::span<const StepTrace> traces, const Population& initial) {
    Population pop = initial;
    SpeciesTracker tracker(pop);
    const std::size_t mu = pop.size();
    std::vector<std::size_t> series;
    series.reserve(traces.size() + 1);
    series.push_back(tracker.largest());

    for (std::size_t s = 0; s < traces.size(); ++s) {
        const StepTrace& tr = traces[s];
        const std::string where = "trace " + std::to_string(s) + ": ";
        if (tr.t != initial.generation + s) {
            throw IntegrityError(where + "iteration index is not consecutive");
        }
        if (tr.removed_index > mu) {
            throw IntegrityError(where + "removed index out of range");
        }
        if (tr.parent_count < 1 || tr.parent_count > 2 || tr.parent_indices[0] >= mu ||
            (tr.parent_count == 2 && tr.parent_indices[1] >= mu)) {
            throw IntegrityError(where + "parent indices out of range");
        }
        if ((tr.parent_count == 2) == (tr.event == EventClass::B)) {
            throw IntegrityError(where + "parent count does not match the event class");
        }
        if (tr.offspring.size() != pop[0].size()) {
            throw IntegrityError(where + "offspring length mismatch");
        }
        Fitness worst = tr.offspring_fitness;
        for (const auto& m : pop.members) {
            worst = std::min(worst, m.fitness);
        }
        const Fitness removed_fitness =
            tr.removed_index == mu ? tr.offspring_fitness : pop.members[tr.removed_index].fitness;
        if (removed_fitness != worst) {
            throw IntegrityError(where + "removed individual does not have minimal fitness");
        }

        if (tr.removed_index < mu) {
            tracker.add(tr.offspring);
            tracker.remove(pop.members[tr.removed_index].genotype);
            pop.members[tr.removed_index] = {tr.offspring, tr.offspring_fitness};
        }
        series.push_back(tracker.largest());
    }
    return series;
}

double HammingHistogram::mean_distance() const {
    double sum = 0.0;
    for (std::size_t d = 0; d < counts.size(); ++d) {
        sum += static_cast<double>(d) * static_cast<double>(counts[d]);
    }
    return sum / static_cast<double>(total_pairs);
}

HammingHistogram hamming_histogram(const Population& pop) {
    const std::size_t mu = pop.size();
    if (mu < 2) {
        throw UsageError("hamming_histogram: need at least two individuals");
    }
    HammingHistogram h;
    h.counts.assign(pop[0].size() + 1, 0);
    for (std::size_t i = 0; i < mu; ++i) {
        for (std::size_t j = i + 1; j < mu; ++j) {
            ++h.counts[hamming_distance(pop[i], pop[j])];
        }
    }
    h.total_pairs = static_cast<std::uint64_t>(mu) * (mu - 1) / 2;
    return h;
}

} // namespace jumpga
