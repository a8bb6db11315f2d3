#pragma once

#include <cstddef>
#include <cstdint>

#include "jumpga/genotype.hpp"

namespace jumpga {

using Fitness = std::int64_t;

/// Algorithm and problem parameters of one (mu+1) GA configuration.
///
/// The mutation rate is parameterised as chi / n. `k` may go up to n, which
/// keeps degenerate one-bit instances expressible; the bound evaluators in
/// analysis.hpp enforce their own tighter k <= n/2 precondition.
struct GaParams {
    std::size_t n = 100;
    std::size_t k = 3;
    std::size_t mu = 20;
    double p_c = 0.5;
    double chi = 1.0;
    std::uint64_t seed = 1;

    double p_m() const { return chi / static_cast<double>(n); }

    /// Throws UsageError when a field is out of range.
    void validate() const;
};

/// Jump_k: k + |x|_1 on the slope and at the optimum, n - |x|_1 inside the gap.
Fitness jump_fitness(const Genotype& g, std::size_t k);

/// Same as jump_fitness, from a precomputed ones count.
Fitness jump_fitness_from_ones(std::size_t ones, std::size_t n, std::size_t k);

} // namespace jumpga
