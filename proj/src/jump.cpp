#include "jumpga/jump.hpp"

#include <string>

#include "jumpga/error.hpp"

namespace jumpga {

void GaParams::validate() const {
    if (n == 0) {
        throw UsageError("n must be positive");
    }
    if (k < 1 || k > n) {
        throw UsageError("k must satisfy 1 <= k <= n (got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    }
    if (mu < 2) {
        throw UsageError("mu must be at least 2");
    }
    if (!(p_c >= 0.0 && p_c <= 1.0)) {
        throw UsageError("p_c must lie in [0, 1]");
    }
    if (!(chi >= 0.0 && chi <= static_cast<double>(n))) {
        throw UsageError("chi must lie in [0, n] so that chi/n is a probability");
    }
}

Fitness jump_fitness_from_ones(std::size_t ones, std::size_t n, std::size_t k) {
    if (ones == n || ones + k <= n) {
        return static_cast<Fitness>(k + ones);
    }
    return static_cast<Fitness>(n - ones);
}

Fitness jump_fitness(const Genotype& g, std::size_t k) {
    if (k < 1 || k > g.size()) {
        throw UsageError("jump_fitness: k must satisfy 1 <= k <= n");
    }
    return jump_fitness_from_ones(ones_count(g), g.size(), k);
}

} // namespace jumpga
