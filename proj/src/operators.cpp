#include "jumpga/operators.hpp"

#include <cmath>

#include "jumpga/error.hpp"

namespace jumpga {

void uniform_crossover_into(const Genotype& a, const Genotype& b, Genotype& out, Rng& rng) {
    if (a.size() != b.size()) {
        throw UsageError("uniform_crossover: parent lengths differ");
    }
    if (out.size() != a.size()) {
        out = Genotype(a.size());
    }
    const auto wa = a.words();
    const auto wb = b.words();
    auto wo = out.words();
    for (std::size_t i = 0; i < wa.size(); ++i) {
        const std::uint64_t take_a = rng.next();
        wo[i] = (wa[i] & take_a) | (wb[i] & ~take_a);
    }
}

Genotype uniform_crossover(const Genotype& a, const Genotype& b, Rng& rng) {
    Genotype out(a.size());
    uniform_crossover_into(a, b, out, rng);
    return out;
}

std::size_t mutate_in_place(Genotype& g, double p_m, Rng& rng) {
    const std::size_t n = g.size();
    if (!(p_m > 0.0) || n == 0) {
        return 0;
    }
    if (p_m >= 1.0) {
        auto words = g.words();
        for (auto& w : words) {
            w = ~w;
        }
        words.back() &= g.tail_mask();
        return n;
    }
    const double log1m_p = std::log1p(-p_m);
    std::size_t flips = 0;
    std::size_t pos = 0;
    while (true) {
        const std::uint64_t skip = rng.geometric_skip(log1m_p, n);
        if (skip >= n - pos) {
            break;
        }
        pos += static_cast<std::size_t>(skip);
        g.flip(pos);
        ++flips;
        ++pos;
    }
    return flips;
}

Genotype standard_bit_mutation(const Genotype& g, double p_m, Rng& rng) {
    Genotype out = g;
    mutate_in_place(out, p_m, rng);
    return out;
}

} // namespace jumpga
