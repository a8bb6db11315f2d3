#include "jumpga/genotype.hpp"

#include "jumpga/error.hpp"

namespace jumpga {

Genotype Genotype::all_ones(std::size_t n) {
    Genotype g(n);
    for (auto& w : g.words_) {
        w = ~std::uint64_t{0};
    }
    if (!g.words_.empty()) {
        g.words_.back() &= g.tail_mask();
    }
    return g;
}

Genotype Genotype::from_string(std::string_view bits) {
    Genotype g(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            g.set(i, true);
        } else if (bits[i] != '0') {
            throw UsageError("genotype string may only contain '0' and '1'");
        }
    }
    return g;
}

std::string Genotype::to_string() const {
    std::string out(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
        if (get(i)) {
            out[i] = '1';
        }
    }
    return out;
}

std::size_t hamming_distance(const Genotype& a, const Genotype& b) {
    if (a.size() != b.size()) {
        throw UsageError("hamming_distance: genotype lengths differ (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
    }
    const auto wa = a.words();
    const auto wb = b.words();
    std::size_t total = 0;
    for (std::size_t i = 0; i < wa.size(); ++i) {
        total += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
    }
    return total;
}

std::size_t GenotypeHash::operator()(const Genotype& g) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ g.size();
    for (const std::uint64_t w : g.words()) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

} // namespace jumpga
