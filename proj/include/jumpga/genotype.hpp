#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jumpga {

/// Fixed-length bit string packed into 64-bit words.
///
/// Bit i lives in word i / 64 at position i % 64. Padding bits of the last
/// word are always zero, so word-wise popcount and XOR give exact counts.
class Genotype {
public:
    static constexpr std::size_t kWordBits = 64;

    Genotype() = default;

    /// All-zeros string of length n.
    explicit Genotype(std::size_t n) : n_(n), words_(word_count(n), 0) {}

    static Genotype all_ones(std::size_t n);

    /// Parses a string of '0'/'1' characters; character i becomes bit i.
    static Genotype from_string(std::string_view bits);

    static constexpr std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }

    void set(std::size_t i, bool value) {
        const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
        if (value) {
            words_[i / kWordBits] |= mask;
        } else {
            words_[i / kWordBits] &= ~mask;
        }
    }

    void flip(std::size_t i) { words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    /// Mask of the valid bits in the last word.
    std::uint64_t tail_mask() const {
        const std::size_t r = n_ % kWordBits;
        return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
    }

    std::string to_string() const;

    bool operator==(const Genotype&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// |g|_1, the number of one-bits.
inline std::size_t ones_count(const Genotype& g) {
    std::size_t total = 0;
    for (const std::uint64_t w : g.words()) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

/// Number of positions in which a and b differ. Throws UsageError on length mismatch.
std::size_t hamming_distance(const Genotype& a, const Genotype& b);

struct GenotypeHash {
    std::size_t operator()(const Genotype& g) const noexcept;
};

} // namespace jumpga
