#pragma once

#include "jumpga/genotype.hpp"
#include "jumpga/rng.hpp"

namespace jumpga {

/// Uniform crossover: each output bit comes from `a` or `b` with probability 1/2.
/// Consumes exactly one 64-bit draw per word. Throws UsageError on length mismatch.
Genotype uniform_crossover(const Genotype& a, const Genotype& b, Rng& rng);

/// In-place variant writing into `out` (resized as needed).
void uniform_crossover_into(const Genotype& a, const Genotype& b, Genotype& out, Rng& rng);

/// Standard bit mutation: flips every bit independently with probability p_m.
Genotype standard_bit_mutation(const Genotype& g, double p_m, Rng& rng);

/// Mutates `g` in place and returns the number of flipped bits.
///
/// For p_m in (0,1) flip positions are found by geometric skipping, so the
/// cost is proportional to the number of flips plus one. p_m = 0 draws
/// nothing; p_m = 1 complements without drawing.
std::size_t mutate_in_place(Genotype& g, double p_m, Rng& rng);

} // namespace jumpga
