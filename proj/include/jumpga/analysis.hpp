#pragma once

/// @file analysis.hpp
/// Closed-form probabilities and bounds for the (mu+1) GA on the Jump_k plateau,
/// plus an exact per-bit oracle for the "crossover then mutation gives the
/// optimum" event.
///
/// Bounds with unspecified O(.) remainders return their leading term together
/// with the unscaled remainder expression (`o_scale`); no constant is assumed
/// for the remainder.

#include <cstddef>
#include <string>

#include "jumpga/genotype.hpp"

namespace jumpga::analysis {

/// Parameters shared by the transition-probability bounds.
struct BoundInputs {
    std::size_t n = 100;
    std::size_t k = 3;
    std::size_t mu = 20;
    double chi = 1.0;
    double p_c = 0.5;
    /// Size of the tracked species, in [1, mu].
    std::size_t y = 10;
    /// Half the Hamming distance of the parents, in [0, k].
    std::size_t d = 1;
    /// Survival threshold fraction, in (1/2, 1).
    double lambda = 0.75;
};

/// 4^-d (1-p_m)^(n-k+d) p_m^(k-d): probability of the specific crossover +
/// mutation path from two plateau parents at distance 2d to the all-ones string.
/// Requires 0 <= d <= k <= n/2 and p_m in (0,1).
double lemma2_construction_probability(std::size_t n, std::size_t k, std::size_t d, double p_m);

/// Exact Pr[mutation(uniform_crossover(a, b)) == 1^n].
///
/// Position i contributes q_i (1-p_m) + (1-q_i) p_m where q_i is the chance
/// that the crossover bit is 1 (0, 1/2 or 1); the result is the product.
double exact_optimum_probability(const Genotype& a, const Genotype& b, double p_m);

struct LeadingTerm {
    double leading = 0.0;
    /// Unscaled expression multiplying the unknown O(.) constant.
    double o_scale = 0.0;
};

/// Upper bound on p+(y | A): (mu-y) y (mu+y) / (2 (mu+1) mu^2) (1-chi/n)^n,
/// with o_scale ((mu-y)/mu)^2 / n.
LeadingTerm rdrift_upper_leading_term(std::size_t y, std::size_t mu, double chi, std::size_t n);

/// Lower bound on p-(y | A) for y in [1, mu-1]:
/// y (mu-y) (mu (1 + chi/2) + y chi/2) / (2 (mu+1) mu^2) (1-chi/n)^n.
double ldrift_lower_bound(std::size_t y, std::size_t mu, double chi, std::size_t n);

struct MutationBounds {
    double p_plus_leading = 0.0;
    double p_minus_lower = 0.0;
    /// (mu-y)^2 / (n mu^2).
    double o_scale = 0.0;
};

/// Mutation-only transitions: both terms equal y (mu-y) / (mu (mu+1)) (1-chi/n)^n.
MutationBounds mutation_transition_bounds(std::size_t y, std::size_t mu, double chi, std::size_t n);

/// C = (2 lambda - 1)(1 + (1 + lambda) chi) / (256 e) * p_c.
double survival_constant(double lambda, double chi, double p_c);

/// t^2 exp(-b |eps| / (2 c^2)); not clamped to 1.
double drift_tail_bound(double t, double b, double epsilon, double c);

/// Parameters of the negative-drift tail used for the survival bound.
struct DriftParameters {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double epsilon = 0.0;
};

/// a = 0, b = (lambda - 1/2) mu, c = 1, eps = -(1 + (1+lambda) chi) p_c / (64 e).
DriftParameters survival_drift_parameters(double lambda, double chi, double p_c, std::size_t mu);

/// t^2 exp(-C mu), the survival tail for horizon t.
double survival_tail_bound(double t, double lambda, double chi, double p_c, std::size_t mu);

/// Expected-runtime expression with every suppressed constant set to 1:
/// n sqrt(k) (mu ln mu + ln n) + (mu n + mu^2 ln mu) / (n^(1-k) min(e^(C mu/2), n^(k-1))) + n^(k-1)
/// with C = survival_constant(3/4, chi, p_c). Order-of-magnitude reference only.
double runtime_bound(std::size_t n, std::size_t k, std::size_t mu, double chi, double p_c);

/// Decimal log of runtime_bound, usable where the value overflows a double.
double runtime_bound_log10(std::size_t n, std::size_t k, std::size_t mu, double chi, double p_c);

} // namespace jumpga::analysis
