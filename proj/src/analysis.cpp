#include "jumpga/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "jumpga/error.hpp"

namespace jumpga::analysis {

namespace {

constexpr double kE = std::numbers::e;

// Beyond these sizes n^(-k+d)-style products leave the normal double range.
bool use_log_space(std::size_t n, std::size_t k_minus_d) { return k_minus_d >= 8 || n >= 10000; }

double no_flip_probability(double chi, std::size_t n) {
    return std::pow(1.0 - chi / static_cast<double>(n), static_cast<double>(n));
}

void require_species_size(std::size_t y, std::size_t mu, const char* who) {
    if (mu < 2) {
        throw UsageError(std::string(who) + ": mu must be at least 2");
    }
    if (y < 1 || y > mu) {
        throw UsageError(std::string(who) + ": y must lie in [1, mu]");
    }
}

void require_rate(double chi, std::size_t n, const char* who) {
    if (n == 0 || !(chi >= 0.0) || chi > static_cast<double>(n)) {
        throw UsageError(std::string(who) + ": need n >= 1 and 0 <= chi <= n");
    }
}

} // namespace

double lemma2_construction_probability(std::size_t n, std::size_t k, std::size_t d, double p_m) {
    if (d > k || 2 * k > n) {
        throw UsageError("lemma2_construction_probability: need 0 <= d <= k <= n/2");
    }
    if (!(p_m > 0.0 && p_m < 1.0)) {
        throw UsageError("lemma2_construction_probability: p_m must lie in (0, 1)");
    }
    const auto dd = static_cast<double>(d);
    const auto keep = static_cast<double>(n - k + d);
    const auto flip = static_cast<double>(k - d);
    if (use_log_space(n, k - d)) {
        return std::exp(-dd * std::log(4.0) + keep * std::log1p(-p_m) + flip * std::log(p_m));
    }
    return std::pow(0.25, dd) * std::pow(1.0 - p_m, keep) * std::pow(p_m, flip);
}

double exact_optimum_probability(const Genotype& a, const Genotype& b, double p_m) {
    if (a.size() != b.size()) {
        throw UsageError("exact_optimum_probability: parent lengths differ");
    }
    if (!(p_m >= 0.0 && p_m <= 1.0)) {
        throw UsageError("exact_optimum_probability: p_m must lie in [0, 1]");
    }
    // Group positions by q_i: both parents 1 (q=1), both 0 (q=0), differing (q=1/2).
    std::size_t both_one = 0;
    std::size_t differ = 0;
    const auto wa = a.words();
    const auto wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) {
        both_one += static_cast<std::size_t>(std::popcount(wa[i] & wb[i]));
        differ += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
    }
    const std::size_t both_zero = a.size() - both_one - differ;

    const double keep_factor = 1.0 - p_m;
    const double flip_factor = p_m;
    const double half_factor = 0.5 * (1.0 - p_m) + 0.5 * p_m;
    if (use_log_space(a.size(), both_zero) && p_m > 0.0 && p_m < 1.0) {
        return std::exp(static_cast<double>(both_one) * std::log1p(-p_m) +
                        static_cast<double>(both_zero) * std::log(p_m) +
                        static_cast<double>(differ) * std::log(half_factor));
    }
    return std::pow(keep_factor, static_cast<double>(both_one)) * std::pow(flip_factor, static_cast<double>(both_zero)) *
           std::pow(half_factor, static_cast<double>(differ));
}

LeadingTerm rdrift_upper_leading_term(std::size_t y, std::size_t mu, double chi, std::size_t n) {
    require_species_size(y, mu, "rdrift_upper_leading_term");
    require_rate(chi, n, "rdrift_upper_leading_term");
    const auto m = static_cast<double>(mu);
    const auto yy = static_cast<double>(y);
    LeadingTerm out;
    out.leading = (m - yy) * yy * (m + yy) / (2.0 * (m + 1.0) * m * m) * no_flip_probability(chi, n);
    const double frac = (m - yy) / m;
    out.o_scale = frac * frac / static_cast<double>(n);
    return out;
}

double ldrift_lower_bound(std::size_t y, std::size_t mu, double chi, std::size_t n) {
    require_species_size(y, mu, "ldrift_lower_bound");
    require_rate(chi, n, "ldrift_lower_bound");
    if (y == mu) {
        throw UsageError("ldrift_lower_bound: y must lie in [1, mu-1]");
    }
    const auto m = static_cast<double>(mu);
    const auto yy = static_cast<double>(y);
    return yy * (m - yy) * (m * (1.0 + 0.5 * chi) + 0.5 * yy * chi) / (2.0 * (m + 1.0) * m * m) *
           no_flip_probability(chi, n);
}

MutationBounds mutation_transition_bounds(std::size_t y, std::size_t mu, double chi, std::size_t n) {
    require_species_size(y, mu, "mutation_transition_bounds");
    require_rate(chi, n, "mutation_transition_bounds");
    const auto m = static_cast<double>(mu);
    const auto yy = static_cast<double>(y);
    const double term = yy * (m - yy) / (m * (m + 1.0)) * no_flip_probability(chi, n);
    return {term, term, (m - yy) * (m - yy) / (static_cast<double>(n) * m * m)};
}

double survival_constant(double lambda, double chi, double p_c) {
    if (!(lambda > 0.5 && lambda < 1.0)) {
        throw UsageError("survival_constant: lambda must lie in (1/2, 1)");
    }
    if (!(chi > 0.0)) {
        throw UsageError("survival_constant: chi must be positive");
    }
    if (!(p_c > 0.0 && p_c <= 1.0)) {
        throw UsageError("survival_constant: p_c must lie in (0, 1]");
    }
    return (2.0 * lambda - 1.0) * (1.0 + (1.0 + lambda) * chi) / (256.0 * kE) * p_c;
}

double drift_tail_bound(double t, double b, double epsilon, double c) {
    if (!(b > 0.0)) {
        throw UsageError("drift_tail_bound: b must be positive");
    }
    if (!(epsilon < 0.0)) {
        throw UsageError("drift_tail_bound: epsilon must be negative");
    }
    if (!(c > 0.0 && c < b)) {
        throw UsageError("drift_tail_bound: c must lie in (0, b)");
    }
    if (!(t >= 0.0)) {
        throw UsageError("drift_tail_bound: t must be non-negative");
    }
    return t * t * std::exp(-b * std::fabs(epsilon) / (2.0 * c * c));
}

DriftParameters survival_drift_parameters(double lambda, double chi, double p_c, std::size_t mu) {
    survival_constant(lambda, chi, p_c);
    DriftParameters out;
    out.b = (lambda - 0.5) * static_cast<double>(mu);
    out.c = 1.0;
    out.epsilon = -(1.0 + (1.0 + lambda) * chi) / (64.0 * kE) * p_c;
    return out;
}

double survival_tail_bound(double t, double lambda, double chi, double p_c, std::size_t mu) {
    return t * t * std::exp(-survival_constant(lambda, chi, p_c) * static_cast<double>(mu));
}

namespace {

double runtime_bound_ln(std::size_t n, std::size_t k, std::size_t mu, double chi, double p_c) {
    if (mu < 2 || k < 3 || n < k) {
        throw UsageError("runtime_bound: need mu >= 2, k >= 3 and n >= k");
    }
    const auto nn = static_cast<double>(n);
    const auto kk = static_cast<double>(k);
    const auto m = static_cast<double>(mu);
    const double c = survival_constant(0.75, chi, p_c);
    const double log_n = std::log(nn);

    // Natural logs of the three summands.
    const double plateau = std::log(nn * std::sqrt(kk) * (m * std::log(m) + log_n));
    const double phase_cost = std::log(m * nn + m * m * std::log(m));
    const double log_min = std::min(c * m / 2.0, (kk - 1.0) * log_n);
    const double diverse = phase_cost + (kk - 1.0) * log_n - log_min;
    const double crossover = (kk - 1.0) * log_n;

    const double top = std::max({plateau, diverse, crossover});
    const double sum = std::exp(plateau - top) + std::exp(diverse - top) + std::exp(crossover - top);
    return top + std::log(sum);
}

} // namespace

double runtime_bound_log10(std::size_t n, std::size_t k, std::size_t mu, double chi, double p_c) {
    return runtime_bound_ln(n, k, mu, chi, p_c) / std::numbers::ln10;
}

double runtime_bound(std::size_t n, std::size_t k, std::size_t mu, double chi, double p_c) {
    return std::exp(runtime_bound_ln(n, k, mu, chi, p_c));
}

} // namespace jumpga::analysis
