#include "jumpga/rng.hpp"

#include <cmath>

namespace jumpga {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
        word = splitmix64(sm);
    }
}

namespace {

__extension__ using u128 = unsigned __int128;

} // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound <= 1) {
        return 0;
    }
    u128 m = static_cast<u128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<u128>(next()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t Rng::geometric_skip(double log1m_p, std::uint64_t cap) {
    // Pr[skip >= j] = Pr[1 - u <= (1-p)^j] = (1-p)^j.
    const double u = uniform01();
    const double skip = std::floor(std::log1p(-u) / log1m_p);
    if (!(skip < static_cast<double>(cap))) {
        return cap;
    }
    return static_cast<std::uint64_t>(skip);
}

void Rng::jump() {
    static constexpr std::array<std::uint64_t, 4> kJump = {
        0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
    std::array<std::uint64_t, 4> acc{};
    for (const std::uint64_t poly : kJump) {
        for (int b = 0; b < 64; ++b) {
            if (poly & (std::uint64_t{1} << b)) {
                for (std::size_t i = 0; i < acc.size(); ++i) {
                    acc[i] ^= state_[i];
                }
            }
            next();
        }
    }
    state_ = acc;
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    Rng rng(seed);
    for (std::uint64_t s = 0; s < stream; ++s) {
        rng.jump();
    }
    return rng;
}

} // namespace jumpga
