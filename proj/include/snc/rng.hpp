#ifndef SNC_RNG_HPP
#define SNC_RNG_HPP

#include <cstdint>
#include <random>

namespace snc {

// Deterministic random numbers, generator "mt19937_64/v1". std distributions
// are avoided on purpose: their output is implementation-defined, and reports
// must replay bit-for-bit anywhere.

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed of substream `index` under a master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ull * (index + 1));
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1): top 53 bits of the engine output.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

} // namespace snc

#endif
