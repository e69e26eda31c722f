#ifndef STABSET_RNG_HPP
#define STABSET_RNG_HPP

#include <cstdint>

namespace stabset {

// Deterministic PRNG (splitmix64). std::mt19937 + distributions are not
// byte-stable across standard library implementations; reproducible traces
// require a fixed generator and fixed reduction.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n); n > 0
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    bool coin() { return (next() & 1u) != 0; }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

// Independent sub-streams from one request seed. Stream 1 feeds initial
// configurations, stream 2 feeds the scheduler; see README.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    Rng r(seed ^ (stream * 0xD1B54A32D192ED03ull));
    return r.next();
}

} // namespace stabset

#endif
