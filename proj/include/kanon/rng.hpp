#ifndef KANON_RNG_HPP
#define KANON_RNG_HPP

#include <cstdint>
#include <vector>

namespace kanon {

// SplitMix64. Self-contained so that seeded runs reproduce across platforms
// and standard library versions (std::uniform_int_distribution is not
// guaranteed to be portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold)
                return r % bound;
        }
    }

    // Uniform over {lo, ..., hi}.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    // First k elements of a uniform random permutation of v (partial
    // Fisher-Yates); v is reordered in place.
    template <typename T>
    void partial_shuffle(std::vector<T>& v, std::size_t k) {
        for (std::size_t i = 0; i < k && i + 1 < v.size(); ++i)
            std::swap(v[i], v[i + below(v.size() - i)]);
    }

private:
    std::uint64_t state_;
};

// Deterministic seed derivation for nested trial loops: identical inputs give
// identical streams regardless of how the loops are scheduled.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0) {
    Rng r(seed ^ (a * 0xd1342543de82ef95ULL) ^ (b * 0xaf251af3b0f025b5ULL) ^
          (c * 0x9e6c63d0a38c9f4dULL));
    return r.next();
}

} // namespace kanon

#endif
