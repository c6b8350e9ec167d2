#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "polysched/rational.hpp"

namespace polysched {

// Seeded generator with platform-independent draws (the std distributions
// are implementation-defined, the engine is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw InvalidInput("empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(bits());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t r;
        do r = bits();
        while (r >= limit);
        return lo + static_cast<std::int64_t>(r % span);
    }

    // True with probability p in [0, 1].
    bool bernoulli(const Rational& p) {
        if (p <= 0) return false;
        if (p >= 1) return true;
        const std::int64_t d = to_i64(den(p)), n = to_i64(num(p));
        return uniform(0, d - 1) < n;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, i - 1))]);
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v.at(static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1)));
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace polysched
