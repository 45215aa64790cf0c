// Counter-mode seeded RNG streams. Every Monte-Carlo routine in the toolkit
// draws from a stream derived from (master_seed, replicate, stage, shell),
// so results are reproducible across runs and across thread counts.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace hlp {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_u64(std::uint64_t h, std::uint64_t w) {
    std::uint64_t s = h ^ (w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2));
    return splitmix64_next(s);
}

// Splitmix-based stream. Deliberately avoids std:: distributions so that
// draws are identical across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t u64() { return splitmix64_next(state_); }

    // uniform in [0, 1)
    double u01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1)
    double u01_open() {
        return (static_cast<double>(u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // uniform integer in [0, bound) by rejection
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound == 0");
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = u64();
            if (r >= threshold) return r % bound;
        }
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * u01() - 1.0;
            v = 2.0 * u01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    double exponential(double rate) { return -std::log(u01_open()) / rate; }

    // number of failures before the first success in Bernoulli(p) trials;
    // saturates at uint64 max when p is (numerically) zero
    std::uint64_t geometric_skip(double p) {
        if (p >= 1.0) return 0;
        if (p <= 0.0) return std::numeric_limits<std::uint64_t>::max();
        double g = std::floor(std::log(u01_open()) / std::log1p(-p));
        if (!(g < 9.2e18)) return std::numeric_limits<std::uint64_t>::max();
        return static_cast<std::uint64_t>(g);
    }

    // exact Binomial(n, p) via geometric skips; O(np) expected time
    std::uint64_t binomial(std::uint64_t n, double p) {
        if (p <= 0.0 || n == 0) return 0;
        if (p >= 1.0) return n;
        std::uint64_t count = 0;
        std::uint64_t pos = geometric_skip(p);
        while (pos < n) {
            ++count;
            std::uint64_t g = geometric_skip(p);
            if (g >= n - pos - 1) break;  // no further success fits
            pos += 1 + g;
        }
        return count;
    }

    std::uint64_t poisson(double mean) {
        std::uint64_t total = 0;
        while (mean > 30.0) {  // split large means to keep Knuth's loop short
            total += poisson_small(30.0);
            mean -= 30.0;
        }
        return total + poisson_small(mean);
    }

  private:
    std::uint64_t poisson_small(double mean) {
        if (mean <= 0.0) return 0;
        double limit = std::exp(-mean);
        double prod = 1.0;
        std::uint64_t k = 0;
        do {
            ++k;
            prod *= u01_open();
        } while (prod > limit);
        return k - 1;
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Stage tags used in stream derivation.
enum class Stage : std::uint32_t { Minus = 0, Critical = 1, Sprinkle = 2 };

struct RngPolicy {
    std::uint64_t master_seed = 0;

    Rng stream(std::uint64_t replicate, std::uint32_t stage,
               std::uint32_t shell) const {
        std::uint64_t h = master_seed;
        h = mix_u64(h, replicate);
        h = mix_u64(h, stage);
        h = mix_u64(h, shell);
        return Rng(h);
    }

    Rng stream(std::uint64_t replicate, Stage stage, std::uint32_t shell) const {
        return stream(replicate, static_cast<std::uint32_t>(stage), shell);
    }
};

}  // namespace hlp
