// Ultrametric addressing for the finite hierarchical ball and L-infinity
// geometry for the discrete torus.
//
// A vertex of the level-n ball is a flat integer in [0, L^{nd}) read as n
// base-L^d digits, level-1 digit least significant. The distance between two
// distinct vertices is L^i where i is the highest level at which their digits
// differ.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hlp {

// Checked integer power; throws on overflow past 2^63.
std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp);

struct LatticeSpec {
    std::uint32_t L = 2;
    std::uint32_t d = 1;
    std::uint32_t n = 1;
    std::uint64_t digit_base = 2;    // L^d
    std::uint64_t num_vertices = 2;  // L^{nd}

    static LatticeSpec create(std::uint32_t L, std::uint32_t d, std::uint32_t n);

    // L^i, valid for 0 <= i <= n
    std::uint64_t radius(std::uint32_t i) const;
    // |{x : ||x|| = L^i}| = (L^d - 1) L^{(i-1)d}
    std::uint64_t shell_size(std::uint32_t i) const;
    // |B(x, L^i)| = L^{id}
    std::uint64_t ball_size(std::uint32_t i) const;
    // number of unordered pairs at distance exactly L^i
    std::uint64_t pair_count(std::uint32_t i) const;
};

// L^i with i the highest differing digit level; 0 if a == b
std::uint64_t hier_distance(std::uint64_t a, std::uint64_t b,
                            const LatticeSpec& spec);

// the level i itself (0 if a == b); all edge probabilities are per level
std::uint32_t hier_level(std::uint64_t a, std::uint64_t b,
                         const LatticeSpec& spec);

// Bijection between [0, pair_count(i)) and unordered pairs at distance L^i.
// Mixed radix, most significant first: common digits above level i, then the
// unordered level-i digit pair (lexicographic a < b), then the free lower
// digits of each endpoint. The returned pair satisfies first < second.
std::pair<std::uint64_t, std::uint64_t> decode_pair(std::uint32_t i,
                                                    std::uint64_t k,
                                                    const LatticeSpec& spec);
std::uint64_t encode_pair(std::uint32_t i, std::uint64_t a, std::uint64_t b,
                          const LatticeSpec& spec);

// Among points y in shell i, how many are at distance exactly L^k from a
// fixed point x of shell i (1 <= k <= i). Closed form from the digit
// structure; used for the within-shell term of the triangle-type sum.
std::uint64_t same_shell_distance_count(std::uint32_t i, std::uint32_t k,
                                        const LatticeSpec& spec);

struct TorusSpec {
    std::uint32_t m = 2;  // side length
    std::uint32_t d = 1;
    std::uint64_t num_vertices = 2;  // m^d

    static TorusSpec create(std::uint32_t m, std::uint32_t d);

    std::uint32_t max_distance() const { return m / 2; }
};

// coordinates of a flat vertex index, level order
std::vector<std::uint32_t> torus_coords(std::uint64_t v, const TorusSpec& spec);
std::uint64_t torus_index(const std::vector<std::uint32_t>& coords,
                          const TorusSpec& spec);

// L-infinity distance with wraparound
std::uint32_t torus_distance(std::uint64_t a, std::uint64_t b,
                             const TorusSpec& spec);

// |{x : ||x||_T = k}| = (min(2k+1, m))^d - (min(2k-1, m))^d
std::uint64_t torus_class_count(std::uint32_t k, const TorusSpec& spec);

}  // namespace hlp
