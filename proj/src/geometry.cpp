#include "hlp/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace hlp {

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp) {
    unsigned __int128 r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        r *= base;
        if (r >= (static_cast<unsigned __int128>(1) << 63))
            throw std::invalid_argument("checked_pow: value exceeds 2^63");
    }
    return static_cast<std::uint64_t>(r);
}

LatticeSpec LatticeSpec::create(std::uint32_t L, std::uint32_t d,
                                std::uint32_t n) {
    if (L < 2) throw std::invalid_argument("LatticeSpec: L must be >= 2");
    if (d < 1) throw std::invalid_argument("LatticeSpec: d must be >= 1");
    if (n < 1) throw std::invalid_argument("LatticeSpec: n must be >= 1");
    LatticeSpec s;
    s.L = L;
    s.d = d;
    s.n = n;
    s.digit_base = checked_pow(L, d);
    s.num_vertices = checked_pow(s.digit_base, n);
    return s;
}

std::uint64_t LatticeSpec::radius(std::uint32_t i) const {
    if (i > n) throw std::invalid_argument("LatticeSpec::radius: level > n");
    return checked_pow(L, i);
}

std::uint64_t LatticeSpec::shell_size(std::uint32_t i) const {
    if (i < 1 || i > n)
        throw std::invalid_argument("LatticeSpec::shell_size: level out of range");
    return (digit_base - 1) * checked_pow(digit_base, i - 1);
}

std::uint64_t LatticeSpec::ball_size(std::uint32_t i) const {
    if (i > n)
        throw std::invalid_argument("LatticeSpec::ball_size: level > n");
    return checked_pow(digit_base, i);
}

std::uint64_t LatticeSpec::pair_count(std::uint32_t i) const {
    // N_i = L^{nd} * shell_size(i) / 2
    unsigned __int128 r =
        static_cast<unsigned __int128>(num_vertices) * shell_size(i) / 2;
    if (r >= (static_cast<unsigned __int128>(1) << 63))
        throw std::invalid_argument("pair_count: exceeds index width");
    return static_cast<std::uint64_t>(r);
}

std::uint32_t hier_level(std::uint64_t a, std::uint64_t b,
                         const LatticeSpec& spec) {
    std::uint32_t level = 0;
    std::uint32_t i = 1;
    const std::uint64_t B = spec.digit_base;
    while (a != b) {
        if (a % B != b % B) level = i;
        a /= B;
        b /= B;
        ++i;
    }
    return level;
}

std::uint64_t hier_distance(std::uint64_t a, std::uint64_t b,
                            const LatticeSpec& spec) {
    std::uint32_t i = hier_level(a, b, spec);
    return i == 0 ? 0 : checked_pow(spec.L, i);
}

namespace {

// lexicographic index of the unordered digit pair (a < b) among base B digits
std::uint64_t digit_pair_index(std::uint64_t a, std::uint64_t b,
                               std::uint64_t B) {
    // pairs (a, *) precede: a*B - a(a+1)/2
    return a * B - a * (a + 1) / 2 + (b - a - 1);
}

void digit_pair_decode(std::uint64_t idx, std::uint64_t B, std::uint64_t& a,
                       std::uint64_t& b) {
    // invert idx = a*B - a(a+1)/2 + (b-a-1) via the quadratic formula,
    // then correct for rounding
    double fa = (2.0 * static_cast<double>(B) - 1.0 -
                 std::sqrt((2.0 * static_cast<double>(B) - 1.0) *
                               (2.0 * static_cast<double>(B) - 1.0) -
                           8.0 * static_cast<double>(idx))) /
                2.0;
    std::uint64_t cand = fa > 0 ? static_cast<std::uint64_t>(fa) : 0;
    if (cand > 0) --cand;  // start one low, walk up
    while (cand + 1 < B && digit_pair_index(cand + 1, cand + 2, B) <= idx)
        ++cand;
    a = cand;
    b = a + 1 + (idx - digit_pair_index(a, a + 1, B));
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> decode_pair(std::uint32_t i,
                                                    std::uint64_t k,
                                                    const LatticeSpec& spec) {
    if (i < 1 || i > spec.n)
        throw std::invalid_argument("decode_pair: level out of range");
    if (k >= spec.pair_count(i))
        throw std::invalid_argument("decode_pair: index out of range");
    const std::uint64_t B = spec.digit_base;
    const std::uint64_t low = checked_pow(B, i - 1);  // free lower digits
    const std::uint64_t npairs = B * (B - 1) / 2;

    std::uint64_t lb = k % low;
    k /= low;
    std::uint64_t la = k % low;
    k /= low;
    std::uint64_t pidx = k % npairs;
    std::uint64_t high = k / npairs;

    std::uint64_t da, db;
    digit_pair_decode(pidx, B, da, db);

    const std::uint64_t blocki = low * B;  // B^i
    std::uint64_t a = high * blocki + da * low + la;
    std::uint64_t b = high * blocki + db * low + lb;
    return {a, b};
}

std::uint64_t encode_pair(std::uint32_t i, std::uint64_t a, std::uint64_t b,
                          const LatticeSpec& spec) {
    if (hier_level(a, b, spec) != i)
        throw std::invalid_argument("encode_pair: pair not at the given level");
    const std::uint64_t B = spec.digit_base;
    const std::uint64_t low = checked_pow(B, i - 1);
    const std::uint64_t npairs = B * (B - 1) / 2;
    const std::uint64_t blocki = low * B;

    std::uint64_t da = (a / low) % B;
    std::uint64_t db = (b / low) % B;
    std::uint64_t la = a % low;
    std::uint64_t lb = b % low;
    if (da > db) {
        std::swap(da, db);
        std::swap(la, lb);
    }
    std::uint64_t high = a / blocki;
    std::uint64_t pidx = digit_pair_index(da, db, B);
    return ((high * npairs + pidx) * low + la) * low + lb;
}

std::uint64_t same_shell_distance_count(std::uint32_t i, std::uint32_t k,
                                        const LatticeSpec& spec) {
    if (i < 1 || i > spec.n || k < 1 || k > i)
        throw std::invalid_argument("same_shell_distance_count: bad levels");
    // For x with ||x|| = L^i: y at distance L^k < L^i keeps ||y|| = L^i, so
    // the count is the full shell of radius L^k around x. At distance L^i the
    // ball of radius L^{i-1} around x is excluded from shell i.
    if (k < i) return spec.shell_size(k);
    return spec.shell_size(i) - checked_pow(spec.digit_base, i - 1);
}

TorusSpec TorusSpec::create(std::uint32_t m, std::uint32_t d) {
    if (m < 2) throw std::invalid_argument("TorusSpec: m must be >= 2");
    if (d < 1) throw std::invalid_argument("TorusSpec: d must be >= 1");
    TorusSpec s;
    s.m = m;
    s.d = d;
    s.num_vertices = checked_pow(m, d);
    return s;
}

std::vector<std::uint32_t> torus_coords(std::uint64_t v, const TorusSpec& spec) {
    std::vector<std::uint32_t> c(spec.d);
    for (std::uint32_t j = 0; j < spec.d; ++j) {
        c[j] = static_cast<std::uint32_t>(v % spec.m);
        v /= spec.m;
    }
    return c;
}

std::uint64_t torus_index(const std::vector<std::uint32_t>& coords,
                          const TorusSpec& spec) {
    std::uint64_t v = 0;
    for (std::uint32_t j = spec.d; j-- > 0;) v = v * spec.m + coords[j] % spec.m;
    return v;
}

std::uint32_t torus_distance(std::uint64_t a, std::uint64_t b,
                             const TorusSpec& spec) {
    std::uint32_t dist = 0;
    for (std::uint32_t j = 0; j < spec.d; ++j) {
        std::uint32_t ca = static_cast<std::uint32_t>(a % spec.m);
        std::uint32_t cb = static_cast<std::uint32_t>(b % spec.m);
        a /= spec.m;
        b /= spec.m;
        std::uint32_t diff = ca > cb ? ca - cb : cb - ca;
        diff = std::min(diff, spec.m - diff);
        dist = std::max(dist, diff);
    }
    return dist;
}

std::uint64_t torus_class_count(std::uint32_t k, const TorusSpec& spec) {
    if (k < 1 || k > spec.m / 2)
        throw std::invalid_argument("torus_class_count: k out of range");
    auto cube = [&](std::uint32_t r) {
        std::uint64_t side = std::min<std::uint64_t>(2ULL * r + 1, spec.m);
        return checked_pow(side, spec.d);
    };
    return cube(k) - cube(k - 1);
}

}  // namespace hlp
