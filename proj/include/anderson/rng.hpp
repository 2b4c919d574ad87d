#pragma once

#include <cstdint>
#include <span>

namespace anderson {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Fixed forever: every
/// stored ensemble depends on it bit for bit.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds a further word into a running key.
constexpr std::uint64_t mix_key(std::uint64_t key, std::uint64_t word) noexcept {
    return splitmix64(key ^ splitmix64(word));
}

/// Key of a lattice site, a function of its coordinates only (not of any box).
inline std::uint64_t site_key(std::span<const int> site) noexcept {
    std::uint64_t key = 0x5175a8d1ce6e0c3bULL ^ site.size();
    for (int c : site) {
        // zigzag so that negative coordinates map to distinct words
        const auto v = static_cast<std::int64_t>(c);
        key = mix_key(key, static_cast<std::uint64_t>((v << 1) ^ (v >> 63)));
    }
    return key;
}

/// Per-site stream key: hash(master_seed, sample_index, site).
inline std::uint64_t draw_key(std::uint64_t master_seed, std::uint64_t sample_index,
                              std::span<const int> site) noexcept {
    return mix_key(mix_key(splitmix64(master_seed), sample_index), site_key(site));
}

/// Maps 64 random bits to a double in the open interval (0, 1).
constexpr double to_unit_open(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Counter-based SplitMix64 stream. Each draw depends only on the key and
/// the draw position, so streams are reproducible across platforms.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t key) noexcept : state_(key) {}

    constexpr std::uint64_t next() noexcept {
        const std::uint64_t out = splitmix64(state_);
        state_ += 0x9e3779b97f4a7c15ULL;
        return out;
    }
    constexpr double uniform() noexcept { return to_unit_open(next()); }
    constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

}  // namespace anderson
