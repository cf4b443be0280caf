#pragma once

#include <boost/random/mersenne_twister.hpp>

#include <cstdint>
#include <initializer_list>

namespace bitpin {

struct Seed {
    std::uint64_t value = 0;
    friend bool operator==(Seed, Seed) = default;
};

/// Child streams derived from one problem seed. Each generated artifact
/// draws from its own stream so any one of them can be regenerated alone.
enum class Stream : std::uint64_t {
    signal = 1,
    matrix = 2,
    noise = 3,
    flips = 4,
};

/// 64-bit finalizer of the splitmix64 generator.
constexpr std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// child = splitmix64(parent ^ splitmix64(tag))
constexpr Seed derive(Seed parent, std::uint64_t tag)
{
    return Seed{splitmix64(parent.value ^ splitmix64(tag))};
}

constexpr Seed derive(Seed parent, Stream stream)
{
    return derive(parent, static_cast<std::uint64_t>(stream));
}

/// Folds a sequence of words into a seed, order-sensitive.
constexpr Seed derive(Seed parent, std::initializer_list<std::uint64_t> words)
{
    Seed s = parent;
    for (auto w : words) {
        s = derive(s, w);
    }
    return s;
}

/// The engine behind every generator. Boost's distributions are used on top
/// of it because their output is identical across standard libraries.
using Engine = boost::random::mt19937_64;

inline Engine make_engine(Seed seed)
{
    return Engine(seed.value);
}

}  // namespace bitpin
