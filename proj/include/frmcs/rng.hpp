#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace frmcs
{

using Rng = std::mt19937_64;

enum class Stream : std::uint64_t
{
    TrainStart = 1,
    Los = 2,
    Shadow = 3,
    Traffic = 4,
    HandoverTiming = 5,
};

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based substream key: a pure hash of (seed, stream, indices), so the
/// stream for one (realization, subsystem, ue, site) never depends on how many
/// other streams exist.
inline std::uint64_t substream_key(std::uint64_t seed, Stream stream,
                                   std::initializer_list<std::uint64_t> indices = {})
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
    for (std::uint64_t i : indices)
    {
        h = splitmix64(h ^ (i + 0x632be59bd9b4e019ULL));
    }
    return h;
}

inline Rng make_rng(std::uint64_t seed, Stream stream, std::initializer_list<std::uint64_t> indices = {})
{
    return Rng(substream_key(seed, stream, indices));
}

}   // namespace frmcs
