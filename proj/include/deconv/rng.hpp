#pragma once

#include <cstdint>
#include <random>

namespace deconv {

using Rng = std::mt19937_64;

//! SplitMix64 finaliser; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t combine(std::uint64_t a, std::uint64_t b)
{
  return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

//! Counter-based stream: the state depends only on (seed, cell, rep, stream),
//! never on the order in which replications are executed.
inline Rng make_stream(std::uint64_t seed,
                       std::uint64_t cell,
                       std::uint64_t rep,
                       std::uint64_t stream = 0)
{
  const std::uint64_t key = combine(combine(combine(seed, cell), rep), stream);
  std::seed_seq seq{ static_cast<std::uint32_t>(key),
                     static_cast<std::uint32_t>(key >> 32),
                     static_cast<std::uint32_t>(stream) };
  return Rng(seq);
}

//! Uniform on [0, 1) with 53 random bits, independent of the standard
//! library's distribution implementations.
inline double uniform01(Rng& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace deconv
