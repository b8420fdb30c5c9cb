#pragma once

// Monte-Carlo hit counting over an axis-aligned box.
//
// Samples are generated in fixed-size chunks; chunk c draws from its own
// generator seeded with mix_seed({seed, c}). The hit count therefore does
// not depend on how chunks are distributed over threads, and the serial
// reference returns exactly the same count as the OpenMP kernel.

#include <cstdint>
#include <span>
#include <vector>

#include "sbfr/rng.hpp"

namespace sbfr {

inline constexpr std::uint64_t kSamplesPerChunk = 4096;

struct HitCount {
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    double fraction() const { return samples == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples); }
};

namespace detail {

// `inside` is called as inside(std::span<const double>) -> bool.
template <class Inside>
std::uint64_t count_chunk(std::span<const double> lo, std::span<const double> hi, std::uint64_t seed,
                          std::uint64_t chunk, std::uint64_t n, Inside& inside) {
    Rng rng(mix_seed({seed, chunk}));
    std::vector<double> x(lo.size());
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = uniform(rng, lo[i], hi[i]);
        if (inside(std::span<const double>(x))) ++hits;
    }
    return hits;
}

inline std::uint64_t chunk_size(std::uint64_t samples, std::uint64_t c) {
    const std::uint64_t begin = c * kSamplesPerChunk;
    return std::min(kSamplesPerChunk, samples - begin);
}

} // namespace detail

/// Serial reference. `make_inside()` builds one predicate.
template <class Factory>
HitCount count_hits_serial(std::span<const double> lo, std::span<const double> hi, std::uint64_t samples,
                           std::uint64_t seed, Factory&& make_inside) {
    auto inside = make_inside();
    const std::uint64_t chunks = (samples + kSamplesPerChunk - 1) / kSamplesPerChunk;
    HitCount out{0, samples};
    for (std::uint64_t c = 0; c < chunks; ++c) {
        out.hits += detail::count_chunk(lo, hi, seed, c, detail::chunk_size(samples, c), inside);
    }
    return out;
}

/// OpenMP kernel. `make_inside()` is called once per thread so predicates
/// may own scratch space.
template <class Factory>
HitCount count_hits_parallel(std::span<const double> lo, std::span<const double> hi, std::uint64_t samples,
                             std::uint64_t seed, Factory&& make_inside) {
    const auto chunks = static_cast<std::int64_t>((samples + kSamplesPerChunk - 1) / kSamplesPerChunk);
    std::uint64_t hits = 0;
#pragma omp parallel reduction(+ : hits)
    {
        auto inside = make_inside();
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t c = 0; c < chunks; ++c) {
            const auto uc = static_cast<std::uint64_t>(c);
            hits += detail::count_chunk(lo, hi, seed, uc, detail::chunk_size(samples, uc), inside);
        }
    }
    return HitCount{hits, samples};
}

} // namespace sbfr
