#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "diagqmc/point.hpp"

namespace diagqmc {

/// Van der Corput radical inverse: reflects the base-`base` digits of
/// `index` about the radix point. Throws std::invalid_argument for base < 2.
double radical_inverse(unsigned base, std::uint64_t index);

/// Halton points in bases (2,3) for indices start_index .. start_index+n-1.
/// start_index defaults to 1 so the origin is never produced.
PointSet halton_points(std::size_t n, std::uint64_t start_index = 1);

/// Cranley-Patterson rotation: every coordinate is shifted by `shift` modulo 1.
/// A coordinate that lands exactly on 0 is replaced by the smallest positive
/// double so that integrands singular on the lower edges stay finite.
PointSet cranley_patterson_shift(std::span<const Point2> points, Point2 shift);

/// Plain Monte Carlo points in (0,1)^2, reproducible from `seed`. Points on
/// the diagonal x1 == x2 are rejected and redrawn.
PointSet uniform_points(std::size_t n, std::uint64_t seed);

// Counter-based pseudo-random numbers (SplitMix64 finaliser over a counter).

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for an independent stream `stream` derived from a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Uniform on the open interval (0,1), 53-bit resolution.
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on [0,1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

enum class SequenceKind { halton, triangular_vdc, uniform_random };

struct SequenceSpec {
    SequenceKind kind = SequenceKind::halton;
    std::uint64_t start_index = 1;
    std::array<unsigned, 2> bases{2, 3};
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument when the invariants do not hold.
    void validate() const;
};

/// Points on the unit square for a halton or uniform-random spec. Triangle
/// sequences are generated with tvdc_points instead and are rejected here.
PointSet generate_square_points(const SequenceSpec& spec, std::size_t n);

}  // namespace diagqmc
