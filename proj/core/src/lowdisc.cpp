#include "diagqmc/lowdisc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace diagqmc {

double radical_inverse(unsigned base, std::uint64_t index) {
    if (base < 2) {
        throw std::invalid_argument("radical_inverse: base must be >= 2, got " +
                                    std::to_string(base));
    }
    // Reflect digits into an integer numerator over base^k so the result is one
    // correctly rounded division. Digits beyond 64 bits of denominator recurse.
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / base;
    while (index > 0 && den <= limit) {
        num = num * base + index % base;
        index /= base;
        den *= base;
    }
    double r = static_cast<double>(num) / static_cast<double>(den);
    if (index > 0) {
        r += radical_inverse(base, index) / static_cast<double>(den);
    }
    // num / den < 1 exactly, but the division can round up for huge indices
    return std::min(r, std::nextafter(1.0, 0.0));
}

static PointSet halton_with_bases(std::size_t n, std::uint64_t start, std::array<unsigned, 2> b) {
    PointSet pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t idx = start + i;
        pts.push_back({radical_inverse(b[0], idx), radical_inverse(b[1], idx)});
    }
    return pts;
}

PointSet halton_points(std::size_t n, std::uint64_t start_index) {
    if (n < 1) throw std::invalid_argument("halton_points: n must be >= 1");
    if (start_index < 1) {
        throw std::invalid_argument("halton_points: start_index must be >= 1 (index 0 is the origin)");
    }
    return halton_with_bases(n, start_index, {2, 3});
}

namespace {

double shift_coordinate(double x, double s) {
    double y = x + s;
    if (y >= 1.0) y -= 1.0;
    if (y == 0.0) y = std::numeric_limits<double>::denorm_min();
    return y;
}

}  // namespace

PointSet cranley_patterson_shift(std::span<const Point2> points, Point2 shift) {
    if (!(shift.x1 >= 0.0 && shift.x1 < 1.0 && shift.x2 >= 0.0 && shift.x2 < 1.0)) {
        throw std::invalid_argument("cranley_patterson_shift: shift must lie in [0,1)^2");
    }
    PointSet out;
    out.reserve(points.size());
    for (const auto& p : points) {
        if (shift.x1 == 0.0 && shift.x2 == 0.0) {
            out.push_back(p);
        } else {
            out.push_back({shift_coordinate(p.x1, shift.x1), shift_coordinate(p.x2, shift.x2)});
        }
    }
    return out;
}

PointSet uniform_points(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("uniform_points: n must be >= 1");
    CounterRng rng(seed);
    PointSet pts;
    pts.reserve(n);
    while (pts.size() < n) {
        const double a = rng.next_open01();
        const double b = rng.next_open01();
        if (a == b) continue;
        pts.push_back({a, b});
    }
    return pts;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

void SequenceSpec::validate() const {
    if (kind == SequenceKind::halton) {
        if (bases[0] < 2 || bases[1] < 2 || std::gcd(bases[0], bases[1]) != 1) {
            throw std::invalid_argument("SequenceSpec: halton bases must be coprime and >= 2");
        }
        if (start_index < 1) {
            throw std::invalid_argument("SequenceSpec: halton start_index must be >= 1");
        }
    }
}

PointSet generate_square_points(const SequenceSpec& spec, std::size_t n) {
    spec.validate();
    if (n < 1) throw std::invalid_argument("generate_square_points: n must be >= 1");
    switch (spec.kind) {
        case SequenceKind::halton:
            return halton_with_bases(n, spec.start_index, spec.bases);
        case SequenceKind::uniform_random:
            return uniform_points(n, spec.seed);
        case SequenceKind::triangular_vdc:
            break;
    }
    throw std::invalid_argument("generate_square_points: triangular sequences need a triangle");
}

}  // namespace diagqmc
