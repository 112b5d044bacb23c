#pragma once

#include <complex>
#include <cstdint>

namespace horn {

/// Counter-based splittable generator: each (seed, stream_index) pair keys an
/// independent sequence, so parallel and serial Monte-Carlo runs can hand one
/// stream to each sample index and produce the identical sample multiset.
///
/// Mixing is the splitmix64 finalizer applied to a keyed counter, following
/// Steele/Lea/Flood's splittable-generator construction.
class RngStream {
public:
    RngStream(uint64_t seed, uint64_t stream_index);

    uint64_t next_u64();

    /// Uniform in [0, 1).
    double uniform();

    /// Standard normal, Box-Muller with one cached value.
    double normal();

    /// Complex with independent N(0,1) real and imaginary parts.
    std::complex<double> complex_normal();

    uint64_t seed() const { return seed_; }
    uint64_t stream_index() const { return stream_; }

private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t key_;
    uint64_t counter_;
    double cached_normal_ = 0.0;
    bool have_cached_normal_ = false;
};

}  // namespace horn
