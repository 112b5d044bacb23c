#include "horn/rng.hpp"

#include <cmath>

namespace horn {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream_index)
    : seed_(seed), stream_(stream_index), counter_(0) {
    // Two mixing rounds decorrelate (seed, stream) pairs that differ in one bit.
    key_ = mix64(mix64(seed + kGolden) ^ (stream_index + 0xD1B54A32D192ED03ULL));
}

uint64_t RngStream::next_u64() {
    counter_ += kGolden;
    return mix64(counter_ ^ key_);
}

double RngStream::uniform() {
    // 53 high bits -> [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    if (have_cached_normal_) {
        have_cached_normal_ = false;
        return cached_normal_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * 3.14159265358979323846 * u2;
    cached_normal_ = r * std::sin(phi);
    have_cached_normal_ = true;
    return r * std::cos(phi);
}

std::complex<double> RngStream::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

}  // namespace horn
