#pragma once

#include <cstdint>
#include <span>

namespace niouc::stats {

/// Counter-based random number stream (Philox4x32-10).
///
/// A stream is fully determined by (master_seed, stream_id): two streams
/// constructed with the same pair emit identical sequences no matter where or
/// when they are created, and streams with distinct ids draw from disjoint
/// counter blocks. This is what makes replications, macro-runs and solution
/// pairs independently seedable from concurrent tasks.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform draw on the open interval (0,1); never returns 0 or 1.
    double next_uniform();

    /// Standard normal via inverse-CDF (one uniform per draw).
    double next_normal();

    /// Exponential with the given rate (mean 1/rate).
    double next_exponential(double rate);

    /// Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape > 0.
    double next_gamma(double shape);

    /// Beta(a, b) from two gamma draws.
    double next_beta(double a, double b);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Number of 128-bit blocks consumed so far (the substream cursor).
    std::uint64_t cursor() const { return counter_; }

private:
    void refill();

    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t counter_ = 0;
    std::uint32_t key_[2];
    std::uint32_t buf_[4];
    int buf_pos_ = 4;
};

/// A contiguous block of stream ids under one master seed. Tasks indexed by
/// r own RngStream(seed, base + r); allocation of non-overlapping bases is
/// the caller's responsibility (see stream_layout in the harness).
struct StreamRange {
    std::uint64_t seed = 0;
    std::uint64_t base = 0;

    RngStream at(std::uint64_t r) const { return RngStream(seed, base + r); }
};

} // namespace niouc::stats
