#include "niouc/stats/rng.hpp"

#include "niouc/stats/special.hpp"

#include <cmath>
#include <stdexcept>

namespace niouc::stats {

namespace {

// Philox4x32 round constants (Salmon et al., SC 2011).
constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;
constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(prod);
    hi = static_cast<std::uint32_t>(prod >> 32);
}

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mul_hi_lo(kMulA, ctr[0], lo0, hi0);
    mul_hi_lo(kMulB, ctr[2], lo1, hi1);
    const std::uint32_t out0 = hi1 ^ ctr[1] ^ key[0];
    const std::uint32_t out1 = lo1;
    const std::uint32_t out2 = hi0 ^ ctr[3] ^ key[1];
    const std::uint32_t out3 = lo0;
    ctr[0] = out0;
    ctr[1] = out1;
    ctr[2] = out2;
    ctr[3] = out3;
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
    key_[0] = static_cast<std::uint32_t>(master_seed);
    key_[1] = static_cast<std::uint32_t>(master_seed >> 32);
}

void RngStream::refill() {
    std::uint32_t ctr[4] = {
        static_cast<std::uint32_t>(counter_),
        static_cast<std::uint32_t>(counter_ >> 32),
        static_cast<std::uint32_t>(stream_id_),
        static_cast<std::uint32_t>(stream_id_ >> 32),
    };
    std::uint32_t key[2] = {key_[0], key_[1]};
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        philox_round(ctr, key);
    }
    buf_[0] = ctr[0];
    buf_[1] = ctr[1];
    buf_[2] = ctr[2];
    buf_[3] = ctr[3];
    buf_pos_ = 0;
    ++counter_;
}

std::uint64_t RngStream::next_u64() {
    if (buf_pos_ >= 3) {
        // Need two fresh 32-bit words; drop any single leftover word so that
        // a u64 never straddles blocks in a position-dependent way.
        refill();
    }
    const std::uint64_t lo = buf_[buf_pos_];
    const std::uint64_t hi = buf_[buf_pos_ + 1];
    buf_pos_ += 2;
    return (hi << 32) | lo;
}

double RngStream::next_uniform() {
    // 53 random bits, offset by half an ulp so the result lies in (0,1).
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() {
    return inverse_normal_cdf(next_uniform());
}

double RngStream::next_exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("next_exponential: rate must be positive");
    return -std::log(next_uniform()) / rate;
}

double RngStream::next_gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("next_gamma: shape must be positive");
    if (shape < 1.0) {
        // Boost from shape+1 (Marsaglia-Tsang section 6).
        const double u = next_uniform();
        return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double RngStream::next_beta(double a, double b) {
    const double ga = next_gamma(a);
    const double gb = next_gamma(b);
    return ga / (ga + gb);
}

} // namespace niouc::stats
