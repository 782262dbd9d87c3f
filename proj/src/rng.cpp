#include "loclab/rng.hpp"

#include <cmath>

namespace loclab {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53;
constexpr std::uint32_t kMulB = 0xCD9E8D57;
constexpr std::uint32_t kWeylA = 0x9E3779B9;
constexpr std::uint32_t kWeylB = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) noexcept {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(p);
    hi = static_cast<std::uint32_t>(p >> 32);
}

// Ziggurat tables for the standard normal (Marsaglia & Tsang 2000, in the
// double-precision layout of Doornik's ZIGNOR).
constexpr int kZigLayers = 128;
constexpr double kZigR = 3.442619855899;
constexpr double kZigV = 9.91256303526217e-3;

struct ZigguratTables {
    std::array<double, kZigLayers + 1> x{};
    std::array<double, kZigLayers> ratio{};

    ZigguratTables() {
        double f = std::exp(-0.5 * kZigR * kZigR);
        x[0] = kZigV / f;
        x[1] = kZigR;
        x[kZigLayers] = 0.0;
        for (int i = 2; i < kZigLayers; ++i) {
            x[i] = std::sqrt(-2.0 * std::log(kZigV / x[i - 1] + f));
            f = std::exp(-0.5 * x[i] * x[i]);
        }
        for (int i = 0; i < kZigLayers; ++i) ratio[i] = x[i + 1] / x[i];
    }
};

const ZigguratTables& zig() {
    static const ZigguratTables tables;
    return tables;
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t lo0, hi0, lo1, hi1;
        mulhilo(kMulA, ctr[0], lo0, hi0);
        mulhilo(kMulB, ctr[2], lo1, hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeylA;
        key[1] += kWeylB;
    }
    return ctr;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{0, substream, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {
    (void)zig();
}

void CounterStream::refill() noexcept {
    const auto out = Philox4x32::block(ctr_, key_);
    ++ctr_[0];
    buf_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    buf_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    buf_pos_ = 0;
}

std::uint64_t CounterStream::next_u64() noexcept {
    if (buf_pos_ == 2) refill();
    return buf_[buf_pos_++];
}

double CounterStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

namespace {
__extension__ using u128 = unsigned __int128;
}

std::uint64_t CounterStream::below(std::uint64_t bound) noexcept {
    std::uint64_t r = next_u64();
    u128 m = static_cast<u128>(r) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            r = next_u64();
            m = static_cast<u128>(r) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

bool CounterStream::bit() noexcept {
    if (bits_left_ == 0) {
        bits_ = next_u64();
        bits_left_ = 64;
    }
    const bool b = bits_ & 1u;
    bits_ >>= 1;
    --bits_left_;
    return b;
}

double CounterStream::normal_tail(bool negative) noexcept {
    double x, y;
    do {
        x = std::log(1.0 - uniform()) / kZigR;
        y = std::log(1.0 - uniform());
    } while (-2.0 * y < x * x);
    return negative ? x - kZigR : kZigR - x;
}

double CounterStream::normal() noexcept {
    const auto& t = zig();
    for (;;) {
        const std::uint64_t r = next_u64();
        const unsigned layer = r & 0x7F;
        const double u = 2.0 * (static_cast<double>(r >> 11) * 0x1.0p-53) - 1.0;
        if (std::fabs(u) < t.ratio[layer]) return u * t.x[layer];
        if (layer == 0) return normal_tail(u < 0.0);
        const double x = u * t.x[layer];
        const double f0 = std::exp(-0.5 * (t.x[layer] * t.x[layer] - x * x));
        const double f1 = std::exp(-0.5 * (t.x[layer + 1] * t.x[layer + 1] - x * x));
        if (f1 + uniform() * (f0 - f1) < 1.0) return x;
    }
}

}  // namespace loclab
