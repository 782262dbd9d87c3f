#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace loclab {

/// Philox4x32 counter-based generator with 10 rounds (Salmon et al., SC'11).
/// Stateless: each (counter, key) pair maps to one 128-bit block.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key) noexcept;
};

/// One independent random stream addressed by (seed, stream id, substream).
///
/// The seed is the Philox key; the stream id and substream occupy the upper
/// counter words, so streams never overlap and the draws of stream `i` do not
/// depend on how many other streams were consumed or in which order.
class CounterStream {
public:
    using result_type = std::uint64_t;

    CounterStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()() noexcept { return next_u64(); }

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Uniform integer in [0, bound), bound >= 1. Unbiased (Lemire).
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// Fair coin.
    bool bit() noexcept;

    /// Standard normal (ziggurat, 128 layers).
    double normal() noexcept;

private:
    void refill() noexcept;
    double normal_tail(bool negative) noexcept;

    Philox4x32::Key key_;
    Philox4x32::Counter ctr_;
    std::array<std::uint64_t, 2> buf_{};
    unsigned buf_pos_ = 2;
    std::uint64_t bits_ = 0;
    unsigned bits_left_ = 0;
};

}  // namespace loclab
