#pragma once

#include <array>
#include <cstdint>

#include "hamens/scenario.hpp"

namespace hamens {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Exposed for known-answer testing.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream.
///
/// The key is the master seed; the upper half of the counter is the stream
/// (realization) index and the lower half counts blocks within the stream,
/// so distinct stream indices never produce overlapping blocks.
class CounterRng
{
  public:
    CounterRng(std::uint64_t key, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform();
    /// Standard normal via Box-Muller.
    double normal();
    /// Draw from N(spec.mean, spec.variance).
    double gaussian(const GaussianSpec& spec);

    std::uint64_t stream() const noexcept { return stream_; }

  private:
    void refill();

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffered_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Independent, reproducible stream for one realization.
inline CounterRng seed_stream(std::uint64_t master_seed, std::uint64_t realization_index)
{
    return CounterRng(master_seed, realization_index);
}

} // namespace hamens
