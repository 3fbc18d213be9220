#pragma once

#include <cstdint>
#include <random>

namespace noma_sic {

using Rng = std::mt19937_64;

// Independent stream keyed by (master seed, point index, block index).
// The key is mixed through std::seed_seq, so any key maps to the same state
// on every run and every thread.
inline Rng make_substream(std::uint64_t master_seed, std::uint64_t point, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(point),       static_cast<std::uint32_t>(point >> 32),
                      static_cast<std::uint32_t>(block),       static_cast<std::uint32_t>(block >> 32),
                      0x6e6f6d61u};
    return Rng(seq);
}

}  // namespace noma_sic
