#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace sohp {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// every 128-bit counter maps to four 32-bit words under a 64-bit key, so
/// parallel workers draw from disjoint substreams by construction.
struct Philox4x32 {
  std::uint64_t seed = 0;

  std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter) const;

  /// Convenience counter layout: (particle, step, stream).
  std::array<std::uint32_t, 4> block(std::uint64_t particle, std::uint32_t step,
                                     std::uint32_t stream) const {
    return block({static_cast<std::uint32_t>(particle),
                  static_cast<std::uint32_t>(particle >> 32), step, stream});
  }
};

/// Uniform double in (0, 1) from one 32-bit word.
double uniform_open01(std::uint32_t w);

/// Box-Muller pair from two 32-bit words.
std::pair<double, double> normal_pair(std::uint32_t w0, std::uint32_t w1);

}  // namespace sohp
