#include "sohp/philox.hpp"

#include <cmath>
#include <numbers>

namespace sohp {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> round_once(const std::array<std::uint32_t, 4>& c,
                                               std::uint32_t k0, std::uint32_t k1) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(
    const std::array<std::uint32_t, 4>& counter) const {
  std::uint32_t k0 = static_cast<std::uint32_t>(seed);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
  std::array<std::uint32_t, 4> c = counter;
  c = round_once(c, k0, k1);
  for (int r = 1; r < 10; ++r) {
    k0 += kWeyl0;
    k1 += kWeyl1;
    c = round_once(c, k0, k1);
  }
  return c;
}

double uniform_open01(std::uint32_t w) {
  // (w + 0.5) / 2^32, strictly inside (0, 1)
  return (static_cast<double>(w) + 0.5) * 0x1.0p-32;
}

std::pair<double, double> normal_pair(std::uint32_t w0, std::uint32_t w1) {
  const double u1 = uniform_open01(w0);
  const double u2 = uniform_open01(w1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace sohp
