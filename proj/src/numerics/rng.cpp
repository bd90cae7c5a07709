#include <bit>
#include <cmath>

#include "lensfb/numerics.hpp"

namespace lensfb {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix_next(std::uint64_t& state) noexcept {
  state += kGolden;
  return mix64(state);
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t root_seed, std::uint64_t stream_id)
    : root_seed_(root_seed), stream_id_(stream_id) {
  std::uint64_t sm = mix64(root_seed) ^ mix64(stream_id + kGolden);
  for (auto& word : s_) word = splitmix_next(sm);
  // xoshiro must not start from the all-zero state.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = kGolden;
}

RngStream RngStream::child(std::uint64_t label) const {
  return RngStream(root_seed_, mix64(stream_id_ ^ mix64(label + 1)));
}

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open_zero() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t n) noexcept {
  // Lemire's nearly-divisionless method.
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

cd RngStream::complex_gaussian() noexcept {
  // Polar method: (u, v) uniform in the unit disc, s = u^2 + v^2 ~ U(0, 1),
  // so |z|^2 = -ln(s) ~ Exp(1) and each component has variance 1/2.
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double f = std::sqrt(-std::log(s) / s);
      return {u * f, v * f};
    }
  }
}

CVector sample_complex_gaussian(RngStream& rng, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::invalid_dimension, "sample_complex_gaussian: n must be >= 1");
  CVector out(n);
  for (auto& z : out) z = rng.complex_gaussian();
  return out;
}

void sample_unit_sphere_into(RngStream& rng, std::span<cd> out) {
  if (out.empty()) throw Error(ErrorKind::invalid_dimension, "sample_unit_sphere: n must be >= 1");
  double power = 0.0;
  for (auto& z : out) {
    z = rng.complex_gaussian();
    power += std::norm(z);
  }
  // complex_gaussian never returns zero, so power > 0.
  const double inv = 1.0 / std::sqrt(power);
  for (auto& z : out) z *= inv;
}

CVector sample_unit_sphere(RngStream& rng, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::invalid_dimension, "sample_unit_sphere: n must be >= 1");
  CVector out(n);
  sample_unit_sphere_into(rng, out);
  return out;
}

}  // namespace lensfb
