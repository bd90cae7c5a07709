#include <algorithm>
#include <cstring>

#include "doctest.h"
#include "lensfb/kernels.hpp"

using namespace lensfb;
using namespace lensfb::kernels;

namespace {

std::vector<double> oracle_powers(const std::vector<CVector>& codewords, const CVector& h) {
  std::vector<double> out;
  for (const auto& d : codewords) {
    cd acc = 0.0;
    for (std::size_t n = 0; n < h.size(); ++n) acc += std::conj(d[n]) * h[n];
    out.push_back(std::norm(acc));
  }
  return out;
}

bool bitwise_equal(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar table is always present and active table is available") {
  const auto all = available_kernels();
  REQUIRE(!all.empty());
  CHECK(all.front()->isa == Isa::scalar);
  const KernelTable& active = active_kernels();
  CHECK(std::find(all.begin(), all.end(), &active) != all.end());
  MESSAGE("active kernels: " << std::string(active.name));
}

TEST_CASE("correlation_power matches a std::complex oracle for every variant") {
  RngStream rng(3, 3);
  for (const KernelTable* k : available_kernels()) {
    CAPTURE(k->name);
    for (std::size_t dim : {1u, 2u, 3u, 8u, 24u}) {
      for (std::size_t count : {1u, 3u, 4u, 5u, 17u, 64u}) {
        std::vector<CVector> codewords;
        PlanarBlock block(dim, count);
        for (std::size_t i = 0; i < count; ++i) {
          codewords.push_back(sample_complex_gaussian(rng, dim));
          block.set(i, codewords.back());
        }
        const CVector h = sample_complex_gaussian(rng, dim);
        std::vector<double> got(count);
        correlation_power(*k, block, h, got, count);
        const auto want = oracle_powers(codewords, h);
        for (std::size_t i = 0; i < count; ++i)
          CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("SIMD variants are bitwise identical to the scalar reference") {
  const KernelTable& ref = scalar_kernels();
  RngStream rng(17, 0);
  for (const KernelTable* k : available_kernels()) {
    if (k == &ref) continue;
    CAPTURE(k->name);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t dim = 1 + rng.below(30);
      const std::size_t count = 1 + rng.below(40);
      PlanarBlock block(dim, count);
      for (std::size_t i = 0; i < count; ++i) block.set(i, sample_complex_gaussian(rng, dim));
      const CVector h = sample_complex_gaussian(rng, dim);
      // Partial scans (count smaller than storage) exercise tails too.
      const std::size_t used = 1 + rng.below(count);
      std::vector<double> a(count, -1.0), b(count, -1.0);
      correlation_power(ref, block, h, a, used);
      correlation_power(*k, block, h, b, used);
      CHECK(bitwise_equal(a, b));

      const std::size_t rows = 1 + rng.below(33);
      const std::size_t cols = 1 + rng.below(9);
      ComplexMatrix m(rows, cols);
      for (auto& z : m.data()) z = rng.complex_gaussian();
      const CVector x = sample_complex_gaussian(rng, cols);
      CVector ya(rows, cd{7.0, 7.0}), yb(rows, cd{-3.0, 1.0});
      complex_matvec(ref, m, x, ya);
      complex_matvec(*k, m, x, yb);
      CHECK(std::memcmp(ya.data(), yb.data(), rows * sizeof(cd)) == 0);
    }
  }
}

TEST_CASE("complex_matvec matches the dense product") {
  RngStream rng(8, 1);
  ComplexMatrix m(13, 5);
  for (auto& z : m.data()) z = rng.complex_gaussian();
  const CVector x = sample_complex_gaussian(rng, 5);
  const CVector want = m * std::span<const cd>(x);
  for (const KernelTable* k : available_kernels()) {
    CVector got(13);
    complex_matvec(*k, m, x, got);
    for (std::size_t r = 0; r < 13; ++r) CHECK(std::abs(got[r] - want[r]) <= 1e-13);
  }
}

TEST_CASE("kernel wrappers reject mismatched shapes") {
  PlanarBlock block(4, 8);
  CVector h(3);
  std::vector<double> out(8);
  CHECK_THROWS_AS(correlation_power(scalar_kernels(), block, h, out, 8), Error);
  CVector h4(4);
  CHECK_THROWS_AS(correlation_power(scalar_kernels(), block, h4, out, 9), Error);
  ComplexMatrix m(3, 2);
  CVector x(3), y(3);
  CHECK_THROWS_AS(complex_matvec(scalar_kernels(), m, x, y), Error);
}

TEST_CASE("PlanarBlock stores and returns vectors") {
  PlanarBlock block(3, 5);
  const CVector v{{1, 2}, {3, 4}, {5, 6}};
  block.set(4, v);
  CHECK(block.get(4) == v);
  CHECK(block.get(0) == CVector(3));
}
