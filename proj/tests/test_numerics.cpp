#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lensfb/numerics.hpp"

using namespace lensfb;

TEST_CASE("rng streams are reproducible and separated by stream id") {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    differs_c |= va != c.next_u64();
    differs_d |= va != d.next_u64();
  }
  CHECK(differs_c);
  CHECK(differs_d);

  const RngStream parent(42, 7);
  RngStream c1 = parent.child(1), c1b = parent.child(1), c2 = parent.child(2);
  CHECK(c1.stream_id() == c1b.stream_id());
  CHECK(c1.stream_id() != c2.stream_id());
  CHECK(c1.next_u64() == c1b.next_u64());
}

TEST_CASE("uniform draws stay in range and below() is unbiased enough") {
  RngStream rng(1, 0);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const double u = rng.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const double v = rng.uniform_open_zero();
    CHECK((v > 0.0 && v <= 1.0));
    ++counts[rng.below(7)];
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("sample_complex_gaussian") {
  SUBCASE("same seed, same value") {
    RngStream a(99, 3), b(99, 3);
    CHECK(sample_complex_gaussian(a, 1)[0] == sample_complex_gaussian(b, 1)[0]);
  }
  SUBCASE("moments of 1e5 samples") {
    RngStream rng(2024, 1);
    const auto z = sample_complex_gaussian(rng, 100000);
    cd mean = 0.0;
    double var_re = 0.0, var_im = 0.0, power = 0.0;
    for (cd v : z) mean += v;
    mean /= static_cast<double>(z.size());
    for (cd v : z) {
      power += std::norm(v - mean);
      var_re += (v.real() - mean.real()) * (v.real() - mean.real());
      var_im += (v.imag() - mean.imag()) * (v.imag() - mean.imag());
    }
    const double n1 = static_cast<double>(z.size() - 1);
    CHECK(std::abs(mean) < 0.02);
    CHECK(power / n1 >= 0.98);
    CHECK(power / n1 <= 1.02);
    CHECK(var_re / n1 == doctest::Approx(0.5).epsilon(0.03));
    CHECK(var_im / n1 == doctest::Approx(0.5).epsilon(0.03));
  }
  SUBCASE("n = 0 rejected") {
    RngStream rng(1, 1);
    CHECK_THROWS_AS(sample_complex_gaussian(rng, 0), Error);
  }
}

TEST_CASE("sample_unit_sphere") {
  RngStream rng(5, 5);
  SUBCASE("unit norm") {
    for (int i = 0; i < 100; ++i) CHECK(std::abs(norm(sample_unit_sphere(rng, 8)) - 1.0) <= 1e-12);
  }
  SUBCASE("n = 1 gives a unit-modulus scalar") {
    CHECK(std::abs(std::abs(sample_unit_sphere(rng, 1)[0]) - 1.0) <= 1e-12);
  }
  SUBCASE("E|u^H v|^2 = 1/n for n = 4") {
    double acc = 0.0;
    const int pairs = 100000;
    for (int i = 0; i < pairs; ++i) {
      const auto u = sample_unit_sphere(rng, 4);
      const auto v = sample_unit_sphere(rng, 4);
      acc += std::norm(inner(u, v));
    }
    CHECK(std::abs(acc / pairs - 0.25) < 0.01);
  }
  SUBCASE("|u^H e1|^2 follows Beta(1, n-1): KS < 0.01") {
    for (std::size_t n : {2u, 3u, 8u}) {
      std::vector<double> x;
      for (int i = 0; i < 100000; ++i) x.push_back(std::norm(sample_unit_sphere(rng, n)[0]));
      std::sort(x.begin(), x.end());
      double ks = 0.0;
      const double count = static_cast<double>(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double cdf = 1.0 - std::pow(1.0 - x[i], static_cast<double>(n - 1));
        ks = std::max({ks, std::abs(cdf - i / count), std::abs(cdf - (i + 1) / count)});
      }
      CHECK(ks < 0.01);
    }
  }
  SUBCASE("n = 0 rejected") { CHECK_THROWS_AS(sample_unit_sphere(rng, 0), Error); }
}

namespace {

ComplexMatrix random_matrix(RngStream& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (auto& z : m.data()) z = rng.complex_gaussian();
  return m;
}

}  // namespace

TEST_CASE("right_pseudo_inverse") {
  SUBCASE("identity") {
    const auto p = right_pseudo_inverse(ComplexMatrix::identity(3));
    CHECK(frobenius_norm(p - ComplexMatrix::identity(3)) <= 1e-15);
  }
  SUBCASE("2 I -> I / 2") {
    ComplexMatrix f = ComplexMatrix::identity(2);
    for (auto& z : f.data()) z *= 2.0;
    ComplexMatrix half = ComplexMatrix::identity(2);
    for (auto& z : half.data()) z *= 0.5;
    CHECK(frobenius_norm(right_pseudo_inverse(f) - half) <= 1e-15);
  }
  SUBCASE("random 24x8: F^H F+ = I") {
    RngStream rng(11, 0);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_matrix(rng, 24, 8);
      const auto p = right_pseudo_inverse(f);
      CHECK(p.rows() == 24);
      CHECK(p.cols() == 8);
      CHECK(frobenius_norm(f.adjoint() * p - ComplexMatrix::identity(8)) <= 1e-9);
      CHECK(p.all_finite());
    }
  }
  SUBCASE("rank-deficient input reports the condition estimate") {
    ComplexMatrix f(4, 2);
    for (std::size_t r = 0; r < 4; ++r) {
      f(r, 0) = cd(1.0 + r, 0.5);
      f(r, 1) = f(r, 0) * cd(0.0, 2.0);  // parallel column
    }
    try {
      right_pseudo_inverse(f);
      FAIL("expected SingularMatrixError");
    } catch (const SingularMatrixError& e) {
      CHECK(e.kind() == ErrorKind::singular_matrix);
      CHECK(e.rcond() < kMinGramRcond);
    }
  }
  SUBCASE("wide input rejected") {
    CHECK_THROWS_AS(right_pseudo_inverse(ComplexMatrix(2, 3)), Error);
  }
}

TEST_CASE("hpd_inverse reports a sensible rcond") {
  ComplexMatrix g = ComplexMatrix::identity(3);
  g(2, 2) = 1e-6;
  double rcond = 0.0;
  const auto inv = hpd_inverse(g, rcond);
  CHECK(rcond == doctest::Approx(1e-6));
  CHECK(inv(2, 2).real() == doctest::Approx(1e6));
  g(2, 2) = 1e-14;
  CHECK_THROWS_AS(hpd_inverse(g, rcond), SingularMatrixError);
}
