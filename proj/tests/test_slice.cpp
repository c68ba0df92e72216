#include "doctest.h"
#include "oracles.hpp"
#include "slicelab/error.hpp"
#include "slicelab/jacobi.hpp"
#include "slicelab/matcore.hpp"
#include "slicelab/random.hpp"
#include "slicelab/slice.hpp"
#include "test_helpers.hpp"

using namespace slicelab;
using slicelab::test::check_close;
using slicelab::test::max_diff;

namespace {

SymMatrix repeat_qr(SymMatrix s, int k) {
  for (int i = 0; i < k; ++i) s = qr_step(s);
  return s;
}

SymMatrix banded(std::size_t n, std::size_t bw, Rng& rng) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n && j <= i + bw; ++j) {
      m(i, j) = rng.normal();
      m(j, i) = m(i, j);
    }
  for (std::size_t i = 0; i < n; ++i) m(i, i) += 6.0;  // keep it invertible
  return SymMatrix(m);
}

}  // namespace

TEST_CASE("qr_step examples") {
  const std::vector<double> d{4, 2, 1};
  check_close(qr_step(SymMatrix::diagonal(d)), Matrix::diagonal(d), 1e-15);
  const SymMatrix s = SymMatrix::from_rows({{2, 1}, {1, 2}});
  const SymMatrix out = qr_step(s);
  check_close(out, Matrix::from_rows({{14.0 / 5, 3.0 / 5}, {3.0 / 5, 6.0 / 5}}), 1e-14);
  CHECK(out.mat().trace() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(out(0, 0) * out(1, 1) - out(0, 1) * out(1, 0) == doctest::Approx(3.0).epsilon(1e-14));
  try {
    qr_step(SymMatrix::from_rows({{1, 1}, {1, 1}}));
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularMatrix);
  }
}

TEST_CASE("qr_step two-formula agreement, isospectrality and bandwidth") {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const SymMatrix s = random_symmetric(n, rng);
    const QrFactors f = qr_factor(s);
    const Matrix rq = f.r.mat() * f.q.mat();
    const Matrix qsq = f.q.mat().transposed() * s.mat() * f.q.mat();
    const Matrix rsr = f.r.mat() * s.mat() * f.r.inverse();
    const double tol = 1e-10 * s.norm();
    CHECK(max_abs_diff(rq, qsq) < tol);
    CHECK(max_abs_diff(rq, rsr) < tol);
    CHECK(max_abs_diff(qsq, rsr) < tol);
    CHECK(max_diff(eigenvalues(qr_step(s)), eigenvalues(s)) < 1e-9 * s.norm());
  }
  for (std::size_t bw = 0; bw < 3; ++bw) {
    for (int trial = 0; trial < 10; ++trial) {
      const SymMatrix s = banded(7, bw, rng);
      const SymMatrix out = qr_step(s);
      for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j)
          if ((i > j ? i - j : j - i) > bw) CHECK(std::abs(out(i, j)) <= 1e-11 * s.norm());
    }
  }
}

TEST_CASE("functional_step") {
  Rng rng(7);
  const SymMatrix s = random_spd(4, rng);
  SUBCASE("constant function leaves s fixed") {
    check_close(functional_step(s, SpectralFunction::polynomial({2.5})), s, 1e-14);
  }
  SUBCASE("scaling f changes nothing") {
    const SymMatrix a = functional_step(s, SpectralFunction::identity());
    const SymMatrix b = functional_step(s, SpectralFunction::polynomial({0.0, 2.0}));
    check_close(a, b, 1e-13);
  }
  SUBCASE("power(k) equals k QR steps") {
    for (long k = 1; k <= 5; ++k) {
      check_close(functional_step(s, SpectralFunction::power(k)), repeat_qr(s, static_cast<int>(k)), 1e-8 * s.norm());
    }
  }
  SUBCASE("agrees with conjugation by R") {
    const SpectralFunction f = SpectralFunction::polynomial({1.0, 0.5, 0.25});
    const QrFactors qr = qr_factor(apply_function(s, f));
    const Matrix rsr = qr.r.mat() * s.mat() * qr.r.inverse();
    check_close(functional_step(s, f), rsr, 1e-10 * s.norm());
  }
  SUBCASE("f must be positive on the spectrum") {
    const SymMatrix indefinite = SymMatrix::from_rows({{0, 1}, {1, 0}});
    try {
      functional_step(indefinite, SpectralFunction::identity());
      FAIL("expected DomainViolation");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DomainViolation);
    }
    CHECK_THROWS_AS(functional_step(indefinite, SpectralFunction::log()), Error);
  }
}

TEST_CASE("semigroup on power steps") {
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const SymMatrix s = random_spd(3 + trial % 3, rng);
    for (long a = 1; a <= 3; ++a)
      for (long b = 1; b <= 3; ++b) {
        const SymMatrix two = functional_step(functional_step(s, SpectralFunction::power(a)), SpectralFunction::power(b));
        check_close(two, functional_step(s, SpectralFunction::power(a + b)), 1e-8);
      }
  }
}

TEST_CASE("fractional_step") {
  const std::vector<double> d{4, 1};
  for (long k : {1L, 2L, 7L}) check_close(fractional_step(SymMatrix::diagonal(d), k), Matrix::diagonal(d), 1e-14);
  Rng rng(12);
  const SymMatrix s = random_spd(3, rng);
  check_close(fractional_step(s, 1), qr_step(s), 1e-12);
  for (long k : {2L, 3L, 5L, 10L}) {
    SymMatrix cur = s;
    for (long i = 0; i < k; ++i) cur = fractional_step(cur, k);
    check_close(cur, qr_step(s), 1e-8);
  }
  CHECK_THROWS_AS(fractional_step(SymMatrix::from_rows({{0, 1}, {1, 0}}), 2), Error);
  CHECK_THROWS_AS(fractional_step(s, 0), Error);
}

TEST_CASE("interpolating_field") {
  const std::vector<double> d{3, 2, 0.5};
  CHECK(interpolating_field(SymMatrix::diagonal(d)).mat() == Matrix(3));
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const SymMatrix s = random_spd(2 + trial % 5, rng);
    const SymMatrix x = interpolating_field(s);
    CHECK(std::abs(x.mat().trace()) <= 1e-12 * s.norm());
    // Tangent to the isospectral manifold: d/dt tr(s^m) = m·tr(s^{m-1}·X) = 0.
    Matrix power = Matrix::identity(s.size());
    for (int m = 1; m <= 4; ++m) {
      CHECK(std::abs((power * x.mat()).trace()) <= 1e-11 * std::pow(s.norm(), m) * x.norm() + 1e-13);
      power = power * s.mat();
    }
  }
  SUBCASE("finite differences of fractional steps converge at first order") {
    const SymMatrix s = random_spd(3, rng);
    const Matrix x = interpolating_field(s);
    double prev = 0.0;
    for (long k : {10L, 100L, 1000L, 10000L}) {
      const Matrix fd = (fractional_step(s, k).mat() - s.mat()) * static_cast<double>(k);
      const double err = max_abs_diff(fd, x);
      if (k == 10000) CHECK(err < 1e-3 * s.norm());
      if (prev > 0.0) {
        CHECK(err < prev);
        const double rate = std::log10(prev / err);
        CHECK(rate == doctest::Approx(1.0).epsilon(0.15));
      }
      prev = err;
    }
  }
}

TEST_CASE("iterate_qr") {
  Rng rng(14);
  const SymMatrix s = random_spd(3, rng);
  const Trajectory zero = iterate_qr(s, 0, SpectralFunction::identity());
  CHECK(zero.size() == 1);
  CHECK(zero.states.front() == s);

  const std::vector<double> spectrum{4, 2, 1};
  const SymMatrix j = random_jacobi_with_spectrum(spectrum, rng);
  const Trajectory traj = iterate_qr(j, 60, SpectralFunction::identity());
  CHECK(traj.size() == 61);
  CHECK(traj.times.back() == 60.0);
  const Matrix& last = traj.states.back();
  double off = 0.0;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      if (a != b) off = std::max(off, std::abs(last(a, b)));
  CHECK(off < 1e-6);
  CHECK(max_diff(last.diag(), spectrum) < 1e-6);

  for (long k = 1; k <= 5; ++k) {
    const Trajectory t = iterate_qr(s, k, SpectralFunction::identity());
    check_close(t.states.back(), functional_step(s, SpectralFunction::power(k)), 1e-8);
  }
  CHECK_THROWS_AS(iterate_qr(s, -1, SpectralFunction::identity()), Error);
}

TEST_CASE("slice_point") {
  Rng rng(15);
  const SymMatrix s = random_spd(4, rng);
  REQUIRE(is_irreducible(s));
  check_close(slice_point(s, SliceWeights({1, 1, 1, 1})), s, 1e-14);
  const SpectralDecomposition sd = spectral_decompose(s);
  check_close(slice_point(s, SliceWeights(sd.lambda)), qr_step(s), 1e-12);

  const SliceWeights w(random_positive(4, rng));
  std::vector<double> scaled = w.values();
  for (double& v : scaled) v *= 37.5;
  CHECK(max_abs_diff(slice_point(s, w), slice_point(s, SliceWeights(scaled))) <= 1e-14);

  const SymMatrix s3 = random_spd(3, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const SliceWeights a(random_positive(3, rng));
    const SliceWeights b(random_positive(3, rng));
    CHECK(max_abs_diff(slice_point(s3, a), slice_point(s3, b)) > 1e-8);
    CHECK(max_diff(eigenvalues(slice_point(s3, a)), eigenvalues(s3)) < 1e-9 * s3.norm());
  }

  CHECK_THROWS_AS(SliceWeights({1, 0, 1}), Error);
  CHECK_THROWS_AS(slice_point(s, SliceWeights({1, 1, 1})), Error);
  const std::vector<double> d{1, 2, 3};
  try {
    slice_point(SymMatrix::diagonal(d), SliceWeights({1, 2, 3}));
    FAIL("expected NotIrreducible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIrreducible);
  }
}

TEST_CASE("is_irreducible") {
  Rng rng(16);
  CHECK(is_irreducible(random_jacobi(5, rng)));
  const std::vector<double> d{1, 2, 3};
  CHECK_FALSE(is_irreducible(SymMatrix::diagonal(d)));
  const SymMatrix block =
      SymMatrix::from_rows({{1, 2, 0, 0}, {2, 1, 0, 0}, {0, 0, 3, 1}, {0, 0, 1, 5}});
  CHECK_FALSE(is_irreducible(block));
  // Coupled only through a corner entry: still irreducible.
  CHECK(is_irreducible(SymMatrix::from_rows({{1, 0, 2}, {0, 1, 3}, {2, 3, 1}})));

  // Enumeration agrees with connectivity of the coupling graph.
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 7;
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = rng.normal();
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.uniform(0, 1) < 0.3) m(i, j) = m(j, i) = rng.normal();
    }
    const SymMatrix s(m);
    CHECK(is_irreducible(s) == (coupling_components(s).size() == 1));
  }
}

TEST_CASE("trajectory ordering") {
  Trajectory t;
  const std::vector<double> d{2, 1};
  t.append(0.0, SymMatrix::diagonal(d));
  t.append(1.0, SymMatrix::diagonal(d));
  CHECK_THROWS_AS(t.append(1.0, SymMatrix::diagonal(d)), Error);
  CHECK_THROWS_AS(t.append(0.5, SymMatrix::diagonal(d)), Error);
  const std::vector<double> d3{3, 2, 1};
  CHECK_THROWS_AS(t.append(2.0, SymMatrix::diagonal(d3)), Error);
}

TEST_CASE("positive functions give rotation factors") {
  // det f(S) > 0 when f > 0 on the spectrum, so the Q factor has det +1.
  Rng rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const SymMatrix s = random_conjugate(random_spectrum(n, -2.0, 2.0, rng), rng);
    const Matrix fs = apply_function(s, SpectralFunction::exp());
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    const Matrix q = qr_factor(fs).q;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = q(i, j);
    CHECK(oracle::cofactor_det(rows) == doctest::Approx(1.0).epsilon(1e-10));
    check_close(functional_step(s, SpectralFunction::exp()), conjugate(s, q), 1e-12 * s.norm());
  }
}
