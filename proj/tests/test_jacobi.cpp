#include "doctest.h"
#include "slicelab/error.hpp"
#include "slicelab/jacobi.hpp"
#include "slicelab/polytope.hpp"
#include "slicelab/random.hpp"
#include "slicelab/slice.hpp"
#include "slicelab/toda.hpp"
#include "test_helpers.hpp"

using namespace slicelab;
using slicelab::test::check_close;
using slicelab::test::max_diff;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("is_jacobi") {
  CHECK(is_jacobi(SymMatrix::from_rows({{0, 0.5}, {0.5, 0}})));
  const std::vector<double> d{1, 2};
  CHECK_FALSE(is_jacobi(SymMatrix::diagonal(d)));
  CHECK_FALSE(is_jacobi(SymMatrix::from_rows({{0, -1, 0}, {-1, 0, 1}, {0, 1, 0}})));
  CHECK_FALSE(is_jacobi(SymMatrix::from_rows({{0, 1, 0.1}, {1, 0, 1}, {0.1, 1, 0}})));
}

TEST_CASE("moser_coordinates examples") {
  const MoserCoordinates a = moser_coordinates(SymMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(max_diff(a.lambda, {1, -1}) < 1e-15);
  CHECK(max_diff(a.w, {kInvSqrt2, kInvSqrt2}) < 1e-15);
  const MoserCoordinates b = moser_coordinates(SymMatrix::from_rows({{1, 0.5}, {0.5, 1}}));
  CHECK(max_diff(b.lambda, {1.5, 0.5}) < 1e-15);
  CHECK(max_diff(b.w, {kInvSqrt2, kInvSqrt2}) < 1e-15);
  const std::vector<double> d{3, 1};
  try {
    moser_coordinates(SymMatrix::diagonal(d));
    FAIL("expected NotJacobi");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotJacobi);
  }
}

TEST_CASE("moser_reconstruct") {
  check_close(moser_reconstruct(MoserCoordinates{{1, -1}, {kInvSqrt2, kInvSqrt2}}),
              Matrix::from_rows({{0, 1}, {1, 0}}), 1e-15);
  CHECK_THROWS_AS(moser_reconstruct(MoserCoordinates{{2, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(moser_reconstruct(MoserCoordinates{{1, 2}, {kInvSqrt2, kInvSqrt2}}), Error);
  CHECK_THROWS_AS(moser_reconstruct(MoserCoordinates{{2, 1}, {0.5, 0.5}}), Error);
  CHECK_THROWS_AS(moser_reconstruct(MoserCoordinates{{3, 2, 1}, {kInvSqrt2, kInvSqrt2}}), Error);
}

TEST_CASE("Moser chart is a bijection at desk scale") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const SymMatrix j = random_jacobi(n, rng);
    const MoserCoordinates mc = moser_coordinates(j);
    for (double v : mc.w) CHECK(v > 0.0);
    double norm = 0.0;
    for (double v : mc.w) norm += v * v;
    CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-12);
    const SymMatrix back = moser_reconstruct(mc);
    CHECK(is_jacobi(back));
    CHECK(max_abs_diff(back, j) < 1e-8);

    std::vector<double> w = random_positive(n, rng);
    double wn = 0.0;
    for (double v : w) wn += v * v;
    for (double& v : w) v /= std::sqrt(wn);
    const MoserCoordinates target{random_spectrum(n, -2.0, 2.0, rng), w};
    const MoserCoordinates again = moser_coordinates(moser_reconstruct(target));
    CHECK(max_diff(again.lambda, target.lambda) < 1e-8);
    CHECK(max_diff(again.w, target.w) < 1e-8);
  }
}

TEST_CASE("Toda flow moves only the Moser weights") {
  Rng rng(42);
  const SymMatrix j = random_jacobi(4, rng);
  const MoserCoordinates start = moser_coordinates(j);
  double moved = 0.0;
  for (double t : {0.5, 1.0, 2.0, 3.0}) {
    const MoserCoordinates mc = moser_coordinates(flow_factorized(j, SpectralFunction::identity(), t));
    CHECK(max_diff(mc.lambda, start.lambda) < 1e-9);
    moved = std::max(moved, max_diff(mc.w, start.w));
  }
  CHECK(moved > 1e-2);
}

TEST_CASE("Jacobi matrices with equal spectrum share one spectral polytope") {
  Rng rng(43);
  const std::vector<double> spectrum{3.0, 1.0, -0.5, -2.0};
  const SymMatrix a = random_jacobi_with_spectrum(spectrum, rng);
  const SymMatrix b = random_jacobi_with_spectrum(spectrum, rng);
  const VertexSet pa = spectral_polytope(a);
  const VertexSet pb = spectral_polytope(b);
  CHECK(pa.points.size() == 24);
  CHECK(pb.points.size() == 24);
  CHECK(hull_member(bfr_map(a), pb));
  CHECK(hull_member(bfr_map(b), pa));
}

TEST_CASE("reconstruction fails when a Lanczos coupling collapses") {
  // n = 2: the coupling is w1·w2·(λ1 − λ2) ≈ 2e-13, past the 1e-12 floor,
  // while both weights and the gap pass validation.
  const double w2 = 2e-10;
  const MoserCoordinates mc{{1.0, 0.999}, {std::sqrt(1.0 - w2 * w2), w2}};
  CHECK_NOTHROW(mc.validate());
  try {
    (void)moser_reconstruct(mc);
    FAIL("expected ReconstructionFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReconstructionFailure);
  }
  // A wider gap keeps the coupling above the floor.
  CHECK_NOTHROW((void)moser_reconstruct(MoserCoordinates{{1.0, -1.0}, {0.6, 0.8}}));
}
