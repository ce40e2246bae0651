#include <doctest.h>

#include <cmath>

#include "ringbif/errors.hpp"
#include "ringbif/polygonal.hpp"
#include "support.hpp"

using namespace ringbif;

TEST_CASE("ring configuration") {
  const RingConfig r = make_ring(6, 2.5);
  CHECK(r.omega() == doctest::Approx(2.5 + r.s1()));
  const GeneralConfig g = ring_general_config(r);
  REQUIRE(g.size() == 7);
  CHECK(g.masses[0] == 2.5);
  CHECK(g.positions[0].norm() == 0.0);
  for (int j = 1; j <= 6; ++j) CHECK(g.positions[j].norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(make_ring(4, -0.2).nonphysical());
}

TEST_CASE("k = n block") {
  const RingConfig r = make_ring(7, 1.3);
  const CMat B = block_B(r, 7);
  CHECK(B(0, 0).real() == doctest::Approx(3.0 * (1.3 + r.s1())).epsilon(1e-14));
  CHECK(std::abs(B(0, 1)) + std::abs(B(1, 0)) + std::abs(B(1, 1)) <= 1e-13);
}

TEST_CASE("block conjugate symmetry") {
  const RingConfig r = make_ring(9, 0.8);
  CHECK(max_abs(CMat(block_B(r, 7) - block_B(r, 2).conjugate())) <= 1e-13);
  CHECK(max_abs(CMat(block_m0(r, 3, 0.0) - block_B(r, 3))) == 0.0);
  CHECK(conjugation_residual(make_ring(8, 1.0), 3, 0.6) <= 1e-13);
  for (int k = 1; k <= 8; ++k) CHECK(kappa_residual(make_ring(8, 1.0), k, 0.6) <= 1e-13);
}

TEST_CASE("T_k reduces the assembled planar Hessian to B_k") {
  const RingConfig r = make_ring(6, 3.0);
  const Mat A = hessian_blocks(ring_general_config(r)).planar_matrix();
  const CMat T = planar_basis(6, 2);
  const CMat reduced = T.adjoint() * A.cast<cplx>() * T;
  CHECK(max_abs(CMat(reduced - block_B(r, 2))) <= 1e-11);
}

TEST_CASE("spatial blocks") {
  const RingConfig r = make_ring(4, 2.0);
  CHECK(block_m1(r, 2, 0.0)(0, 0) == doctest::Approx(-(2.0 + r.sums.s[2])).epsilon(1e-14));
  const RingConfig r5 = make_ring(5, 1.0);
  const Mat m = block_m1(r5, 5, 0.0);
  const Vec v = (Vec(2) << 1.0, std::sqrt(5.0)).finished();
  CHECK((m * v).cwiseAbs().maxCoeff() <= 1e-14);
  const double nu = 0.9;
  CHECK(block_m1(r5, 5, nu).determinant() == doctest::Approx(nu * nu * 1.0 * (nu * nu - 6.0)).epsilon(1e-12));
}

TEST_CASE("full diagonalisation") {
  CHECK(verify_full_diagonalization(make_ring(5, 1.0), 0.5).max_residual() <= 1e-10);
  const auto rep = verify_full_diagonalization(make_ring(12, 0.0), 2.0);
  CHECK(rep.max_residual() <= 1e-10);
  CHECK(rep.orthogonality <= 1e-13);
}

TEST_CASE("k out of range") {
  CHECK_THROWS_AS(block_B(make_ring(5, 1.0), 0), DomainError);
  CHECK_THROWS_AS(block_m1(make_ring(5, 1.0), 6, 0.0), DomainError);
}

TEST_CASE("property: block identities on random rings") {
  gen::Source src(0x5eed31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = src.integer(3, 24);
    const double mu = src.uniform(0.0, 50.0);
    const double alpha = src.uniform(1.0, 3.0);
    const RingConfig r = make_ring(n, mu, alpha);
    const int k = src.integer(1, n);
    const double nu = src.uniform(-4.0, 4.0);
    CHECK(conjugation_residual(r, k, nu) <= 1e-12);
    CHECK(kappa_residual(r, k, nu) <= 1e-12);
    CHECK(hermitian_defect(block_m0(r, k, nu)) <= 1e-13 * (1.0 + max_abs(block_m0(r, k, nu))));
    const CMat P = planar_change_of_basis(n);
    CHECK(max_abs(CMat(P.adjoint() * P - CMat::Identity(P.cols(), P.cols()))) <= 1e-13);
  }
}
