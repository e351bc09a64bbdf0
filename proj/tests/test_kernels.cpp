#include <doctest.h>

#include <cmath>

#include "cnplab/kernels.hpp"

using namespace cnplab;

TEST_CASE("Szego kernel matrices") {
  const Matrix k1 = kernel_matrix(CnpKernel::szego(), PointSet::disk({0.0}));
  CHECK(k1.rows() == 1);
  CHECK(k1(0, 0) == Complex(1.0, 0.0));
  const Matrix k2 = kernel_matrix(CnpKernel::szego(), PointSet::disk({0.0, 0.5}));
  CHECK(std::abs(k2(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(k2(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(k2(1, 1) - 4.0 / 3.0) < 1e-15);
}

TEST_CASE("Drury-Arveson kernel at the origin") {
  Vector o = Vector::Zero(2);
  const Matrix k = kernel_matrix(CnpKernel::drury_arveson(2), PointSet({Point(o)}));
  CHECK(k(0, 0) == Complex(1.0, 0.0));
}

TEST_CASE("kernel matrices are exactly Hermitian and follow the normal form") {
  const PointSet pts = random_ball(12, 3, 7);
  const CnpKernel kda = CnpKernel::drury_arveson(3);
  const Matrix k = kernel_matrix(kda, pts);
  CHECK(k == Matrix(k.adjoint()));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const Complex ip = pts[j].coords.dot(pts[i].coords);  // <x_i, x_j>
      CHECK(std::abs(k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * (1.0 - ip) - 1.0) < 1e-12);
    }
}

TEST_CASE("embedding kernels reproduce 1/(1 - <u(x), u(y)>)") {
  const CnpKernel emb = CnpKernel::embedding([](const Point& x) {
    Vector u(2);
    u(0) = 0.5 * x.coords(0);
    u(1) = 0.5 * x.coords(0) * x.coords(0);
    return u;
  });
  const PointSet pts = PointSet::disk({0.1, Complex(0.2, 0.5), -0.7, Complex(0.0, -0.3)});
  const Matrix k = kernel_matrix(emb, pts);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const Complex zi = pts[i].coords(0), zj = pts[j].coords(0);
      const Complex ip = 0.25 * zi * std::conj(zj) + 0.25 * zi * zi * std::conj(zj * zj);
      CHECK(std::abs(k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * (1.0 - ip) - 1.0) < 1e-12);
    }
  CHECK(cnp_certificate(emb, pts, 0).accepted);
}

TEST_CASE("point sets reject duplicates and points outside the ball") {
  CHECK_THROWS_AS(PointSet::disk({0.5, 0.5}), Error);
  CHECK_THROWS_AS(kernel_matrix(CnpKernel::szego(), PointSet::disk({1.0})), Error);
}

TEST_CASE("near-coincident points are ill conditioned") {
  try {
    kernel_matrix(CnpKernel::szego(), PointSet::disk({0.5, 0.5 + 1e-9, 0.0}));
    FAIL("expected IllConditioned");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllConditioned);
  }
}

TEST_CASE("Bergman probe kernel is not positive definite as a CNP kernel") {
  const PointSet pts = PointSet::disk({0.0, 0.5, -0.5});
  const CnpCertificate c = cnp_certificate(CnpKernel::bergman_probe(), pts, 0);
  CHECK_FALSE(c.accepted);
  CHECK(std::abs(c.min_eigenvalue + 0.125) < 1e-12);
  CHECK(std::abs(c.e(1, 1) - 7.0 / 16.0) < 1e-15);
  CHECK(std::abs(c.e(1, 2) + 9.0 / 16.0) < 1e-15);
  // Witness is an eigenvector of E.
  CHECK((c.e * c.witness - c.min_eigenvalue * c.witness).norm() < 1e-12);
}

TEST_CASE("Szego certificate is the Gram matrix of u(x) = x") {
  const PointSet pts = PointSet::disk({0.0, 0.5, Complex(0.0, 1.0 / 3.0)});
  const CnpCertificate c = cnp_certificate(CnpKernel::szego(), pts, 0);
  CHECK(c.accepted);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const Complex want = pts[i].coords(0) * std::conj(pts[j].coords(0));
      CHECK(std::abs(c.e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - want) < 1e-15);
    }
  CHECK((c.gram_factor * c.gram_factor.adjoint() - c.e).norm() < 1e-12);
}

TEST_CASE("certificate decision ignores the order of non-base points") {
  const PointSet pts = random_ball(10, 2, 99);
  std::vector<std::size_t> perm{0, 9, 3, 5, 1, 8, 2, 7, 4, 6};
  const CnpKernel k = CnpKernel::drury_arveson(2);
  CHECK(cnp_certificate(k, pts, 0).accepted == cnp_certificate(k, pts.subset(perm), 0).accepted);
  const CnpKernel b = CnpKernel::bergman_probe(2);
  CHECK(cnp_certificate(b, pts, 0).accepted == cnp_certificate(b, pts.subset(perm), 0).accepted);
}

TEST_CASE("generators") {
  const PointSet f200 = fejer_points(200);
  const PointSet f50 = fejer_points(50);
  CHECK(f200.size() == 200);
  for (std::size_t i = 0; i < 50; ++i) CHECK(f200[i].coords == f50[i].coords);
  CHECK(f200[0].coords(0) == Complex(0.0, 0.0));
  const PointSet r1 = random_ball(20, 2, 42);
  const PointSet r2 = random_ball(20, 2, 42);
  const PointSet r3 = random_ball(20, 2, 43);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(r1[i].coords == r2[i].coords);
    CHECK(r1[i].norm_sq() < 0.81);
  }
  CHECK(r1[0].coords != r3[0].coords);
  const PointSet sep = random_ball(15, 1, 5, 0.9, 0.3);
  for (std::size_t i = 0; i < sep.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK(pseudo_hyperbolic(sep[i], sep[j]) >= 0.3);
}
