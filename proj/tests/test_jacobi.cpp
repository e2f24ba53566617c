#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <random>

#include "deto/linalg/jacobi.hpp"

using deto::linalg::jacobi_eigenvalues;

TEST_CASE("2x2 eigenvalues match the closed form", "[jacobi]") {
  // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const Eigen::VectorXd ev = jacobi_eigenvalues(m);
  CHECK(ev(0) == Catch::Approx(1.0).margin(1e-12));
  CHECK(ev(1) == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("diagonal matrices are returned sorted", "[jacobi]") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m.diagonal() << 4.0, -1.0, 2.5, 0.0;
  const Eigen::VectorXd ev = jacobi_eigenvalues(m);
  CHECK(ev(0) == -1.0);
  CHECK(ev(3) == 4.0);
}

TEST_CASE("random symmetric matrices agree with Eigen", "[jacobi]") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 5);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = normal(gen);
    const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());

    const Eigen::VectorXd ours = jacobi_eigenvalues(sym);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(sym, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ref = oracle.eigenvalues();
    REQUIRE(ours.size() == ref.size());
    const double scale = 1.0 + ref.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) CHECK(std::abs(ours(i) - ref(i)) <= 1e-10 * scale);
  }
}

TEST_CASE("non-square input is rejected", "[jacobi]") {
  CHECK_THROWS_AS(jacobi_eigenvalues(Eigen::MatrixXd::Zero(2, 3)), deto::BadInput);
}
