#include "doctest.h"

#include <cmath>
#include <random>

#include "qread/fock.hpp"
#include "qread/gaussian.hpp"

using namespace qread;

TEST_CASE("symplectic spectrum: vacuum and pure TMSV are unit") {
  auto [n1, n2] = symplectic_spectrum({1, 1, 0});
  CHECK(n1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(n2 == doctest::Approx(1.0).epsilon(1e-14));

  const double mu = 3.0;
  auto [p1, p2] = symplectic_spectrum({mu, mu, std::sqrt(mu * mu - 1.0)});
  CHECK(p1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symplectic spectrum: generic fixture (2.1, 3, 2)") {
  auto [n1, n2] = symplectic_spectrum({2.1, 3, 2});
  CHECK(n1 == doctest::Approx(1.1319292019556375).epsilon(1e-12));
  CHECK(n2 == doctest::Approx(2.0319292019556370).epsilon(1e-12));
  // nu1*nu2 = ab - c^2 = 2.3, and equals sqrt(det V)
  CHECK(n1 * n2 == doctest::Approx(2.3).epsilon(1e-10));
  CHECK(n1 * n2 == doctest::Approx(std::sqrt(TwoModeNormalCM{2.1, 3, 2}.dense().determinant()))
                       .epsilon(1e-10));
}

TEST_CASE("symplectic spectrum rejects non-physical CMs") {
  CHECK_THROWS_AS(symplectic_spectrum({1, 1, 0.5}), NonPhysicalCM);
  CHECK_THROWS_AS(symplectic_spectrum({2, 2, 10}), NonPhysicalCM);
}

TEST_CASE("williamson: closed-form cases") {
  auto id = williamson({1, 1, 0});
  CHECK(id.x_plus == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(id.x_minus == doctest::Approx(0.0).epsilon(1e-14));

  const double mu = 3.0;  // TMSV with sinh^2(xi) = 1: x+ = cosh, x- = sinh
  auto tm = williamson({mu, mu, std::sqrt(mu * mu - 1.0)});
  CHECK(tm.x_plus == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(tm.x_minus == doctest::Approx(1.0).epsilon(1e-12));

  auto d = williamson({2.1, 3, 2});
  CHECK(d.x_plus == doctest::Approx(1.1427939075276403).epsilon(1e-12));
  CHECK(d.x_minus == doctest::Approx(0.5531527050302592).epsilon(1e-12));
  CHECK(d.x_plus * d.x_plus - d.x_minus * d.x_minus == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("williamson: randomized reconstruction and symplectic condition") {
  std::mt19937 rng(20120905);
  std::uniform_real_distribution<double> uab(1.0, 50.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const Eigen::Matrix4d omega = symplectic_form();
  int physical = 0, rejected = 0;
  for (int i = 0; i < 500; ++i) {
    const double a = uab(rng), b = uab(rng);
    const double c = u01(rng) * std::sqrt(a * b - 1.0);
    const TwoModeNormalCM cm{a, b, c};
    const bool is_phys = c * c <= a * b - 1.0 - std::abs(a - b) + 1e-12;
    if (!is_phys) {
      CHECK_THROWS_AS(williamson(cm), NonPhysicalCM);
      ++rejected;
      continue;
    }
    ++physical;
    const auto d = williamson(cm);
    const Eigen::Matrix4d s = d.symplectic();
    CHECK((s * d.williamson_form() * s.transpose() - cm.dense()).cwiseAbs().maxCoeff()
          < 1e-12 * std::max(1.0, cm.dense().cwiseAbs().maxCoeff()));
    CHECK((s * omega * s.transpose() - omega).cwiseAbs().maxCoeff() < 1e-12);
    const double prod = d.nu1 * d.nu2;
    CHECK(std::abs(prod - (a * b - c * c)) < 1e-10 * prod);
    CHECK(d.nu1 >= 1.0 - kPhysicalityTol);
    CHECK(d.nu2 >= 1.0 - kPhysicalityTol);
  }
  CHECK(physical > 100);
  CHECK(rejected > 10);
}

TEST_CASE("gp and lambda_p: pinned values and limits") {
  CHECK(gp(1.0, 0.5) == 1.0);
  CHECK(gp(3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gp(3.0, 0.5) == doctest::Approx(2.414213562373096).epsilon(1e-14));
  CHECK(lambda_p(1.0, 0.3) == 1.0);
  CHECK(lambda_p(3.0, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(lambda_p(3.0, 0.5) == doctest::Approx(5.828427124746191).epsilon(1e-14));
  CHECK_THROWS_AS(gp(0.9, 0.5), DomainError);
  CHECK_THROWS_AS(gp(3.0, 0.0), DomainError);
  CHECK_THROWS_AS(lambda_p(0.5, 0.5), DomainError);
  CHECK_THROWS_AS(lambda_p(3.0, 1.5), DomainError);
}

TEST_CASE("gp and lambda_p: monotone in nu, Lambda >= 1") {
  for (double p : {0.2, 0.5, 0.8}) {
    double prev_g = gp(1.0, p), prev_l = lambda_p(1.0, p);
    for (double nu = 1.05; nu < 30.0; nu *= 1.3) {
      const double g = gp(nu, p), l = lambda_p(nu, p);
      CHECK(g > prev_g);
      CHECK(l > prev_l);
      CHECK(l >= 1.0);
      prev_g = g;
      prev_l = l;
    }
  }
}

TEST_CASE("gp/lambda_p certified by truncated thermal states") {
  // Tr rho^p = G_p(nu) and the symplectic eigenvalue of rho^p/Tr equals
  // Lambda_p(nu) for a thermal mode, nu = 2 nB + 1.
  const int dim = 200;
  for (double nb : {0.5, 1.0, 2.0}) {
    for (double p : {0.3, 0.5, 0.9}) {
      const auto th = fock::thermal_state(nb, dim);
      const double nu = 2.0 * nb + 1.0;
      CHECK(std::abs(fock::trace_power(th, p) - gp(nu, p)) < 1e-6);

      fock::FockOperator powered = th;
      for (int n = 0; n < dim; ++n)
        powered.entries(n, n) = std::pow(std::real(th.entries(n, n)), p);
      powered.entries /= powered.entries.real().trace();
      const double nu_p = 2.0 * fock::mean_photons(powered, 0) + 1.0;
      CHECK(std::abs(nu_p - lambda_p(nu, p)) < 1e-6);
    }
  }
}
