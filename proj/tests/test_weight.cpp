#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "paraweight/errors.hpp"
#include "paraweight/weight.hpp"

using namespace paraweight;

TEST_CASE("lip weight matches the closed form Phi = e^tau - 1") {
  const auto w = CarlemanWeight::build(modulus_catalogue("lip"), 10.0);
  // phi(t) = log t, phi^{-1} = e^y, Phi = e^tau - 1
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double tau = 10.0 * i / 400.0;
    const double exact = std::expm1(tau);
    if (tau > 0.0)
      worst = std::max(worst, std::fabs(w.Phi(tau) - exact) / exact);
    CHECK(w.Phi_prime(tau) ==
          doctest::Approx(std::exp(tau)).epsilon(1e-8));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("Phi(0) = 0 and Phi'(0) = 1 exactly by construction") {
  for (const char* name : {"lip", "loglip"}) {
    const auto w = CarlemanWeight::build(modulus_catalogue(name), 2.0);
    CHECK(w.Phi(0.0) == 0.0);
    CHECK(w.Phi_prime(0.0) == 1.0);
    CHECK(w.phi(1.0) == 0.0);
  }
}

TEST_CASE("phi inverse round trip on the table abscissae") {
  const auto w = CarlemanWeight::build(modulus_catalogue("loglip"), 3.0);
  for (std::size_t j = 1; j + 1 < w.knots(); j += w.knots() / 64 + 1) {
    const double tau = w.tau_knot(j);
    const double t = w.phi_inv(tau);
    CHECK(w.phi(t) == doctest::Approx(tau).epsilon(1e-9));
    // and Phi' = phi^{-1} against the exact knot value
    CHECK(w.log_phi_inv(tau) ==
          doctest::Approx(w.log_phi_inv_at_knot(j)).epsilon(1e-9));
  }
}

TEST_CASE("sqrt modulus exhausts the weight domain with sup phi = 2") {
  try {
    CarlemanWeight::build(modulus_catalogue("sqrt"), 3.0);
    FAIL("expected WeightDomainExhausted");
  } catch (const WeightDomainExhausted& e) {
    CHECK(e.sup_phi == doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_CASE("weight ODE residual for lip stays below 1e-5") {
  const auto w = CarlemanWeight::build(modulus_catalogue("lip"), 10.0);
  std::vector<double> grid;
  for (int i = 1; i < 200; ++i) grid.push_back(10.0 * i / 200.0);
  const auto res = check_weight_ode(w, grid, 1e-5);
  CHECK(res.max_rel_residual <= 1e-5);
  CHECK(res.second_derivative_nondecreasing);
  CHECK(res.pass);
}

TEST_CASE("weight ODE residual for loglip stays below 1e-5") {
  const auto w = CarlemanWeight::build(modulus_catalogue("loglip"), 6.0);
  std::vector<double> grid;
  for (int i = 1; i < 120; ++i) grid.push_back(6.0 * i / 120.0);
  const auto res = check_weight_ode(w, grid, 1e-5);
  CHECK(res.max_rel_residual <= 1e-5);
  CHECK(res.second_derivative_nondecreasing);
}

TEST_CASE("ODE right-hand side at tau = 0 equals mu(1) = 1") {
  for (const char* name : {"lip", "loglip"}) {
    const auto mu = modulus_catalogue(name);
    const auto w = CarlemanWeight::build(mu, 1.0);
    const double rhs0 =
        w.Phi_prime(0.0) * w.Phi_prime(0.0) * mu(1.0 / w.Phi_prime(0.0));
    CHECK(rhs0 == 1.0);
  }
}

TEST_CASE("loglip Phi'' is strictly increasing out to tau = 10") {
  // Phi' = exp(e^tau - 1) leaves double range past tau ~ 6.5, so this
  // table is built coarser and queried through the log accessors.
  WeightBuildOptions coarse;
  coarse.knot_step = 0.05;
  const auto w =
      CarlemanWeight::build(modulus_catalogue("loglip"), 10.0, coarse);
  double prev = -std::numeric_limits<double>::infinity();
  for (int tau = 0; tau <= 10; ++tau) {
    const double cur = w.log_Phi_second_fd(static_cast<double>(tau));
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("Phi' = phi^{-1} pointwise from centered differences of Phi") {
  const auto w = CarlemanWeight::build(modulus_catalogue("lip"), 8.0);
  for (double tau : {0.5, 1.0, 2.5, 5.0, 7.5}) {
    const double h = 1e-4;
    const double fd = (w.Phi(tau + h) - w.Phi(tau - h)) / (2.0 * h);
    CHECK(fd == doctest::Approx(w.Phi_prime(tau)).epsilon(1e-5));
  }
}

TEST_CASE("build rejects a modulus that fails validation") {
  Modulus sq{"square", [](double s) { return s * s; }, nullptr};
  CHECK_THROWS_AS(CarlemanWeight::build(sq, 1.0), DomainError);
}

TEST_CASE("tables past the double range of Phi' keep working in logs") {
  // lip: phi^{-1}(tau) = e^tau overflows past tau ~ 709.8
  const auto w = CarlemanWeight::build(modulus_catalogue("lip"), 715.0);
  CHECK(std::isinf(w.phi_inv(714.0)));
  CHECK(w.log_phi_inv(714.0) == doctest::Approx(714.0).epsilon(1e-9));
}

TEST_CASE("unreachable tau_max raises a range error") {
  WeightBuildOptions small;
  small.max_knots = 100'000;
  CHECK_THROWS_AS(
      CarlemanWeight::build(modulus_catalogue("loglip"), 10.0, small),
      WeightRangeError);
}

TEST_CASE("csv export carries the five columns") {
  const auto w = CarlemanWeight::build(modulus_catalogue("lip"), 2.0);
  std::ostringstream os;
  w.write_csv(os);
  const std::string text = os.str();
  CHECK(text.rfind("tau,phi_inv,Phi,Phi_prime,Phi_second\n", 0) == 0);
  CHECK(text.find(',') != std::string::npos);
}
