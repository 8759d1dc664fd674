#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "paraweight/errors.hpp"
#include "paraweight/mollify.hpp"
#include "paraweight/quadrature.hpp"

using namespace paraweight;

TEST_CASE("kernel is a normalized even bump on [-1/2, 1/2]") {
  const MollifierKernel k(0.25);
  CHECK(k.rho(0.5) == 0.0);
  CHECK(k.rho(-0.5) == 0.0);
  CHECK(k.rho(0.6) == 0.0);
  CHECK(k.rho(0.2) == k.rho(-0.2));
  CHECK(k.rho(0.0) > 0.0);
  const double mass =
      adaptive_simpson([&k](double s) { return k.rho(s); }, -0.5, 0.5, 1e-11);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("kernel width validation") {
  CHECK_THROWS_AS(MollifierKernel(0.0), ConfigError);
  CHECK_THROWS_AS(MollifierKernel(0.6), ConfigError);
  CHECK_NOTHROW(MollifierKernel(0.5));
}

TEST_CASE("under-resolved kernels are rejected") {
  const TimeGrid tg(1.0, 64);  // dt = 1/63
  const TorusGrid g(1, 4);
  const auto a = SpaceTimeField::tensor(tg, [](double) { return 1.0; },
                                        SpectralField::constant(g, 1.0));
  CHECK_THROWS_AS(mollify_time(a, MollifierKernel(0.05)), ConfigError);
}

TEST_CASE("constants mollify to themselves exactly") {
  const TimeGrid tg(1.0, 256);
  const TorusGrid g(1, 4);
  const auto a = SpaceTimeField::tensor(tg, [](double) { return 1.0; },
                                        SpectralField::constant(g, 3.25));
  const auto smooth = mollify_time(a, MollifierKernel(0.125));
  double worst = 0.0;
  for (int i = 0; i < tg.samples; ++i)
    worst = std::max(worst,
                     (smooth.slice(i) - a.slice(i)).max_abs());
  CHECK(worst <= 1e-12);
}

TEST_CASE("linear profiles pass through away from the boundary") {
  // rho is even, so the first moment vanishes and a(t) = t is reproduced
  const int M = 1024;
  const double T = 1.0;
  std::vector<double> a(M);
  for (int i = 0; i < M; ++i) a[i] = T * i / (M - 1);
  const double eps = 1.0 / 16.0;
  const auto smooth = mollify_profile(a, T / (M - 1), MollifierKernel(eps));
  double worst = 0.0;
  for (int i = 0; i < M; ++i) {
    const double t = T * i / (M - 1);
    if (t < 0.75 * eps || t > T - 0.75 * eps) continue;
    worst = std::max(worst, std::fabs(smooth[i] - a[i]));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("mollified output is smooth in t") {
  const int M = 2048;
  std::vector<double> a(M);
  for (int i = 0; i < M; ++i)
    a[i] = std::sqrt(std::fabs(1.0 * i / (M - 1) - 0.5));
  const double dt = 1.0 / (M - 1);
  const auto smooth = mollify_profile(a, dt, MollifierKernel(1.0 / 32.0));
  // second differences of the kink collapse after smoothing
  double raw = 0.0, mol = 0.0;
  for (int i = 1; i + 1 < M; ++i) {
    raw = std::max(raw, std::fabs(a[i + 1] - 2 * a[i] + a[i - 1]));
    mol = std::max(mol,
                   std::fabs(smooth[i + 1] - 2 * smooth[i] + smooth[i - 1]));
  }
  CHECK(mol < 0.1 * raw);
}

TEST_CASE("mollification constants for the sqrt kink") {
  // a(t) = |t - T/2|^{1/2} with mu = sqrt: both measured constants stay
  // within a factor two across eps = 2^{-2 nu}, nu = 2..6
  const auto mu = modulus_catalogue("sqrt");
  const int M = (1 << 16) + 1;
  const auto rep = probe_mollification(mu, 1.0, M, 2, 6);
  INFO(rep.notes);
  CHECK(rep.pass);
}

TEST_CASE("measured constants match the analytic scale") {
  // a_eps(T/2) = sqrt(eps) int |r|^{1/2} rho(r) dr, so c_sup is close to
  // that moment of the kernel
  const auto mu = modulus_catalogue("sqrt");
  const int M = (1 << 14) + 1;
  std::vector<double> profile(M);
  for (int i = 0; i < M; ++i)
    profile[i] = std::sqrt(std::fabs(1.0 * i / (M - 1) - 0.5));
  const MollifierKernel k(0.25);
  const double moment = adaptive_simpson(
      [&k](double r) { return std::sqrt(std::fabs(r)) * k.rho(r); }, -0.5,
      0.5, 1e-11);
  const auto c = mollification_constants(profile, 1.0, mu, 1.0 / 16.0);
  CHECK(c.c_sup == doctest::Approx(moment).epsilon(0.05));
}
