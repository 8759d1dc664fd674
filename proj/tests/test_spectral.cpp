#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "paraweight/errors.hpp"
#include "paraweight/spectral_ops.hpp"

using namespace paraweight;

namespace {

double rel_l2_diff(const SpectralField& a, const SpectralField& b) {
  const double scale = std::max(a.l2_norm(), b.l2_norm());
  if (scale == 0.0) return 0.0;
  return (a - b).l2_norm() / scale;
}

// plain O(N^2) convolution oracle for products, independent of the FFT path
SpectralField product_oracle_1d(const SpectralField& a,
                                const SpectralField& b) {
  const int n = a.grid().n;
  std::vector<cd> coeffs(a.size(), cd{0.0, 0.0});
  auto coef = [n](const SpectralField& f, int xi) {
    if (xi < -n / 2 || xi >= n / 2) return cd{0.0, 0.0};
    return f.coeffs()[static_cast<std::size_t>(xi >= 0 ? xi : xi + n)];
  };
  for (int xi = -n / 2; xi < n / 2; ++xi) {
    cd sum{0.0, 0.0};
    for (int eta = -n; eta <= n; ++eta)
      sum += coef(a, eta) * coef(b, xi - eta);
    coeffs[static_cast<std::size_t>(xi >= 0 ? xi : xi + n)] = sum;
  }
  return SpectralField::from_coeffs(a.grid(), std::move(coeffs));
}

}  // namespace

TEST_CASE("grid invariants") {
  const TorusGrid g(1, 256);
  CHECK(g.k_max == 9);
  CHECK(g.spacing() == doctest::Approx(2.0 * kPi / 256));
  // chi_{k_max} = 1 on the whole lattice
  CHECK(chi_k(g.k_max, 128.0) == 1.0);
  CHECK_THROWS_AS(TorusGrid(3, 64), ConfigError);
  CHECK_THROWS_AS(TorusGrid(1, 100), ConfigError);
}

TEST_CASE("cutoff profile plateaus, parity, monotonicity") {
  CHECK(chi(0.0) == 1.0);
  CHECK(chi(1.1) == 1.0);
  CHECK(chi(1.9) == 0.0);
  CHECK(chi(2.5) == 0.0);
  CHECK(chi(-1.3) == chi(1.3));
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = chi(1.1 + 0.8 * i / 100.0);
    CHECK(v <= prev + 1e-15);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("samples and coefficients stay consistent") {
  const TorusGrid g(1, 128);
  const CounterRng rng(7);
  const auto u = random_complex_field(g, rng, 1, 40);
  const auto round = SpectralField::from_samples(g, u.samples());
  CHECK(rel_l2_diff(u, round) <= 1e-12);
  // Parseval: node-side and coefficient-side L2 agree
  CHECK(u.l2_norm() == doctest::Approx(u.l2_norm_nodes()).epsilon(1e-12));
}

TEST_CASE("apply_S on single modes") {
  const TorusGrid g(1, 64);
  const auto u = SpectralField::mode(g, 7);
  CHECK(rel_l2_diff(apply_S(u, 3), u) <= 1e-15);  // chi(7/8) = 1
  CHECK(apply_S(u, 1).l2_norm() == 0.0);          // chi(3.5) = 0
  CHECK(apply_S(u, -1).l2_norm() == 0.0);         // S_{-1} = 0
}

TEST_CASE("decompose a single mode across the dyadic seam") {
  const TorusGrid g(1, 64);
  const auto u = SpectralField::mode(g, 7);
  const auto d = decompose(u, 0.0);
  const double w2 = chi(7.0 / 4.0);
  for (int k = 0; k <= g.k_max; ++k) {
    if (k == 2)
      CHECK(d.blocks[k].l2_norm() ==
            doctest::Approx(w2 * u.l2_norm()).epsilon(1e-12));
    else if (k == 3)
      CHECK(d.blocks[k].l2_norm() ==
            doctest::Approx((1.0 - w2) * u.l2_norm()).epsilon(1e-12));
    else
      CHECK(d.blocks[k].l2_norm() <= 1e-14);
  }
  CHECK(rel_l2_diff(d.reconstruct(), u) <= 1e-12);
}

TEST_CASE("constant field lives in block zero") {
  const TorusGrid g(2, 32);
  const auto u = SpectralField::constant(g, cd{1.0, 0.0});
  const auto d = decompose(u, 0.5);
  CHECK(rel_l2_diff(d.blocks[0], u) <= 1e-15);
  for (std::size_t k = 1; k < d.blocks.size(); ++k)
    CHECK(d.blocks[k].l2_norm() == 0.0);
}

TEST_CASE("reconstruction and support certificates for random fields") {
  for (int dim : {1, 2}) {
    const TorusGrid g(dim, dim == 1 ? 256 : 64);
    const CounterRng rng(42);
    const auto u = random_complex_field(g, rng, 11, g.n / 2 - 1);
    const auto d = decompose(u, -0.5);
    CHECK(rel_l2_diff(d.reconstruct(), u) <= 1e-12);

    double peak = 0.0;
    for (const auto& c : u.coeffs()) peak = std::max(peak, std::abs(c));
    for (int k = 1; k <= g.k_max; ++k) {
      const double lo = 1.1 * std::pow(2.0, k - 1);
      const double hi = 1.9 * std::pow(2.0, k);
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double xi = u.freq_norm(i);
        if (xi <= lo || xi >= hi)
          CHECK(std::abs(d.blocks[k].coeffs()[i]) <= 1e-14 * peak);
      }
    }
  }
}

TEST_CASE("blocks of white noise have bounded overlap") {
  const TorusGrid g(1, 256);
  const CounterRng rng(5);
  const auto u = random_complex_field(g, rng, 3, 127);
  const auto d = decompose(u, 0.0);
  double blocks = 0.0;
  for (const auto& b : d.blocks) blocks += b.l2_norm() * b.l2_norm();
  const double total = u.l2_norm() * u.l2_norm();
  CHECK(blocks >= total / 3.0);
  CHECK(blocks <= total * 3.0);
  // oracle: per-frequency sum of squared window values
  for (double xi : {0.0, 1.0, 3.0, 17.0, 100.0}) {
    double s = 0.0;
    for (int k = 0; k <= g.k_max; ++k)
      s += delta_window(k, xi) * delta_window(k, xi);
    CHECK(s >= 1.0 / 3.0);
    CHECK(s <= 3.0);
  }
}

TEST_CASE("dyadic blocks commute") {
  const TorusGrid g(1, 128);
  const CounterRng rng(9);
  const auto u = random_complex_field(g, rng, 2, 63);
  const auto a = apply_delta(apply_delta(u, 4), 5);
  const auto b = apply_delta(apply_delta(u, 5), 4);
  // both are multipliers; the only slack is the product grouping (1 ulp)
  CHECK((a - b).l2_norm() <= 1e-15 * u.l2_norm());
}

TEST_CASE("h_norm on single modes") {
  const TorusGrid g(1, 64);
  const auto one = SpectralField::constant(g, cd{1.0, 0.0});
  for (double s : {-0.5, 0.0, 0.7})
    for (auto m : {NormMethod::direct, NormMethod::lp})
      CHECK(h_norm(one, s, m) ==
            doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-12));

  const auto u = SpectralField::mode(g, 7);
  CHECK(h_norm(u, -0.5, NormMethod::direct) ==
        doctest::Approx(std::pow(50.0, -0.25) * std::sqrt(2.0 * kPi))
            .epsilon(1e-12));
}

TEST_CASE("lp and direct h_norm stay uniformly equivalent") {
  const CounterRng rng(2026);
  for (double s : {-0.5, 0.25, 0.5, 0.75}) {
    double lo = 1e300, hi = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const TorusGrid g(1, 256);
      const auto u = random_complex_field(g, rng, 100 + trial, 120);
      const double r =
          h_norm(u, s, NormMethod::lp) / h_norm(u, s, NormMethod::direct);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    CHECK(hi <= 4.0);
    CHECK(lo >= 0.25);
  }
}

TEST_CASE("lip_norm of sin x") {
  const TorusGrid g(1, 128);
  std::vector<cd> samples(g.nodes());
  for (int i = 0; i < g.n; ++i)
    samples[i] = cd{std::sin(i * g.spacing()), 0.0};
  const auto a = SpectralField::from_samples(g, samples);

  const auto direct = lip_norm(a, NormMethod::direct);
  CHECK(direct.value == doctest::Approx(2.0).epsilon(1e-12));
  const auto lp = lip_norm(a, NormMethod::lp);
  CHECK(lp.value == doctest::Approx(2.0).epsilon(1e-6));

  // single mode dies beyond block 1: decay sequence is {1, 0, 0, ...}
  CHECK(direct.dyadic_decay[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t k = 1; k < direct.dyadic_decay.size(); ++k)
    CHECK(direct.dyadic_decay[k] <= 8.0 * direct.value);
}

TEST_CASE("lip_norm of a constant and the complex rejection") {
  const TorusGrid g(1, 64);
  CHECK(lip_norm(SpectralField::constant(g, cd{-3.0, 0.0}),
                 NormMethod::direct)
            .value == doctest::Approx(3.0));
  CHECK_THROWS_AS(lip_norm(SpectralField::mode(g, 3), NormMethod::direct),
                  DomainError);
}

TEST_CASE("bernstein ratios") {
  const TorusGrid g(1, 128);
  CHECK(bernstein_check(SpectralField::mode(g, 3), 2, 0) ==
        doctest::Approx(3.0));
  CHECK(bernstein_check(SpectralField::constant(g, cd{2.0, 0.0}), 0, 0) ==
        0.0);
  const CounterRng rng(17);
  const auto u = random_complex_field(g, rng, 5, 63);
  for (int nu = 0; nu <= g.k_max; ++nu) {
    const auto block = apply_delta(u, nu);
    if (block.l2_norm() == 0.0) continue;
    CHECK(bernstein_check(block, nu, 0) <= std::pow(2.0, nu + 1));
  }
  // a mode outside the claimed block is rejected
  CHECK_THROWS_AS(bernstein_check(SpectralField::mode(g, 40), 2, 0),
                  PreconditionError);
}

TEST_CASE("dealiased products match the convolution oracle") {
  const TorusGrid g(1, 64);
  const CounterRng rng(31);
  const auto a = random_real_field(g, rng, 21, 20);
  const auto u = random_complex_field(g, rng, 22, 25);
  CHECK(rel_l2_diff(dealiased_product(a, u), product_oracle_1d(a, u)) <=
        1e-13);
}

TEST_CASE("norm equivalence is stable when N doubles (same seeds)") {
  const CounterRng rng(77);
  for (double s : {0.25, 0.5, 0.75}) {
    double c256 = 0.0, c512 = 0.0;
    for (int n : {256, 512}) {
      const TorusGrid g(1, n);
      double lo = 1e300, hi = 0.0;
      for (int trial = 0; trial < 40; ++trial) {
        const auto u = random_complex_field(g, rng, 500 + trial, 64);
        const double r =
            h_norm(u, s, NormMethod::lp) / h_norm(u, s, NormMethod::direct);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      const double c = std::max(hi, 1.0 / lo);
      (n == 256 ? c256 : c512) = c;
    }
    CHECK(c256 <= 4.0);
    CHECK(c512 <= 1.10 * c256);
  }
}
