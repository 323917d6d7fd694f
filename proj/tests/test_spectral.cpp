#include <cmath>
#include <numbers>

#include "doctest.h"
#include "iim/fourier.hpp"
#include "iim/opnorm.hpp"
#include "iim/spectral_ops.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace iim;
using iim::testing::max_abs_diff;
using iim::testing::random_field;
using iim::testing::random_mean_zero;
using iim::testing::random_vector_field;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("dft concentrates a pure mode") {
  GridSpec spec(8);
  const int m = spec.points();
  auto f = GridFunctionD::from_function(
      spec, [&](double x, double y) { return std::cos(2 * x + y); });
  auto s = dft(f);
  // Re e_k = (e_k + e_-k)/2: two coefficients of magnitude M^2/2 each.
  CHECK(std::abs(s.at(2, 1) - std::complex<double>(m * m / 2.0, 0.0)) < 1e-9);
  CHECK(std::abs(s.at(-2, -1) - std::complex<double>(m * m / 2.0, 0.0)) < 1e-9);
  double rest = 0.0;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      if (!((s.freq(i) == 2 && s.freq(j) == 1) || (s.freq(i) == -2 && s.freq(j) == -1)))
        rest = std::max(rest, std::abs(s.coeffs()(i, j)));
  CHECK(rest < 1e-9);
}

TEST_CASE("dft/idft roundtrip and Parseval") {
  GridSpec spec(16);
  auto f = random_field(spec, 21);
  auto back = idft(dft(f));
  CHECK(max_abs_diff(f, back) <= 1e-12 * f.max_abs());

  // sum_j |f|^2 = (2 pi)^-d sum_k |F|^2 h^d with L = pi
  const double h = spec.spacing();
  const double lhs = f.values().abs2().sum();
  const double rhs = dft(f).coeffs().abs2().sum() * h * h / (4.0 * kPi * kPi);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("solve_laplacian_h") {
  GridSpec spec(8);
  const double h = spec.spacing();

  SUBCASE("eigenrelation on a cosine mode") {
    auto f = GridFunctionD::from_function(spec, [](double x, double) { return std::cos(x); });
    const double sigma = -(4.0 / (h * h)) * std::pow(std::sin(h / 2.0), 2);
    auto g = solve_laplacian_h(f);
    CHECK(max_abs_diff(g, f * (1.0 / sigma)) < 1e-12);
  }

  SUBCASE("zero maps to zero") {
    GridFunctionD f(spec);
    CHECK(solve_laplacian_h(f).max_abs() == 0.0);
  }

  SUBCASE("residual on random mean-zero input") {
    auto f = random_mean_zero(spec, 2);
    auto g = solve_laplacian_h(f);
    CHECK(std::abs(g.mean()) < 1e-13);
    CHECK(max_abs_diff(laplacian_h(g), f) <= 1e-10 * f.max_abs());
  }

  SUBCASE("rejects inputs with mean") {
    auto f = GridFunctionD::from_function(spec, [](double, double) { return 1.0; });
    CHECK_THROWS_AS(solve_laplacian_h(f), NotMeanZero);
  }
}

TEST_CASE("solve_wide_laplacian") {
  GridSpec spec(8);

  SUBCASE("centered divergences are valid inputs") {
    auto v = random_vector_field(spec, 33);
    auto f = divergence_h(v);
    auto g = solve_wide_laplacian(f);
    CHECK(max_abs_diff(wide_laplacian(g), f) <= 1e-10 * f.max_abs());
  }

  SUBCASE("checkerboard content is rejected") {
    GridFunctionD f(spec);
    for (int j = 0; j < spec.points(); ++j)
      for (int i = 0; i < spec.points(); ++i) f(i, j) = ((i + j) % 2 == 0) ? 1.0 : -1.0;
    CHECK_THROWS_AS(solve_wide_laplacian(f), NotInRange);
  }

  SUBCASE("eigenrelation on k=(1,0)") {
    const double h = spec.spacing();
    auto f = GridFunctionD::from_function(spec, [](double x, double) { return std::cos(x); });
    const double sigma0 = -std::pow(std::sin(h), 2) / (h * h);
    CHECK(max_abs_diff(solve_wide_laplacian(f), f * (1.0 / sigma0)) < 1e-12);
  }
}

TEST_CASE("exact projection P0") {
  GridSpec spec(8);

  SUBCASE("annihilates discrete gradients") {
    auto phi = random_field(spec, 4);
    auto v = gradient_h(phi);
    CHECK(project_P0(v).max_abs() < 1e-10 * (1.0 + v.max_abs()));
  }

  SUBCASE("fixes divergence-free fields") {
    auto psi = random_field(spec, 5);
    VectorGridFunctionD v{-1.0 * centered_diff(psi, 1), centered_diff(psi, 0)};
    CHECK(std::abs(divergence_h(v).max_abs()) < 1e-11 / spec.spacing());
    CHECK(max_abs_diff(project_P0(v), v) < 1e-11);
  }

  SUBCASE("idempotent and output divergence-free") {
    auto v = random_vector_field(spec, 6);
    auto pv = project_P0(v);
    CHECK(divergence_h(pv).max_abs() < 1e-10 * v.max_abs() / spec.spacing());
    CHECK(max_abs_diff(project_P0(pv), pv) < 1e-12 * (1.0 + pv.max_abs()));
  }
}

TEST_CASE("approximate projection tildeP") {
  GridSpec spec(8);

  SUBCASE("divergence-free fields unchanged") {
    auto psi = random_field(spec, 7);
    VectorGridFunctionD v{-1.0 * centered_diff(psi, 1), centered_diff(psi, 0)};
    CHECK(max_abs_diff(project_tildeP(v), v) < 1e-11);
  }

  SUBCASE("tildeP = P0 + A(I - P0)") {
    auto v = random_vector_field(spec, 8);
    auto pt = project_tildeP(v);
    auto p0 = project_P0(v);
    VectorGridFunctionD residue = v - p0;
    VectorGridFunctionD a_part{apply_A(residue[0]), apply_A(residue[1])};
    CHECK(max_abs_diff(pt - p0, a_part) < 1e-10 * (1.0 + v.max_abs()));
  }

  SUBCASE("P0 tildeP = P0") {
    auto v = random_vector_field(spec, 9);
    CHECK(max_abs_diff(project_P0(project_tildeP(v)), project_P0(v)) <
          1e-10 * (1.0 + v.max_abs()));
  }
}

TEST_CASE("operator A") {
  SUBCASE("multiplier on the (1,0) mode") {
    GridSpec spec(8);
    const double h = spec.spacing();
    auto f = GridFunctionD::from_function(spec, [](double x, double) { return std::cos(x); });
    const double mult = std::pow(std::sin(h / 2.0), 2);
    CHECK(max_abs_diff(apply_A(f), f * mult) < 1e-13);
  }

  SUBCASE("zero in, zero out") {
    GridFunctionD f(GridSpec(8));
    CHECK(apply_A(f).max_abs() == 0.0);
  }

  SUBCASE("multiplier stays in [0, 2] over the whole lattice") {
    for (int n : {8, 16, 32, 64, 128, 256}) {
      GridSpec spec(n);
      Symbol a = symbols::op_A(spec);
      double lo = 1e300, hi = -1e300;
      for (int ky = -n; ky < n; ++ky)
        for (int kx = -n; kx < n; ++kx) {
          const double v = a(kx, ky).real();
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      CHECK(lo >= 0.0);
      CHECK(hi <= 2.0);
    }
  }
}

TEST_CASE("Crank-Nicolson operators") {
  GridSpec spec(8);
  const double tau = 0.5 * spec.spacing();

  SUBCASE("constants pass through") {
    auto f = GridFunctionD::from_function(spec, [](double, double) { return 4.0; });
    CHECK(max_abs_diff(cn_resolvent(f, tau), f) < 1e-13);
    CHECK(max_abs_diff(cn_power(f, tau, 17), f) < 1e-13);
  }

  SUBCASE("resolvent multiplier lies in (0, 1]") {
    Symbol r = symbols::cn_resolvent(spec, tau);
    for (int ky = -8; ky < 8; ++ky)
      for (int kx = -8; kx < 8; ++kx) {
        const double v = r(kx, ky).real();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
      }
  }

  SUBCASE("resolvent residual") {
    auto f = random_field(spec, 12);
    auto g = cn_resolvent(f, tau);
    GridFunctionD res = g - laplacian_h(g) * (tau / 2.0);
    CHECK(max_abs_diff(res, f) <= 1e-10 * f.max_abs());
  }

  SUBCASE("power composes the step") {
    auto f = random_field(spec, 13);
    auto two = cn_power(f, tau, 2);
    auto stepwise = cn_power(cn_power(f, tau, 1), tau, 1);
    CHECK(max_abs_diff(two, stepwise) < 1e-11);
  }
}

TEST_CASE("symbol periodicity") {
  GridSpec spec(8);
  Symbol s = symbols::sigma_h(spec);
  for (int kx : {-3, 1, 5})
    for (int ky : {0, 2, -7}) {
      CHECK(std::abs(s(kx, ky) - s(kx + 16, ky)) < 1e-13);
      CHECK(std::abs(s(kx, ky) - s(kx, ky - 32)) < 1e-13);
    }
}

TEST_CASE("kernel l1 norms") {
  SUBCASE("identity symbol has norm one") {
    GridSpec spec(8);
    CHECK(maxnorm_of_multiplier(symbols::identity(spec), spec) == doctest::Approx(1.0));
  }

  SUBCASE("norm of A is h-uniform") {
    double prev = -1.0;
    for (int n : {16, 32, 64, 128}) {
      GridSpec spec(n);
      const double v = maxnorm_of_multiplier(symbols::op_A(spec), spec);
      if (prev > 0) CHECK(v / prev <= 1.05);
      prev = v;
    }
  }

  SUBCASE("norm of D^2 inv-laplacian fits c1 + c2 |log h|") {
    std::vector<double> vals, logs;
    for (int n : {16, 32, 64, 128}) {
      GridSpec spec(n);
      Symbol d = symbols::forward_diff(spec, 0);
      Symbol sym = d * d * symbols::inv_sigma_h(spec);
      vals.push_back(maxnorm_of_multiplier(sym, spec));
      logs.push_back(std::abs(std::log(spec.spacing())));
    }
    // least squares fit
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(vals.size());
    for (int i = 0; i < n; ++i) {
      sx += logs[i];
      sy += vals[i];
      sxx += logs[i] * logs[i];
      sxy += logs[i] * vals[i];
    }
    const double c2 = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double c1 = (sy - c2 * sx) / n;
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(c1 + c2 * logs[i] - vals[i]) <= 0.10 * vals[i]);
  }

  SUBCASE("dense assembly oracle agrees at N=8") {
    GridSpec spec(8);
    Symbol inv = symbols::inv_sigma_h(spec);
    const double exact = maxnorm_of_multiplier(inv, spec);
    const double dense = iim::testing::dense_opnorm(
        spec, [&](const GridFunctionD& f) { return apply_multiplier(f, inv); });
    CHECK(dense == doctest::Approx(exact).epsilon(1e-10));
    const double lower = iim::testing::sign_vector_lower_bound(
        spec, [&](const GridFunctionD& f) { return apply_multiplier(f, inv); }, 20, 77);
    CHECK(lower <= exact * (1.0 + 1e-12));
  }
}

TEST_CASE("multiplier norm bound from symbol sums") {
  GridSpec spec(16);

  SUBCASE("zero symbol gives zero") {
    Symbol zero{spec, [](int, int) -> std::complex<double> { return 0.0; }};
    CHECK(multiplier_norm_bound(zero, spec, 2) == 0.0);
  }

  SUBCASE("bound for A is finite and h-uniform") {
    double prev = -1.0;
    for (int n : {16, 32, 64, 128}) {
      GridSpec s(n);
      const double b = multiplier_norm_bound(symbols::op_A(s), s, 2);
      CHECK(std::isfinite(b));
      if (prev > 0) CHECK(b / prev <= 1.05);
      prev = b;
    }
  }

  SUBCASE("dominates the exact norm on random trigonometric symbols") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const double w = std::numbers::pi / spec.n;
    for (int trial = 0; trial < 5; ++trial) {
      const double c0 = dist(rng), c1 = dist(rng), c2 = dist(rng), c3 = dist(rng);
      Symbol sym{spec, [=](int kx, int ky) -> std::complex<double> {
                   return c0 + c1 * std::cos(kx * w) + c2 * std::sin(ky * w) +
                          c3 * std::cos(2 * kx * w) * std::cos(ky * w);
                 }};
      const double exact = maxnorm_of_multiplier(sym, spec);
      const double bound = multiplier_norm_bound(sym, spec, 2);
      CHECK(exact <= bound * (1.0 + 1e-12));
    }
  }
}
