#include <cmath>
#include <complex>

#include "doctest.h"
#include "grn/quadrature.hpp"

using namespace grn;

TEST_CASE("composite Simpson is exact on cubics") {
  auto cubic = [](double x) { return 1.0 + x - 3.0 * x * x + 2.0 * x * x * x; };
  // exact: x + x^2/2 - x^3 + x^4/2 on [0,2] -> 2 + 2 - 8 + 8 = 4
  CHECK(simpson(cubic, 0.0, 2.0, 1) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(simpson(cubic, 0.0, 2.0, 7) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("composite Simpson converges at fourth order") {
  auto f = [](double x) { return std::exp(x) * std::cos(3.0 * x); };
  const double exact =
      (std::exp(1.0) * (std::cos(3.0) + 3.0 * std::sin(3.0)) - 1.0) / 10.0;
  const double e1 = std::abs(simpson(f, 0.0, 1.0, 8) - exact);
  const double e2 = std::abs(simpson(f, 0.0, 1.0, 16) - exact);
  CHECK(e1 / e2 > 12.0);  // ~16 for a fourth-order rule
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("Simpson handles complex integrands") {
  auto f = [](double x) { return std::complex<double>(x, x * x); };
  const auto v = simpson(f, 0.0, 1.0, 4);
  CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(v.imag() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("split rule places panel boundaries on kinks") {
  // |x - 1/3| has a kink; plain Simpson stalls at low order across it,
  // the split rule is exact once the kink is a panel boundary.
  const double c = 1.0 / std::sqrt(2.0);
  auto f = [&](double x) { return std::abs(x - c); };
  const double exact = (c * c + (1.0 - c) * (1.0 - c)) / 2.0;
  const double split = simpson_split(f, 0.0, 1.0, {c}, 5);
  CHECK(split == doctest::Approx(exact).epsilon(1e-14));
  // 5 panels put no node on the kink: the plain rule keeps a visible error
  const double plain = simpson(f, 0.0, 1.0, 5);
  CHECK(std::abs(plain - exact) > 1e-6);
}

TEST_CASE("split rule tolerates duplicate, outside, and endpoint cuts") {
  auto f = [](double x) { return x * x; };
  const double v = simpson_split(f, 0.0, 1.0, {0.0, 0.5, 0.5, 2.0, -1.0}, 10);
  CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("split rule distributes panels proportionally") {
  // A segment never gets fewer than 2 panels, so short segments stay sane.
  auto f = [](double x) { return std::sin(20.0 * x); };
  const double exact = (1.0 - std::cos(20.0)) / 20.0;
  const double v = simpson_split(f, 0.0, 1.0, {1e-4}, 2000);
  CHECK(v == doctest::Approx(exact).epsilon(1e-9));
}
