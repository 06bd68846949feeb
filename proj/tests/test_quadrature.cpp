#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "fdnet/quadrature.hpp"

using namespace fdnet;

namespace {

constexpr double kPi = std::numbers::pi;

// Periodic trapezoid rule; spectrally accurate for smooth periodic integrands.
template <class F>
double periodic_trapezoid(const F& f, std::size_t n) {
  const double h = 2.0 * kPi / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += f(h * static_cast<double>(i));
  return sum * h;
}

}  // namespace

TEST(IntegrateFinite, Polynomial) {
  const auto r = integrate_finite([](double x) { return x; }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 0.5, 1e-15);
  EXPECT_GT(r.evaluations, 0u);
}

TEST(IntegrateFinite, CosineDenominatorClosedForm) {
  const double exact = 2.0 * kPi / std::sqrt(0.75);
  const auto r =
      integrate_finite([](double phi) { return 1.0 / (1.0 + 0.5 * std::cos(phi)); }, 0.0, 2.0 * kPi,
                       {.rel_tol = 1e-12});
  EXPECT_NEAR(r.value, exact, 1e-11 * exact);
  EXPECT_LE(std::abs(r.value - exact), std::max(r.abs_error_estimate, 1e-14 * exact));
}

TEST(IntegrateFinite, PairShapedIntegrandAgainstDenseTrapezoid) {
  auto f = [](double phi) {
    const double d2 = 2.0 + 2.0 * std::cos(phi);
    return d2 * d2 / (d2 * d2 + 1.0);  // 1 / (1 + d^-4), finite at phi = pi
  };
  const double oracle = periodic_trapezoid(f, 10'000'000);
  const auto r = integrate_finite(f, 0.0, 2.0 * kPi, {.rel_tol = 1e-12});
  EXPECT_NEAR(r.value, oracle, 1e-9 * oracle);
}

TEST(IntegrateFinite, ErrorEstimateBoundsTrueError) {
  struct Case {
    double (*f)(double);
    double a, b, exact;
  };
  const std::vector<Case> cases = {
      {[](double x) { return std::exp(x); }, 0.0, 1.0, std::numbers::e - 1.0},
      {[](double x) { return std::sqrt(x); }, 0.0, 1.0, 2.0 / 3.0},
      {[](double x) { return 1.0 / (1.0 + x * x); }, -5.0, 5.0, 2.0 * std::atan(5.0)},
      {[](double x) { return std::log(x); }, 0.0, 1.0, -1.0},
  };
  for (const auto& c : cases) {
    for (double tol : {1e-4, 1e-8, 1e-11}) {
      const auto r = integrate_finite(c.f, c.a, c.b, {.rel_tol = tol});
      const double err = std::abs(r.value - c.exact);
      EXPECT_LE(err, r.abs_error_estimate + 4e-16 * std::abs(c.exact));
      EXPECT_LE(err, tol * std::abs(c.exact) * 1.0001);
    }
  }
}

TEST(IntegrateFinite, Linearity) {
  auto f = [](double x) { return std::sin(3.0 * x) + x * x; };
  const auto base = integrate_finite(f, 0.0, 2.0, {.rel_tol = 1e-12});
  for (double c : {-1.0, 10.0}) {
    const auto scaled = integrate_finite([&](double x) { return c * f(x); }, 0.0, 2.0,
                                         {.rel_tol = 1e-12});
    EXPECT_NEAR(scaled.value, c * base.value, 1e-12 * std::abs(c * base.value));
  }
}

TEST(IntegrateFinite, Additivity) {
  auto f = [](double x) { return std::exp(-x) * std::cos(x); };
  const QuadratureOptions o{.rel_tol = 1e-12};
  const double whole = integrate_finite(f, 0.0, 3.0, o).value;
  const double split = integrate_finite(f, 0.0, 1.2, o).value + integrate_finite(f, 1.2, 3.0, o).value;
  EXPECT_NEAR(whole, split, 1e-12);
}

TEST(IntegrateFinite, EmptyAndReversedIntervals) {
  EXPECT_EQ(integrate_finite([](double) { return 1.0; }, 2.0, 2.0).value, 0.0);
  EXPECT_THROW(integrate_finite([](double) { return 1.0; }, 2.0, 1.0), std::invalid_argument);
}

TEST(IntegrateFinite, BudgetExhaustionCarriesPartialResult) {
  auto f = [](double x) { return std::sin(1.0 / x); };
  try {
    integrate_finite(f, 1e-6, 1.0, {.rel_tol = 1e-14, .max_evaluations = 150});
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_GT(e.partial().evaluations, 0u);
    EXPECT_LE(e.partial().evaluations, 150u);
    EXPECT_TRUE(std::isfinite(e.partial().value));
  }
}

TEST(IntegrateFinite, NonFiniteIntegrandThrows) {
  EXPECT_THROW(integrate_finite([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0,
                                {.max_evaluations = 1'000'000}),
               QuadratureError);
  EXPECT_THROW(integrate_finite([](double) { return std::nan(""); }, 0.0, 1.0), QuadratureError);
}

TEST(IntegrateSemiInfinite, ClosedForms) {
  const QuadratureOptions o{.rel_tol = 1e-11};
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, o).value, 1.0,
              1e-11);
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return x / (1.0 + x * x * x * x); }, 0.0, o)
                  .value,
              kPi / 4.0, 1e-11);
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return std::pow(x, -3.0); }, 1.0, o).value, 0.5,
              1e-11);
}

TEST(IntegrateSemiInfinite, PowerTailVariantAgrees) {
  const QuadratureOptions o{.rel_tol = 1e-11};
  auto f = [](double x) { return x / (1.0 + x * x * x * x); };
  const auto r = integrate_semi_infinite(f, 0.0, PowerTail{3.0, 2.0}, o);
  EXPECT_NEAR(r.value, kPi / 4.0, 1e-11);
  // Slow algebraic decay: x^-1.5 on [1, inf) = 2.
  const auto slow =
      integrate_semi_infinite([](double x) { return std::pow(x, -1.5); }, 1.0, PowerTail{1.5, 3.0}, o);
  EXPECT_NEAR(slow.value, 2.0, 2e-11);
}

TEST(IntegrateSemiInfinite, DivergentIntegrandThrows) {
  EXPECT_THROW(integrate_semi_infinite([](double x) { return 1.0 / x; }, 1.0,
                                       {.rel_tol = 1e-9, .max_evaluations = 100'000}),
               QuadratureError);
}

TEST(IntegrateSemiInfinite, InvalidPowerTail) {
  auto f = [](double x) { return std::exp(-x); };
  EXPECT_THROW(integrate_semi_infinite(f, 0.0, PowerTail{1.0, 1.0}), std::domain_error);
  EXPECT_THROW(integrate_semi_infinite(f, 2.0, PowerTail{3.0, 1.0}), std::invalid_argument);
}

TEST(IntegrateFinite, ConcurrentCallsAreIndependent) {
  auto f = [](double x) { return std::exp(-x * x); };
  const double ref = integrate_finite(f, -3.0, 3.0, {.rel_tol = 1e-12}).value;
  std::vector<double> out(8, 0.0);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < out.size(); ++i) {
    threads.emplace_back([&, i] { out[i] = integrate_finite(f, -3.0, 3.0, {.rel_tol = 1e-12}).value; });
  }
  for (auto& t : threads) t.join();
  for (double v : out) EXPECT_EQ(v, ref);
}
