#include "osmot/objective.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace osmot;

namespace {
const double kSqrt3 = std::sqrt(3.0);
const Point2 kEq0(0, 0), kEq1(1, 0), kEq2(0.5, kSqrt3 / 2);
const ObjectiveParams kDefault{};
}  // namespace

TEST_CASE("element objective reference values") {
  // Equilateral: R/r = 2 and R = 1/sqrt(3), so w = 8/sqrt(3).
  CHECK(element_objective(kEq0, kEq1, kEq2, kDefault) == doctest::Approx(8 / kSqrt3).epsilon(1e-14));
  CHECK(element_objective(kEq0, kEq1, kEq2, kDefault) == doctest::Approx(4.618802).epsilon(1e-6));
  CHECK(element_objective<double>(2 * kEq0, 2 * kEq1, 2 * kEq2, kDefault) == doctest::Approx(9.237604).epsilon(1e-6));
  CHECK(element_objective(kEq0, kEq2, kEq1, kDefault) == std::numeric_limits<double>::infinity());
  CHECK(element_objective(Point2(0, 0), Point2(1, 0), Point2(2, 0), kDefault) == std::numeric_limits<double>::infinity());

  ObjectiveParams half = kDefault;
  half.r_ref = 0.5;
  CHECK(element_objective(kEq0, kEq1, kEq2, half) == doctest::Approx(16 / kSqrt3).epsilon(1e-14));
}

TEST_CASE("closed form agrees with the definition-based oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = testing::random_triangle(rng);
    const double r_ref = testing::uniform(rng, 0.2, 3.0);
    const double want = static_cast<double>(
        testing::oracle_objective(testing::widen(p[0]), testing::widen(p[1]), testing::widen(p[2]), r_ref));
    CHECK(element_objective(p[0], p[1], p[2], ObjectiveParams{1, 3, r_ref}) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("exact gradient matches central differences of the oracle") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = testing::random_triangle(rng);
    const auto gh = element_grad_hess_exact(p[0], p[1], p[2], 1.0);
    CHECK(testing::rel_err(gh.grad, testing::fd_gradient(p[0], p[1], p[2], 1.0)) <= 1e-5);
    CHECK(gh.value == doctest::Approx(element_objective(p[0], p[1], p[2], kDefault)).epsilon(1e-13));
  }
}

TEST_CASE("exact Hessian matches differences of the exact gradient and is symmetric") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = testing::random_triangle(rng);
    const auto gh = element_grad_hess_exact(p[0], p[1], p[2], 1.0);
    const double h = 1e-6 * std::max({(p[1] - p[0]).norm(), (p[2] - p[1]).norm(), (p[0] - p[2]).norm()});
    const auto J = testing::fd_jacobian(
        [&](const Point2& x) -> Eigen::Vector2d { return element_grad_hess_exact(x, p[1], p[2], 1.0).grad; }, p[0], h);
    CHECK(testing::rel_err(gh.hessian(), J) <= 1e-4);
    CHECK(gh.hessian() == gh.hessian().transpose());
  }
}

TEST_CASE("Hessian against second differences of the long double oracle") {
  // Independent of the closed-form gradient.
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::random_triangle(rng, 0.2);
    const auto gh = element_grad_hess_exact(p[0], p[1], p[2], 1.0);
    const long double h = 1e-4L * std::max({(p[1] - p[0]).norm(), (p[2] - p[1]).norm(), (p[0] - p[2]).norm()});
    const auto q0 = testing::widen(p[0]), q1 = testing::widen(p[1]), q2 = testing::widen(p[2]);
    auto f = [&](long double dx, long double dy) {
      return testing::oracle_objective(testing::LPoint(q0.x() + dx, q0.y() + dy), q1, q2, 1.0L);
    };
    Eigen::Matrix2d H;
    H(0, 0) = static_cast<double>((f(h, 0) - 2 * f(0, 0) + f(-h, 0)) / (h * h));
    H(1, 1) = static_cast<double>((f(0, h) - 2 * f(0, 0) + f(0, -h)) / (h * h));
    H(0, 1) = H(1, 0) = static_cast<double>((f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h));
    CHECK(testing::rel_err(gh.hessian(), H) <= 1e-4);
  }
}

TEST_CASE("r_ref scales value, gradient and Hessian alike") {
  std::mt19937_64 rng(25);
  const auto p = testing::random_triangle(rng);
  const auto g1 = element_grad_hess_exact(p[0], p[1], p[2], 1.0);
  const auto g4 = element_grad_hess_exact(p[0], p[1], p[2], 4.0);
  CHECK(g4.value == doctest::Approx(g1.value / 4).epsilon(1e-14));
  CHECK(g4.grad.x() == doctest::Approx(g1.grad.x() / 4).epsilon(1e-14));
  CHECK(g4.hxy == doctest::Approx(g1.hxy / 4).epsilon(1e-14));
  CHECK(g4.hyy == doctest::Approx(g1.hyy / 4).epsilon(1e-14));
}

TEST_CASE("derivatives throw on inverted elements") {
  CHECK_THROWS_AS(element_grad_hess_exact(kEq0, kEq2, kEq1, 1.0), DegenerateElement);
  CHECK_THROWS_AS(element_grad_hess(kEq0, kEq2, kEq1, ObjectiveParams{2, 2, 1}), DegenerateElement);
}

TEST_CASE("hexagon ball is stationary at its centre") {
  const Mesh m = testing::hexagon_ball();
  const Ball& ball = *m.ball(0);
  CHECK(ball_objective(m, ball, Point2::Zero(), kDefault) == doctest::Approx(27.712813).epsilon(1e-7));
  const auto gh = ball_grad_hess(m, ball, Point2::Zero(), kDefault);
  CHECK(gh.grad.norm() <= 1e-12);
  CHECK(gh.hessian_det() > 0);
  CHECK(gh.hxx > 0);
}

TEST_CASE("ball objective respects per-element reference radii") {
  Mesh m = testing::hexagon_ball();
  const double base = ball_objective(m, *m.ball(0), Point2::Zero(), kDefault);
  m.set_element_rref(0, 0.5);
  CHECK(ball_objective(m, *m.ball(0), Point2::Zero(), kDefault) == doctest::Approx(base * 7 / 6).epsilon(1e-13));
}

TEST_CASE("ball objective is infinite once any element inverts") {
  const Mesh m = testing::hexagon_ball();
  CHECK(ball_objective(m, *m.ball(0), Point2(1.5, 0), kDefault) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(ball_grad_hess(m, *m.ball(0), Point2(1.5, 0), kDefault), DegenerateElement);
}

TEST_CASE("bisector family: shape factor minimal at the equilateral apex, w stationary where the scan says") {
  // Apex (0.5, y) over the unit base. The size factor R pulls the minimum of w
  // below the equilateral height; (R/r)^3 alone is minimal there.
  const double y_eq = kSqrt3 / 2;
  auto w = [](double y) { return element_objective(Point2(0.5, y), Point2(0, 0), Point2(1, 0), kDefault); };
  auto shape = [&](double y) {
    return w(y) / triangle_geometry(Point2(0.5, y), Point2(0, 0), Point2(1, 0)).R;
  };
  double best_shape_y = 0, best_w_y = 0, best_shape = INFINITY, best_w = INFINITY;
  const double step = 1e-4;
  for (double y = 0.2; y < 3.0; y += step) {
    if (shape(y) < best_shape) best_shape = shape(y), best_shape_y = y;
    const long double wo = testing::oracle_objective({0.5L, y}, {0, 0}, {1, 0}, 1.0L);
    if (wo < best_w) best_w = static_cast<double>(wo), best_w_y = y;
  }
  CHECK(std::abs(best_shape_y - y_eq) <= step);
  CHECK(shape(y_eq) == doctest::Approx(8.0).epsilon(1e-13));

  // The analytic derivative along the bisector changes sign at the scanned minimum.
  auto dwdy = [](double y) { return element_grad_hess_exact(Point2(0.5, y), Point2(0, 0), Point2(1, 0), 1.0).grad.y(); };
  CHECK(dwdy(best_w_y - 2 * step) < 0);
  CHECK(dwdy(best_w_y + 2 * step) > 0);
  CHECK(best_w_y < y_eq);
  MESSAGE("bisector minimum of w at y = " << best_w_y << ", equilateral height " << y_eq);
}

TEST_CASE("barrier: w grows without bound as the free node approaches the opposite edge") {
  double prev = 0;
  for (double y = 0.1; y > 1e-6; y *= 0.5) {
    const double wc = element_objective(Point2(0.5, y), Point2(0, 0), Point2(1, 0), kDefault);
    CHECK(std::isinf(element_objective(Point2(0.5, -y), Point2(0, 0), Point2(1, 0), kDefault)));
    CHECK(wc > prev);
    prev = wc;
  }
  CHECK(prev > 1e20);
}

TEST_CASE("numeric fallback for other exponents") {
  std::mt19937_64 rng(26);
  for (auto [beta, gamma] : {std::pair{1.0, 3.0}, {2.0, 2.0}, {0.5, 4.0}}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto p = testing::random_triangle(rng, 0.2);
      const ObjectiveParams params{beta, gamma, 1.0};
      const auto num = element_grad_hess_numeric(p[0], p[1], p[2], params);
      if (params.has_exact_derivatives()) {
        const auto ex = element_grad_hess_exact(p[0], p[1], p[2], 1.0);
        CHECK(testing::rel_err(num.grad, ex.grad) <= 1e-6);
        CHECK(testing::rel_err(num.hessian(), ex.hessian()) <= 1e-3);
      }
      // Definition-based value: (R/r_ref)^beta (R/r)^gamma.
      const auto g = triangle_geometry(p[0], p[1], p[2]);
      CHECK(num.value == doctest::Approx(std::pow(g.R, beta) * std::pow(g.R / g.r, gamma)).epsilon(1e-12));
      CHECK(num.hessian() == num.hessian().transpose());
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(kDefault.validate());
  CHECK_THROWS_AS((ObjectiveParams{0, 3, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ObjectiveParams{1, 3, 0}.validate()), std::invalid_argument);
}
