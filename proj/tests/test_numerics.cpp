#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "v2vpl/numerics.hpp"

using namespace v2vpl;

namespace {

// quadrature oracle for moderate arguments (see test_estimation for the
// long-double variant); here erfc in long double is the cross-check
long double log_upper_tail_oracle(long double z) {
    return logl(0.5L * erfcl(z * 0.707106781186547524400844362105L));
}

} // namespace

TEST_CASE("log upper tail matches a long-double erfc evaluation") {
    for (double z : {-8.0, -3.0, -1.0, 0.0, 0.5, 1.0, 2.5, 5.0, 8.0, 15.0, 25.0, 29.9}) {
        const double expected = static_cast<double>(log_upper_tail_oracle(z));
        CHECK(log_normal_upper_tail(z) == doctest::Approx(expected).epsilon(1e-10));
    }
    CHECK(log_normal_upper_tail(0.0) == doctest::Approx(std::log(0.5)).epsilon(1e-14));
}

TEST_CASE("log upper tail is continuous across the asymptotic switch") {
    const double below = log_normal_upper_tail(29.999999);
    const double above = log_normal_upper_tail(30.000001);
    CHECK(std::abs(above - below) < 1e-4);
    for (double z : {30.5, 40.0, 60.0, 120.0}) {
        const double v = log_normal_upper_tail(z);
        CHECK(std::isfinite(v));
        // dominated by the -z^2/2 term
        CHECK(v < -0.5 * z * z + 1.0);
        CHECK(v > -0.5 * z * z - std::log(z) - 2.0);
    }
}

TEST_CASE("log upper tail is strictly decreasing") {
    double previous = log_normal_upper_tail(-40.0);
    for (double z = -39.0; z <= 80.0; z += 1.0) {
        const double v = log_normal_upper_tail(z);
        CHECK(v < previous + 1e-15);
        previous = v;
    }
}

TEST_CASE("simplex minimizes a shifted quadratic bowl") {
    const Eigen::Vector3d target(1.5, -2.0, 0.25);
    const auto bowl = [&](const Eigen::VectorXd& x) {
        return (x - target).squaredNorm() + 3.0;
    };
    const SimplexResult result =
        minimize_simplex(bowl, Eigen::Vector3d(0.0, 0.0, 0.0), Eigen::Vector3d(1.0, 1.0, 1.0));
    CHECK(result.converged);
    CHECK((result.x - target).norm() < 1e-5);
    CHECK(result.value == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("simplex handles the Rosenbrock valley") {
    const auto rosenbrock = [](const Eigen::VectorXd& x) {
        const double a = 1.0 - x(0);
        const double b = x(1) - x(0) * x(0);
        return a * a + 100.0 * b * b;
    };
    const SimplexResult result =
        minimize_simplex(rosenbrock, Eigen::Vector2d(-1.2, 1.0), Eigen::Vector2d(0.5, 0.5));
    CHECK(result.converged);
    CHECK(result.x(0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(result.x(1) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("simplex reports non-convergence under a tiny iteration cap") {
    const auto bowl = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
    SimplexOptions options;
    options.max_iterations = 3;
    const SimplexResult result =
        minimize_simplex(bowl, Eigen::Vector2d(5.0, 5.0), Eigen::Vector2d(1.0, 1.0), options);
    CHECK_FALSE(result.converged);
    CHECK(result.iterations == 3);
}

TEST_CASE("draw_normal is deterministic per seed") {
    Rng a(123), b(123);
    for (int i = 0; i < 32; ++i) CHECK(draw_normal(a) == draw_normal(b));
}
