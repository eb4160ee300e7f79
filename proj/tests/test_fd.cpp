#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pdecert/fd.hpp"
#include "pdecert/field.hpp"
#include "pdecert/quadrature.hpp"
#include "pdecert/report.hpp"

using namespace pdecert;

namespace {

ScalarField sample_fn(const Grid& g, double (*f)(double)) {
  std::vector<double> v(g.size());
  for (int i = 0; i < g.n[0]; ++i) v[static_cast<std::size_t>(i)] = f(g.coord(0, i));
  return ScalarField(g, std::move(v));
}

}  // namespace

TEST_CASE("first derivative exact on quadratics") {
  Grid g = Grid::line(17, 0.0, 1.0);
  ScalarField f = sample_fn(g, [](double x) { return x * x; });
  ScalarField d = fd_derivative(f, 0, 1, 2);
  for (int i = 0; i < g.n[0]; ++i)
    CHECK(d.values[static_cast<std::size_t>(i)] == Catch::Approx(2.0 * g.coord(0, i)).margin(1e-12));
}

TEST_CASE("accuracy-4 stencils exact on quartics, including boundaries") {
  Grid g = Grid::line(16, -1.0, 1.0);
  ScalarField f = sample_fn(g, [](double x) { return x * x * x * x; });
  ScalarField d1 = fd_derivative(f, 0, 1, 4);
  ScalarField d2 = fd_derivative(f, 0, 2, 4);
  for (int i = 0; i < g.n[0]; ++i) {
    double x = g.coord(0, i);
    CHECK(d1.values[static_cast<std::size_t>(i)] == Catch::Approx(4 * x * x * x).margin(1e-10));
    CHECK(d2.values[static_cast<std::size_t>(i)] == Catch::Approx(12 * x * x).margin(1e-9));
  }
}

TEST_CASE("constant field differentiates to zero") {
  Grid g = Grid::line(9, 0.0, 1.0);
  ScalarField f = sample_fn(g, [](double) { return 5.0; });
  CHECK(norm_linf(fd_derivative(f, 0, 1, 2).values) == 0.0);
  CHECK(norm_linf(fd_derivative(f, 0, 2, 2).values) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("periodic second derivative of sin converges at order 2") {
  std::vector<std::pair<double, double>> levels;
  for (int n : {16, 32, 64}) {
    Grid g = Grid::line(n, 0.0, 2.0 * M_PI, true);
    ScalarField f = sample_fn(g, [](double x) { return std::sin(x); });
    ScalarField d2 = fd_derivative(f, 0, 2, 2);
    std::vector<double> err(d2.values.size());
    for (int i = 0; i < n; ++i)
      err[static_cast<std::size_t>(i)] = d2.values[static_cast<std::size_t>(i)] + std::sin(g.coord(0, i));
    levels.emplace_back(g.spacing(0), norm_linf(err));
  }
  // halving h quarters the error
  CHECK(levels[1].second == Catch::Approx(levels[0].second / 4.0).epsilon(0.05));
  OrderEstimate est = convergence_order(levels);
  CHECK(!est.saturated);
  CHECK(est.slope == Catch::Approx(2.0).margin(0.1));
}

TEST_CASE("gradient and laplacian of polynomials") {
  Grid g = Grid::square(17, 0.0, 1.0);
  ScalarField f = sample(x() + 2.0 * y(), g);
  VectorField grad = fd_grad(f);
  for (double v : grad.comps[0]) CHECK(v == Catch::Approx(1.0).margin(1e-12));
  for (double v : grad.comps[1]) CHECK(v == Catch::Approx(2.0).margin(1e-12));

  ScalarField q = sample(x() * x() + y() * y(), g);
  ScalarField lap = fd_laplacian(q);
  for (double v : lap.values) CHECK(v == Catch::Approx(4.0).margin(1e-10));
}

TEST_CASE("divergence of a rotated gradient vanishes") {
  // (-sigma_y, sigma_x) is divergence-free for any sampled sigma; the
  // tensor-product stencils commute, so only roundoff survives.
  for (int n : {17, 33, 65}) {
    Grid g = Grid::square(n, 0.0, 1.0);
    ScalarField sig = sample(x() * sin(3.0 * y()) + cos(2.0 * x()) * y(), g);
    ScalarField dsx = fd_derivative(sig, 0, 1, 2);
    ScalarField dsy = fd_derivative(sig, 1, 1, 2);
    VectorField v(g, {dsy.values, dsx.values});
    for (auto& w : v.comps[0]) w = -w;
    ScalarField div = fd_divergence(v);
    CHECK(norm_linf(div.values) <= 1e-10);
  }
}

TEST_CASE("divergence requires matching component count") {
  Grid g = Grid::square(9, 0.0, 1.0);
  VectorField v(g, {std::vector<double>(g.size(), 1.0)});
  CHECK_THROWS_AS(fd_divergence(v), std::invalid_argument);
}

TEST_CASE("grid too small or bad axis raises") {
  Grid g = Grid::line(6, 0.0, 1.0);
  ScalarField f(g, std::vector<double>(g.size(), 0.0));
  CHECK_THROWS_AS(fd_derivative(f, 0, 1, 2), std::invalid_argument);
  Grid g2 = Grid::line(9, 0.0, 1.0);
  ScalarField f2(g2, std::vector<double>(g2.size(), 0.0));
  CHECK_THROWS_AS(fd_derivative(f2, 1, 1, 2), std::invalid_argument);
}

TEST_CASE("convergence_order on exact geometric data and saturation") {
  OrderEstimate e = convergence_order({{0.1, 1e-2}, {0.05, 2.5e-3}, {0.025, 6.25e-4}});
  CHECK(!e.saturated);
  CHECK(e.slope == Catch::Approx(2.0).margin(1e-12));

  OrderEstimate s = convergence_order({{0.1, 1e-15}, {0.05, 9e-16}, {0.025, 1.1e-15}});
  CHECK(s.saturated);

  CHECK_THROWS_AS(convergence_order({{0.1, 1e-2}, {0.05, 1e-3}}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_order({{0.1, 1e-2}, {0.1, 1e-3}, {0.05, 1e-4}}),
                  std::invalid_argument);
}

TEST_CASE("fd of a closed form converges to its analytic derivative") {
  Expr e = sin(Expr::affine({1.3, 0.4, 0, 0}, 0.2));
  for (int accuracy : {2, 4}) {
    std::vector<std::pair<double, double>> levels;
    for (int n : {17, 33, 65}) {
      Grid g = Grid::square(n, 0.0, 1.0);
      ScalarField f = sample(e, g);
      ScalarField fd = fd_derivative(f, 0, 1, accuracy);
      ScalarField exact = eval_closed_form(e, g, {1, 0, 0});
      std::vector<double> err(fd.values.size());
      for (std::size_t i = 0; i < err.size(); ++i) err[i] = fd.values[i] - exact.values[i];
      levels.emplace_back(g.spacing(0), norm_linf(err));
    }
    OrderEstimate est = convergence_order(levels);
    CHECK(!est.saturated);
    CHECK(est.slope == Catch::Approx(accuracy).margin(0.35));
  }
}

TEST_CASE("residual report norm consistency") {
  Grid g = Grid::square(17, 0.0, 1.0);
  ScalarField f = sample(sin(x()) * cos(y()), g);
  ResidualReport r = ResidualReport::from_values("f", f.values, g.spacing(0));
  CHECK(r.l2 <= r.linf * std::sqrt(static_cast<double>(f.values.size())) + 1e-15);
}

TEST_CASE("eval_closed_form caps the total derivative order") {
  Grid g = Grid::line(9, 0.0, 1.0);
  CHECK_THROWS_AS(eval_closed_form(x() * x(), g, {2, 2, 0}), std::invalid_argument);
}

TEST_CASE("gauss-hermite weights integrate gaussian moments") {
  for (int n : {16, 64, 128, 512, 1024}) {
    const GaussHermiteRule& r = gauss_hermite_cached(n);
    double s0 = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      s0 += r.weights[static_cast<std::size_t>(i)];
      s2 += r.weights[static_cast<std::size_t>(i)] * r.nodes[static_cast<std::size_t>(i)] *
            r.nodes[static_cast<std::size_t>(i)];
    }
    CHECK(s0 == Catch::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(s2 == Catch::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-11));
  }
}

TEST_CASE("cumulative simpson integrates smooth data to fourth order") {
  std::vector<std::pair<double, double>> levels;
  for (int n : {17, 33, 65}) {
    Grid g = Grid::line(n, 0.0, 1.0);
    std::vector<double> f(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = std::exp(g.coord(0, i));
    auto I = cumulative_simpson(f, g.spacing(0));
    double worst = 0;
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(I[static_cast<std::size_t>(i)] - (std::exp(g.coord(0, i)) - 1.0)));
    levels.emplace_back(g.spacing(0), worst);
  }
  OrderEstimate est = convergence_order(levels);
  CHECK(est.slope >= 3.5);
}

TEST_CASE("adaptive simpson hits tight tolerances") {
  double v = adaptive_simpson([](double t) { return std::exp(-t) * std::sin(5 * t); }, 0.0, 2.0);
  double exact = (5.0 - std::exp(-2.0) * (5.0 * std::cos(10.0) + std::sin(10.0))) / 26.0;
  CHECK(v == Catch::Approx(exact).margin(1e-11));
}
