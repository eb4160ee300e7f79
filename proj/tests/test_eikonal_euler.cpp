#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "pdecert/eikonal_euler.hpp"
#include "pdecert/fd.hpp"

using namespace pdecert;

namespace {

const double S2 = std::sqrt(2.0);

EikonalSolution sphere_solution() {
  // v = sqrt(x^2+y^2+z^2) on a box with z > 0, G == 1, time axis z.
  EikonalSolution s;
  s.v = sqrt(x() * x() + y() * y() + z() * z());
  s.G = Expr::constant(1.0);
  s.dims = 3;
  s.time_axis = 2;
  return s;
}

Grid sphere_grid() {
  return Grid::make(3, {9, 9, 9}, {-2.0, -2.0, 0.5}, {2.0, 2.0, 4.5});
}

}  // namespace

TEST_CASE("linear eikonal solution gives the zero Euler field") {
  EikonalSolution s;
  s.v = y();
  s.G = Expr::constant(1.0);
  s.dims = 2;
  s.time_axis = 1;
  Grid g = Grid::square(9, -2.0, 2.0);
  EulerField f = eikonal_to_euler(s, g);
  CHECK(euler_residual(f, g).linf == 0.0);
  ScalarField F0 = sample(f.F[0], g);
  CHECK(norm_linf(F0.values) == 0.0);
}

TEST_CASE("sphere distance maps to F = (x/z, y/z) with zero Euler residual") {
  Grid g = sphere_grid();
  EulerField f = eikonal_to_euler(sphere_solution(), g);
  ScalarField f0 = sample(f.F[0], g);
  ScalarField fx = sample(x() / z(), g);
  for (std::size_t i = 0; i < f0.values.size(); ++i)
    CHECK(f0.values[i] == Catch::Approx(fx.values[i]).margin(1e-13));
  CHECK(euler_residual(f, g).linf <= 1e-10);
}

TEST_CASE("exponential solution of |grad v|^2 = 2 v^2") {
  EikonalSolution s;
  s.v = exp(Expr::affine({1, 1, 0, 0}, 0.0));
  s.G = 2.0 * x() * x();  // G(t) = 2 t^2 in the coord-0 profile convention
  s.dims = 2;
  s.time_axis = 1;
  Grid g = Grid::square(9, -1.0, 1.0);
  EulerField f = eikonal_to_euler(s, g);
  ScalarField F0 = sample(f.F[0], g);
  for (double v : F0.values) CHECK(v == Catch::Approx(1.0).margin(1e-13));
  CHECK(euler_residual(f, g).linf <= 1e-10);
}

TEST_CASE("monotonicity violation is a hard error") {
  EikonalSolution s;
  s.v = -y();
  s.G = Expr::constant(1.0);
  s.dims = 2;
  s.time_axis = 1;
  Grid g = Grid::square(9, -1.0, 1.0);
  CHECK_THROWS_AS(eikonal_to_euler(s, g), HypothesisError);
}

TEST_CASE("burgers-type field x/t and a deliberate nonzero control") {
  Grid g = Grid::make(2, {9, 9, 1}, {-2.0, 0.5}, {2.0, 4.5});
  EulerField burgers;
  burgers.dims = 2;
  burgers.time_axis = 1;
  burgers.y_axes = {0};
  burgers.F = {x() / y()};
  CHECK(euler_residual(burgers, g).linf <= 1e-12);

  EulerField shear;
  shear.dims = 2;
  shear.time_axis = 1;
  shear.y_axes = {0};
  shear.F = {x()};
  ResidualReport r = euler_residual(shear, g);
  CHECK(r.linf == Catch::Approx(2.0));  // residual = F1 F1_x = x on [-2,2]
}

TEST_CASE("scale invariance: F unchanged under v -> P(v) with P' > 0") {
  Grid g = sphere_grid();
  EikonalSolution s = sphere_solution();
  EulerField f = eikonal_to_euler(s, g);
  // P(v) = v^3 + 2 v has P' = 3v^2 + 2 > 0; not an Eikonal solution, but the
  // ratio field is the same.
  Expr pv = s.v * s.v * s.v + 2.0 * s.v;
  EulerField f2 = euler_field_from_ratios(pv, 3, 2);
  BulkEvaluator ev = BulkEvaluator::on_grid(g);
  for (std::size_t c = 0; c < f.F.size(); ++c) {
    auto a = ev(f.F[c]);
    auto b = ev(f2.F[c]);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == Catch::Approx(b[i]).margin(1e-12));
  }
}

TEST_CASE("inversion for n = 2: constant fields") {
  Grid g = Grid::square(17, 0.0, 1.0);

  EulerField zero;
  zero.dims = 2;
  zero.time_axis = 1;
  zero.y_axes = {0};
  zero.F = {Expr::constant(0.0)};
  ScalarField vt = reconstruct_eikonal_2d(zero, Expr::constant(0.0), g);
  // vtilde = x_n - lo; |grad vtilde|^2 = 1 exactly
  VectorField gv = fd_grad(vt);
  for (std::size_t i = 0; i < gv.comps[0].size(); ++i) {
    double gg = gv.comps[0][i] * gv.comps[0][i] + gv.comps[1][i] * gv.comps[1][i];
    CHECK(gg == Catch::Approx(1.0).margin(1e-10));
  }

  const double c = 0.75;
  EulerField constf;
  constf.dims = 2;
  constf.time_axis = 1;
  constf.y_axes = {0};
  constf.F = {Expr::constant(c)};
  Expr a = Expr::affine({c / std::sqrt(c * c + 1.0), 0, 0, 0}, 0.0);
  ScalarField vt2 = reconstruct_eikonal_2d(constf, a, g);
  VectorField gv2 = fd_grad(vt2);
  for (std::size_t i = 0; i < gv2.comps[0].size(); ++i) {
    double gg = gv2.comps[0][i] * gv2.comps[0][i] + gv2.comps[1][i] * gv2.comps[1][i];
    CHECK(gg == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("inversion round-trips the Burgers solution away from t = 0") {
  Grid g = Grid::make(2, {129, 129, 1}, {-1.0, 1.0}, {1.0, 3.0});
  EulerField burgers;
  burgers.dims = 2;
  burgers.time_axis = 1;
  burgers.y_axes = {0};
  burgers.F = {x() / y()};
  // v = sqrt(x^2 + t^2) solves the unit Eikonal equation with this F;
  // its value on the t = lo line is the required constant of integration.
  Expr a = sqrt(x() * x() + 1.0);
  ScalarField vt = reconstruct_eikonal_2d(burgers, a, g);
  VectorField gv = fd_grad(vt, 4);
  double worst = 0.0;
  for (std::size_t i = 0; i < gv.comps[0].size(); ++i) {
    double gg = gv.comps[0][i] * gv.comps[0][i] + gv.comps[1][i] * gv.comps[1][i];
    worst = std::max(worst, std::abs(gg - 1.0));
  }
  CHECK(worst <= 1e-6);

  // and the reconstruction matches the known Eikonal solution directly
  ScalarField exact = sample(sqrt(x() * x() + y() * y()), g);
  double dmax = 0.0;
  for (std::size_t i = 0; i < vt.values.size(); ++i)
    dmax = std::max(dmax, std::abs(vt.values[i] - exact.values[i]));
  CHECK(dmax <= 1e-8);
}

TEST_CASE("inversion rejects n = 3") {
  Grid g = sphere_grid();
  EulerField f = eikonal_to_euler(sphere_solution(), g);
  CHECK_THROWS_AS(reconstruct_eikonal_2d(f, Expr::constant(0.0), g), std::invalid_argument);
}

TEST_CASE("mean curvature of classic level sets") {
  Grid g2 = Grid::square(9, 0.5, 2.5);
  ScalarField flat = mean_curvature(Expr::affine({1.0, 2.0, 0, 0}, 0.3), 2, g2);
  CHECK(norm_linf(flat.values) <= 1e-12);

  Grid g3 = sphere_grid();
  Expr r = sqrt(x() * x() + y() * y() + z() * z());
  ScalarField mc = mean_curvature(r, 3, g3);
  BulkEvaluator ev = BulkEvaluator::on_grid(g3);
  auto rv = ev(r);
  for (std::size_t i = 0; i < mc.values.size(); ++i)
    CHECK(mc.values[i] == Catch::Approx(2.0 / rv[i]).margin(1e-10));

  ScalarField planar = mean_curvature(tanh(Expr::affine({0.5, 0.5, 0, 0}, 0.0)), 2, g2);
  CHECK(norm_linf(planar.values) <= 1e-10);
}

TEST_CASE("vanishing gradient raises with the offending point") {
  Grid g = Grid::square(9, -1.0, 1.0);
  CHECK_THROWS_AS(mean_curvature(x() * x() + y() * y(), 2, g), HypothesisError);
}

TEST_CASE("divergence equivalence verdicts") {
  Grid g2 = Grid::square(9, 0.5, 2.5);
  EquivalenceCheck both_zero = divergence_equivalence_check(tanh(Expr::affine({0.5, 0.5, 0, 0}, 0.0)), 2, 1, g2);
  CHECK(both_zero.consistent);
  CHECK(both_zero.div_y.linf <= 1e-10);
  CHECK(both_zero.curvature.linf <= 1e-10);

  Grid g3 = sphere_grid();
  EquivalenceCheck sphere = divergence_equivalence_check(sqrt(x() * x() + y() * y() + z() * z()), 3, 2, g3);
  CHECK(sphere.consistent);
  CHECK(sphere.div_y.linf > 1e-10);
  CHECK(sphere.curvature.linf > 1e-10);

  EquivalenceCheck trivial = divergence_equivalence_check(y(), 2, 1, g2);
  CHECK(trivial.consistent);
  CHECK(trivial.div_y.linf == 0.0);
}

TEST_CASE("theorem-1 pipeline recovers the basic reduction") {
  // a=1, b=0, k=0, l=1/2, f=g', phi=id gives p = -1/2 and G = 2g.
  // Witness: planar tanh profile with the double well, g = W.
  Expr u0 = Expr::coord(0);
  Expr W = pow(1.0 - u0 * u0, 2.0) / 4.0;
  GeneralizedEqSpec spec;
  spec.a = Expr::constant(1.0);
  spec.b = Expr::constant(0.0);
  spec.f = W.diff(0);
  spec.k = Expr::constant(0.0);
  spec.l = Expr::constant(0.5);
  spec.g = W;
  spec.phi = u0;

  Expr v = tanh(Expr::affine({0.5, 0.5, 0, 0}, 0.0));
  Grid g = Grid::square(17, -1.5, 1.5);
  Theorem1Report rep = theorem1_pipeline(spec, v, 2, 1, g);

  // p(t) = -1/2 and G = 2g
  Grid line = Grid::line(9, -0.5, 0.5);
  ScalarField Gs = sample(rep.G, line);
  ScalarField gs = sample(W, line);
  for (std::size_t i = 0; i < Gs.values.size(); ++i)
    CHECK(Gs.values[i] == Catch::Approx(2.0 * gs.values[i]).margin(1e-12));

  CHECK(rep.eq1.linf <= 1e-10);
  CHECK(rep.eq2.linf <= 1e-10);
  CHECK(rep.eikonal.linf <= 1e-10);
  CHECK(rep.euler.linf <= 1e-10);
  CHECK(rep.divergence_ode.linf <= 1e-10);
}

TEST_CASE("theorem-1 pipeline flags a broken link function") {
  // Same coefficients but phi(t) = 2t: div-ODE residual must be nonzero.
  Expr u0 = Expr::coord(0);
  Expr W = pow(1.0 - u0 * u0, 2.0) / 4.0;
  GeneralizedEqSpec spec;
  spec.a = Expr::constant(1.0);
  spec.b = Expr::constant(0.0);
  spec.f = W.diff(0);
  spec.k = Expr::constant(0.0);
  spec.l = Expr::constant(0.5);
  spec.g = W;
  spec.phi = 2.0 * u0;

  Expr v = tanh(Expr::affine({0.5, 0.5, 0, 0}, 0.0));
  Grid g = Grid::square(17, -1.5, 1.5);
  Theorem1Report rep = theorem1_pipeline(spec, v, 2, 1, g);
  CHECK(rep.divergence_ode.linf > 1e-3);
  // the ratio field is scale invariant, so the Euler residual still vanishes
  CHECK(rep.euler.linf <= 1e-10);
}
