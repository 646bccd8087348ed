#include "qwire/measures.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qwire/errors.hpp"

using namespace qwire;

namespace {
constexpr double kPi = std::numbers::pi;

// Brute-force minimum of F_psi over a |beta|^2 grid.
std::pair<double, double> grid_min(double p, double dphi, std::size_t points) {
  double best = 2.0, best_x = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(points - 1);
    const double f = fidelity_psi(x, p, dphi);
    if (f < best) {
      best = f;
      best_x = x;
    }
  }
  return {best, best_x};
}
}  // namespace

TEST_CASE("fidelity_psi closed forms") {
  CHECK(fidelity_psi(0.3, 1.0, 0.0) == 1.0);
  CHECK(fidelity_psi(0.9, 1.0, 0.0) == 1.0);
  // At p=1, dphi=pi the quadratic collapses to (1-2x)^2.
  CHECK(fidelity_psi(0.5, 1.0, kPi) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(fidelity_psi(0.25, 1.0, kPi) == doctest::Approx(0.25));
  // beta^2 = 1 transfers the excitation weight: F = p.
  for (double p : {0.0, 0.3, 0.77, 1.0})
    CHECK(fidelity_psi(1.0, p, 1.3) == doctest::Approx(p).epsilon(1e-14));
  CHECK_THROWS_AS(fidelity_psi(1.2, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(fidelity_psi(0.5, -0.1, 0.0), std::invalid_argument);
}

TEST_CASE("avg_fidelity closed forms") {
  CHECK(avg_fidelity(1.0, 0.0) == 1.0);
  CHECK(avg_fidelity(1.0, kPi / 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(avg_fidelity(0.0, 1.234) == 0.5);
  CHECK(avg_fidelity(0.0, 0.0) == 0.5);
}

TEST_CASE("average consistency with the state integral") {
  // Uniform weight in |beta|^2 reproduces Eq.-(10)-style averaging.
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> up(0.0, 1.0), uphi(-kPi, kPi);
  for (int rep = 0; rep < 20; ++rep) {
    const double p = up(gen), dphi = uphi(gen);
    const std::size_t m = 20000;
    double acc = 0.0;  // trapezoidal rule
    for (std::size_t i = 0; i <= m; ++i) {
      const double x = static_cast<double>(i) / m;
      const double w = (i == 0 || i == m) ? 0.5 : 1.0;
      acc += w * fidelity_psi(x, p, dphi);
    }
    acc /= static_cast<double>(m);
    CHECK(acc == doctest::Approx(avg_fidelity(p, dphi)).epsilon(1e-6));
  }
}

TEST_CASE("worst-case weight") {
  SUBCASE("interior minimizer at p=1, dphi=pi") {
    CHECK(worst_case_beta(1.0, kPi) == doctest::Approx(0.5));
    const MinFidelity m = min_fidelity(1.0, kPi);
    CHECK(m.b_worst == doctest::Approx(0.5));
    CHECK(m.f_min == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("endpoint case p=0.81, dphi=0") {
    CHECK(worst_case_beta(0.81, 0.0) == 1.0);
    CHECK(min_fidelity(0.81, 0.0).f_min == doctest::Approx(0.81));
  }
  SUBCASE("p=0 gives F = 1-x, minimized at 1") {
    CHECK(worst_case_beta(0.0, 0.4) == 1.0);
    CHECK(min_fidelity(0.0, 0.4).f_min == doctest::Approx(0.0));
  }
  SUBCASE("flat case p=1, dphi=0 by convention") {
    CHECK(worst_case_beta(1.0, 0.0) == 1.0);
    CHECK(min_fidelity(1.0, 0.0).f_min == doctest::Approx(1.0));
  }
  SUBCASE("printed variant differs where it matters") {
    // The printed expression gives B=1/4 at (p=1, dphi=pi) where the true
    // minimizer is 1/2.
    CHECK(worst_case_beta(1.0, kPi, BVariant::kPaperEq15) == doctest::Approx(0.25));
    const MinFidelity printed = min_fidelity(1.0, kPi, BVariant::kPaperEq15);
    CHECK(printed.f_min == doctest::Approx(0.25));
    CHECK(min_fidelity(1.0, kPi).f_min < printed.f_min);
  }
}

TEST_CASE("min_fidelity matches brute force on a (p, dphi) grid") {
  const int np = 20, nphi = 10;
  for (int a = 0; a <= np; ++a)
    for (int b = 0; b < nphi; ++b) {
      const double p = static_cast<double>(a) / np;
      const double dphi = -kPi + 2.0 * kPi * (b + 1) / nphi;
      const MinFidelity m = min_fidelity(p, dphi);
      const auto [brute, bx] = grid_min(p, dphi, 100001);
      CHECK(m.f_min <= brute + 1e-12);
      CHECK(std::abs(m.f_min - brute) < 1e-8);
    }
}

TEST_CASE("measures are even in delta_phi") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> up(0.0, 1.0), uphi(0.0, kPi);
  for (int rep = 0; rep < 50; ++rep) {
    const double p = up(gen), dphi = uphi(gen), x = up(gen);
    CHECK(fidelity_psi(x, p, dphi) == doctest::Approx(fidelity_psi(x, p, -dphi)).epsilon(1e-15));
    CHECK(avg_fidelity(p, dphi) == doctest::Approx(avg_fidelity(p, -dphi)).epsilon(1e-15));
    CHECK(min_fidelity(p, dphi).f_min ==
          doctest::Approx(min_fidelity(p, -dphi).f_min).epsilon(1e-15));
  }
}

TEST_CASE("monotone in p at dphi = 0") {
  double prev_avg = -1.0, prev_min = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = static_cast<double>(i) / 100.0;
    const double fa = avg_fidelity(p, 0.0);
    const double fm = min_fidelity(p, 0.0).f_min;
    CHECK(fa >= prev_avg - 1e-14);
    CHECK(fm >= prev_min - 1e-14);
    prev_avg = fa;
    prev_min = fm;
  }
}

TEST_CASE("concurrence from the amplitude") {
  CHECK(concurrence_from_amplitude({1.0, 0.0}) == 1.0);
  CHECK(concurrence_from_amplitude({0.0, 0.0}) == 0.0);
  CHECK(concurrence_from_amplitude({0.6, 0.48}) == doctest::Approx(std::sqrt(0.5904)));
  CHECK_THROWS_AS(concurrence_from_amplitude({1.5, 0.0}), std::invalid_argument);
}

TEST_CASE("two-qubit output state") {
  SUBCASE("perfect transfer yields the Bell projector") {
    const TwoQubitDensityMatrix rho = two_qubit_output_state({1.0, 0.0});
    CHECK(rho.m[0].real() == doctest::Approx(0.5));
    CHECK(rho.m[3].real() == doctest::Approx(0.5));
    CHECK(rho.m[12].real() == doctest::Approx(0.5));
    CHECK(rho.m[15].real() == doctest::Approx(0.5));
    CHECK(rho.m[10].real() == doctest::Approx(0.0));
    CHECK(wootters_concurrence(rho) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("failed transfer is separable") {
    const TwoQubitDensityMatrix rho = two_qubit_output_state({0.0, 0.0});
    CHECK(rho.m[0].real() == doctest::Approx(0.5));
    CHECK(rho.m[10].real() == doctest::Approx(0.5));
    CHECK(wootters_concurrence(rho) == doctest::Approx(0.0).epsilon(1e-10));
  }
  SUBCASE("trace is one and the state is PSD-consistent") {
    const TwoQubitDensityMatrix rho = two_qubit_output_state({0.3, -0.7});
    Complex tr(0, 0);
    for (int i = 0; i < 4; ++i) tr += rho.m[i * 4 + i];
    CHECK(tr.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tr.imag() == doctest::Approx(0.0));
  }
}

TEST_CASE("Wootters oracle equals |f| for output states") {
  std::mt19937_64 gen(314);
  std::uniform_real_distribution<double> umod(0.0, 1.0), uph(-kPi, kPi);
  for (int rep = 0; rep < 100; ++rep) {
    const Complex f = std::polar(umod(gen), uph(gen));
    const double c = wootters_concurrence(two_qubit_output_state(f));
    CHECK(std::abs(c - std::abs(f)) < 1e-10);
  }
}

TEST_CASE("Wootters on the maximally mixed state") {
  TwoQubitDensityMatrix rho;
  for (int i = 0; i < 4; ++i) rho.m[i * 4 + i] = 0.25;
  CHECK(wootters_concurrence(rho) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Wootters input validation") {
  TwoQubitDensityMatrix junk;
  junk.m[0] = 2.0;  // trace 2
  CHECK_THROWS_AS(wootters_concurrence(junk), std::invalid_argument);
  TwoQubitDensityMatrix negative;
  negative.m[0] = 1.5;
  negative.m[5] = -0.5;
  CHECK_THROWS_AS(wootters_concurrence(negative), std::invalid_argument);
}

TEST_CASE("reduced output qubit") {
  SUBCASE("no excitation stays in |0>") {
    const QubitDensityMatrix rho = reduced_output_qubit(0.0, 0.0, {0.7, 0.1});
    CHECK(rho.m[0].real() == doctest::Approx(1.0));
    CHECK(std::abs(rho.m[1]) == doctest::Approx(0.0));
    CHECK(rho.m[3].real() == doctest::Approx(0.0));
  }
  SUBCASE("full excitation has no coherence") {
    const Complex f = std::polar(std::sqrt(0.64), 0.9);
    const QubitDensityMatrix rho = reduced_output_qubit(1.0, 0.3, f);
    CHECK(rho.m[0].real() == doctest::Approx(1.0 - 0.64));
    CHECK(rho.m[3].real() == doctest::Approx(0.64));
    CHECK(std::abs(rho.m[1]) == doctest::Approx(0.0));
  }
  SUBCASE("overlap with the target state reproduces fidelity_psi") {
    std::mt19937_64 gen(2718);
    std::uniform_real_distribution<double> u01(0.0, 1.0), uphi(-kPi, kPi);
    for (int rep = 0; rep < 1000; ++rep) {
      const double x = u01(gen), p = u01(gen);
      const double dphi = uphi(gen), phi_id = uphi(gen), aphase = uphi(gen);
      // Raw amplitude carries phi_id + dphi; the receiver compensates phi_id.
      const Complex f_raw = std::polar(std::sqrt(p), phi_id + dphi);
      const Complex f_comp = f_raw * std::polar(1.0, -phi_id);
      const QubitDensityMatrix rho = reduced_output_qubit(x, aphase, f_comp);
      // Target = the input state alpha|0> + beta|1> itself.
      const Complex alpha = std::polar(std::sqrt(1.0 - x), aphase);
      const Complex beta = std::sqrt(x);
      const Complex bra0 = std::conj(alpha), bra1 = std::conj(beta);
      Complex overlap =
          bra0 * (rho.m[0] * alpha + rho.m[1] * beta) +
          bra1 * (rho.m[2] * alpha + rho.m[3] * beta);
      CHECK(std::abs(overlap.imag()) < 1e-12);
      CHECK(std::abs(overlap.real() - fidelity_psi(x, p, dphi)) < 1e-10);
    }
  }
  SUBCASE("qubit fidelity closed form agrees with the pure-state overlap") {
    const Complex f = std::polar(0.8, 0.4);
    const QubitDensityMatrix rho = reduced_output_qubit(0.6, 0.0, f);
    QubitDensityMatrix pure;  // |psi><psi| for beta_sq = 0.6, zero phase
    const double a = std::sqrt(0.4), b = std::sqrt(0.6);
    pure.m[0] = a * a;
    pure.m[1] = a * b;
    pure.m[2] = a * b;
    pure.m[3] = b * b;
    const double direct =
        (std::conj(a) * (rho.m[0] * a + rho.m[1] * b) +
         std::conj(b) * (rho.m[2] * a + rho.m[3] * b)).real();
    CHECK(qubit_fidelity(rho, pure) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("evaluate_measures bundles consistently") {
  const std::vector<double> grid = {0.0, 0.4, 0.6, 1.0};
  const Complex f = std::polar(std::sqrt(0.85), 0.2);
  const MeasureSet ms = evaluate_measures(f, 0.85, 0.2, grid);
  CHECK(ms.f_avg == doctest::Approx(avg_fidelity(0.85, 0.2)));
  CHECK(ms.f_min == doctest::Approx(min_fidelity(0.85, 0.2).f_min));
  CHECK(ms.concurrence == doctest::Approx(std::sqrt(0.85)));
  REQUIRE(ms.f_psi_grid.size() == 4);
  CHECK(ms.f_psi_grid[1].first == 0.4);
  CHECK(ms.f_psi_grid[1].second == doctest::Approx(fidelity_psi(0.4, 0.85, 0.2)));
  for (const auto& [x, fx] : ms.f_psi_grid) CHECK(ms.f_min <= fx + 1e-12);
}
