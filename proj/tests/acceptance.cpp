// Acceptance suite. Each criterion is a group of tests named
// Acceptance.Criterion<N>_*; a listener prints one PASS/FAIL line per criterion.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>

#include "reference.hpp"
#include "wsdirac/wsdirac.hpp"

using namespace wsdirac;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const SolverError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no SolverError thrown";
  return ErrorKind::InvalidInput;
}

/// Depth convention fixed once against the (D=3, alpha'=0) cell.
double calibrated_scale() {
  static const double scale =
      calibrate_depth_scale(ref::table_params(0.0), {0, 20, 3}, ref::kTable1[2][0]).scale;
  return scale;
}

PhysicalParams calibrated(double alpha_prime) {
  auto p = ref::table_params(alpha_prime);
  p.depth_scale = calibrated_scale();
  return p;
}

/// Random configuration in a physically sensible box.
struct RandomConfigs {
  std::mt19937 rng;
  std::uniform_real_distribution<double> ua{0.2, 1.0}, ur{4.0, 10.0}, uv{-15.0, 15.0},
      ue{8.0, 13.0}, um{8.0, 12.0}, uap{0.0, 0.02};
  std::uniform_int_distribution<int> ul{1, 30}, ud{1, 6};

  explicit RandomConfigs(unsigned seed) : rng(seed) {}

  std::pair<PhysicalParams, QuantumState> next(int n = 0) {
    PhysicalParams p;
    p.mass = um(rng);
    p.surface_thickness = ua(rng);
    p.radius = ur(rng);
    p.depth = uv(rng);
    p.e0 = ue(rng);
    p.alpha_prime = uap(rng);
    return {p, {n, ul(rng), ud(rng)}};
  }
};

double rel(double x, double y) { return std::fabs(x - y) / std::fmax(1.0, std::fmax(std::fabs(x), std::fabs(y))); }

}  // namespace

// ---------------------------------------------------------------------------

TEST(Acceptance, Criterion1_Table1Reproduction) {
  const auto t0 = Clock::now();
  EXPECT_EQ(calibrated_scale(), 1.0);
  double worst = 0.0;
  for (int d = 1; d <= 5; ++d) {
    for (std::size_t j = 0; j < ref::kTableAlphas.size(); ++j) {
      const double eb = solve_energy(calibrated(ref::kTableAlphas[j]), {0, 20, d}).e_binding;
      const double expected = ref::kTable1[d - 1][j];
      EXPECT_NEAR(eb, expected, 1e-3) << "D=" << d << " alpha'=" << ref::kTableAlphas[j];
      worst = std::fmax(worst, std::fabs(eb - expected));
    }
  }
  EXPECT_LT(worst, 5e-5);
  EXPECT_LT(seconds_since(t0), 1.0);
}

TEST(Acceptance, Criterion2_Table2Reproduction) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int l = 20; l <= 24; ++l) {
    for (std::size_t j = 0; j < ref::kTableAlphas.size(); ++j) {
      const double eb = solve_energy(calibrated(ref::kTableAlphas[j]), {0, l, 3}).e_binding;
      const double expected = ref::kTable2[l - 20][j];
      EXPECT_NEAR(eb, expected, 1e-3) << "l=" << l << " alpha'=" << ref::kTableAlphas[j];
      worst = std::fmax(worst, std::fabs(eb - expected));
    }
  }
  EXPECT_LT(worst, 5e-5);
  EXPECT_LT(seconds_since(t0), 1.0);
}

// The tabulated energies are negative; "decrease" is read as decreasing
// magnitude |E_b|, which is what both tables show.
TEST(Acceptance, Criterion3_MonotoneInDimensionAndEll) {
  for (double ap : ref::kTableAlphas) {
    double prev = INFINITY;
    for (int d = 1; d <= 5; ++d) {
      const double mag = std::fabs(solve_energy(calibrated(ap), {0, 20, d}).e_binding);
      EXPECT_LT(mag, prev) << "D=" << d << " alpha'=" << ap;
      prev = mag;
    }
    prev = INFINITY;
    for (int l = 20; l <= 24; ++l) {
      const double mag = std::fabs(solve_energy(calibrated(ap), {0, l, 3}).e_binding);
      EXPECT_LT(mag, prev) << "l=" << l << " alpha'=" << ap;
      prev = mag;
    }
  }
}

TEST(Acceptance, Criterion3_MonotoneInAlphaPrime) {
  auto check = [](const QuantumState& s) {
    double prev = INFINITY;
    for (double ap : ref::kTableAlphas) {
      const double mag = std::fabs(solve_energy(calibrated(ap), s).e_binding);
      EXPECT_LT(mag, prev) << "D=" << s.dim << " l=" << s.ell << " alpha'=" << ap;
      prev = mag;
    }
  };
  for (int d = 1; d <= 5; ++d) check({0, 20, d});
  for (int l = 20; l <= 24; ++l) check({0, l, 3});
}

TEST(Acceptance, Criterion4_PekerisTaylorMatch) {
  const auto t0 = Clock::now();
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> uw(2.0, 1000.0);
  for (int i = 0; i < 100; ++i) {
    const double varpi = uw(rng);
    const auto t = taylor_match_report(pekeris_coefficients(varpi, 1.0));
    EXPECT_NEAR(t[0], 1.0, 1e-10) << "varpi=" << varpi;
    EXPECT_NEAR(t[1], -2.0, 1e-10) << "varpi=" << varpi;
    EXPECT_NEAR(t[2], 3.0, 1e-10) << "varpi=" << varpi;
  }
  EXPECT_LT(seconds_since(t0), 1.0);
}

TEST(Acceptance, Criterion5_SusyConsistency) {
  RandomConfigs gen(5);
  int checked = 0;
  while (checked < 200) {
    auto [p, s] = gen.next();
    SpectrumResult spectrum;
    try {
      spectrum = solve_energy(p, s);
    } catch (const SolverError&) {
      continue;
    }
    const auto c = derive_coefficients(p, s);
    const auto pk = pekeris_coefficients(p.radius, p.surface_thickness);
    const double a = p.surface_thickness, R = p.radius;
    const double e = spectrum.e_selected();
    const auto sp = solve_susy_parameters(c, pk, p, e);

    // Matching relations at the eigenvalue.
    const auto res = matching_residuals(sp, radial_coefficients(c, pk, p, e), a);
    for (double x : res) EXPECT_LT(x, 1e-10);

    // Two routes to A.
    EXPECT_LT(rel(sp.A, intercept_closed_form(c, pk, p, e)), 1e-10);

    // V_+(a0) - V_-(a1) is flat in r.
    bool shift_ok = true;
    SusyParameters shifted;
    try {
      shifted = ladder_parameters(sp, 1, a);
    } catch (const SolverError&) {
      shift_ok = false;
    }
    if (shift_ok) {
      double lo = INFINITY, hi = -INFINITY, scale = 1.0;
      for (double r : {0.0, R - 3 * a, R - a, R, R + a, R + 3 * a, R + 10 * a}) {
        const double plus = partner_potentials(sp, r, a, R).plus;
        const double minus = partner_potentials(shifted, r, a, R).minus;
        lo = std::fmin(lo, plus - minus);
        hi = std::fmax(hi, plus - minus);
        scale = std::fmax(scale, std::fmax(std::fabs(plus), std::fabs(minus)));
      }
      EXPECT_LT((hi - lo) / scale, 1e-9);
    }

    // Telescoping: sum_{i<=n} R(a_i) = A_0^2 - A_n^2, which ties q0 at E_n to the ladder.
    for (int n = 1; n <= 3; ++n) {
      double sum = 0.0;
      try {
        for (int i = 1; i <= n; ++i) sum += remainder(sp, i, a);
      } catch (const SolverError&) {
        break;
      }
      const double an = ladder_intercept(sp.frak_u, ladder(sp.B, n, a));
      EXPECT_LT(rel(sum, sp.A * sp.A - an * an), 1e-10) << "n=" << n;
    }
    ++checked;
  }
}

TEST(Acceptance, Criterion6_ClosedFormVsBracketing) {
  auto compare = [](const PhysicalParams& p, const QuantumState& s) {
    const auto r = solve_energy(p, s);
    const double span = p.mass + std::fabs(p.effective_depth()) + 50.0;
    const auto roots = bracketed_roots(p, s, -span, span);
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_LT(rel(roots[0], *r.e_lower), 1e-10);
    EXPECT_LT(rel(roots[1], *r.e_upper), 1e-10);
  };
  for (double ap : ref::kTableAlphas) {
    for (int d = 1; d <= 5; ++d) compare(calibrated(ap), {0, 20, d});
    for (int l = 20; l <= 24; ++l) compare(calibrated(ap), {0, l, 3});
  }
  RandomConfigs gen(6);
  std::uniform_int_distribution<int> un(0, 2);
  int checked = 0;
  while (checked < 100) {
    auto [p, s] = gen.next(un(gen.rng));
    try {
      solve_energy(p, s);
    } catch (const SolverError&) {
      continue;
    }
    compare(p, s);
    ++checked;
  }
}

TEST(Acceptance, Criterion7_GroundStateRoutesAgree) {
  for (int d = 1; d <= 5; ++d) {
    for (double ap : ref::kTableAlphas) {
      const auto p = calibrated(ap);
      const QuantumState s{0, 20, d};
      const auto general = solve_energy(p, s);
      const auto ground = ground_state_energy(p, s);
      EXPECT_LT(rel(*ground.e_upper, *general.e_upper), 1e-10);
      EXPECT_LT(rel(*ground.e_lower, *general.e_lower), 1e-10);
    }
  }
}

namespace {

struct OracleCell {
  const char* label;
  double alpha_prime;
  QuantumState state;
};

constexpr OracleCell kOracleCells[] = {
    {"T1 D=1 a'=0", 0.0, {0, 20, 1}},      {"T1 D=1 a'=0.01", 0.01, {0, 20, 1}},
    {"T1 D=5 a'=0", 0.0, {0, 20, 5}},      {"T1 D=5 a'=0.01", 0.01, {0, 20, 5}},
    {"T2 l=22 a'=0.005", 0.005, {0, 22, 3}}, {"T2 l=24 a'=0.01", 0.01, {0, 24, 3}},
};

/// Shooting eigenvalue near `e` at the given step count, or an error message.
std::pair<std::optional<double>, std::string> shoot_near(const PhysicalParams& p,
                                                         const QuantumState& s, double e,
                                                         int steps, double r_max = 0.0) {
  auto cfg = default_shooting_config(p, e - 1.0, e + 1.0);
  cfg.step_count = steps;
  cfg.energy_tolerance = 1e-14;
  if (r_max > 0.0) cfg.r_max = r_max;
  try {
    const auto found = find_eigenvalues(cfg, p, s, 1);
    return {found.front().energy, {}};
  } catch (const SolverError& err) {
    return {std::nullopt, std::string(to_string(err.kind())) + ": " + err.what()};
  }
}

}  // namespace

TEST(Acceptance, Criterion8_OracleAtTableCells) {
  const auto t0 = Clock::now();
  for (const auto& cell : kOracleCells) {
    const auto p = calibrated(cell.alpha_prime);
    const auto spectrum = solve_energy(p, cell.state);
    const double e = spectrum.e_selected();
    const auto [coarse, why] = shoot_near(p, cell.state, e, 20000);
    if (!coarse) {
      ADD_FAILURE() << cell.label << ": no shooting eigenvalue within 1 of E = " << e << " (A = "
                    << spectrum.a_selected << "); " << why;
      continue;
    }
    EXPECT_NEAR(*coarse, e, 1e-3) << cell.label;
    const auto [fine, why_fine] = shoot_near(p, cell.state, e, 40000);
    ASSERT_TRUE(fine) << why_fine;
    const auto [finer, why_finer] = shoot_near(p, cell.state, e, 80000);
    ASSERT_TRUE(finer) << why_finer;
    const double order = std::log2(std::fabs(*coarse - *fine) / std::fabs(*fine - *finer));
    EXPECT_GT(order, 3.5) << cell.label;
    EXPECT_LT(order, 4.5) << cell.label;
  }
  EXPECT_LT(seconds_since(t0), 30.0);
}

// Same procedure on a configuration with a decaying ground state. The long
// domain keeps the discretization error above rounding at 1e4 steps.
TEST(Acceptance, Criterion8_OracleAtBoundConfiguration) {
  const auto t0 = Clock::now();
  const auto p = ref::bound_params();
  const auto s = ref::kBoundState;
  const double e = solve_energy(p, s).e_selected();
  const auto [coarse, why] = shoot_near(p, s, e, 10000, 250.0);
  ASSERT_TRUE(coarse) << why;
  EXPECT_NEAR(*coarse, e, 1e-3);
  const auto [fine, why_fine] = shoot_near(p, s, e, 20000, 250.0);
  ASSERT_TRUE(fine) << why_fine;
  EXPECT_NEAR(*fine, e, 1e-3);
  const double order = std::log2(std::fabs(*coarse - e) / std::fabs(*fine - e));
  EXPECT_GT(order, 3.5);
  EXPECT_LT(order, 4.5);
  EXPECT_LT(seconds_since(t0), 30.0);
}

TEST(Acceptance, Criterion9_Wavefunction) {
  const auto p = ref::bound_params();
  const auto s = ref::kBoundState;
  const double a = p.surface_thickness, R = p.radius;
  const auto spectrum = solve_energy(p, s);
  const double e = spectrum.e_selected();
  const auto sp = solve_susy_parameters(derive_coefficients(p, s), pekeris_coefficients(R, a), p, e);
  ASSERT_LT(sp.A, 0.0);
  const auto wf = normalize(sp.A, sp.B, a, R);

  for (double r : {R - 2 * a, R, R + 2 * a, R + 5 * a}) {
    const double scale = std::fmax(std::fabs(evaluate(wf, r)), std::fabs(second_derivative(wf, r)));
    EXPECT_LT(std::fabs(ode_residual(wf, e, p, s, r)) / scale, 1e-8) << "r=" << r;
  }

  EXPECT_NEAR(norm_integral(wf), 1.0, 1e-8);

  int sign_changes = 0;
  double prev = evaluate(wf, wf.r_max * 1e-4);
  for (int i = 2; i <= 10000; ++i) {
    const double v = evaluate(wf, wf.r_max * i * 1e-4);
    if ((v > 0) != (prev > 0)) ++sign_changes;
    prev = v;
  }
  EXPECT_EQ(sign_changes, 0);

  const auto cfg = default_shooting_config(p, e - 0.2, e + 0.2);
  const auto sol = shoot(find_eigenvalues(cfg, p, s, 1).front().energy, cfg, p, s);
  const auto y = normalized_samples(sol);
  double fy = 0.0, ff = 0.0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    const double f0 = evaluate(wf, sol.r[i]);
    const double f1 = evaluate(wf, sol.r[i + 1]);
    fy += 0.5 * sol.h * (f0 * y[i] + f1 * y[i + 1]);
    ff += 0.5 * sol.h * (f0 * f0 + f1 * f1);
  }
  EXPECT_GT(std::fabs(fy) / std::sqrt(ff), 0.9999);
}

TEST(Acceptance, Criterion10_DegenerateInput) {
  const auto p = ref::table_params(0.0);
  const QuantumState s{0, 0, 3};
  EXPECT_EQ(kind_of([&] { solve_energy(p, s); }), ErrorKind::DegenerateSuperpotential);
  EXPECT_EQ(kind_of([&] { ground_state_energy(p, s); }), ErrorKind::DegenerateSuperpotential);
  SweepGrid grid{{0.0}, {3}, {0}, {0}};
  const auto rows = sweep(p, grid);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].result.has_value());
  ASSERT_TRUE(rows[0].error.has_value());
  EXPECT_EQ(*rows[0].error, ErrorKind::DegenerateSuperpotential);
}

// ---------------------------------------------------------------------------

namespace {

/// Prints one line per criterion once the run ends.
class CriterionReport : public ::testing::EmptyTestEventListener {
 public:
  void OnTestEnd(const ::testing::TestInfo& info) override {
    const std::string name = info.name();
    if (name.rfind("Criterion", 0) != 0) return;
    const int id = std::stoi(name.substr(9));
    auto& entry = results_[id];
    entry.ran = true;
    entry.passed = entry.passed && info.result()->Passed();
    if (!info.result()->Passed()) entry.failed.push_back(name);
  }

  void OnTestProgramEnd(const ::testing::UnitTest&) override {
    for (const auto& [id, entry] : results_) {
      std::printf("criterion %2d: %s", id, entry.passed ? "PASS" : "FAIL");
      for (const auto& f : entry.failed) std::printf(" [%s]", f.c_str());
      std::printf("\n");
    }
    std::fflush(stdout);
  }

 private:
  struct Entry {
    bool ran = false;
    bool passed = true;
    std::vector<std::string> failed;
  };
  std::map<int, Entry> results_;
};

}  // namespace

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  ::testing::UnitTest::GetInstance()->listeners().Append(new CriterionReport);
  return RUN_ALL_TESTS();
}
