#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "schatten/generators.hpp"
#include "schatten/integral_rep.hpp"

using namespace schatten;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_SUITE("integral_rep") {
  TEST_CASE("half-line quadrature on known integrals") {
    const QuadratureConfig cfg;
    auto r = integrate_half_line([](double t) { return std::exp(-t); }, cfg);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    r = integrate_half_line([](double t) { return 1.0 / (1.0 + t * t); }, cfg);
    CHECK(r.value == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    // endpoint singularity t^(-1/2)
    r = integrate_half_line([](double t) { return std::exp(-t) / std::sqrt(t); }, cfg);
    CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-11));
    CHECK(r.levels >= 3);
  }

  TEST_CASE("quadrature config validation and non-convergence") {
    QuadratureConfig bad;
    bad.max_levels = 21;
    CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidConfig);
    bad = {};
    bad.abs_tol = 0.0;
    CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidConfig);

    QuadratureConfig tight;
    tight.abs_tol = tight.rel_tol = 1e-16;
    tight.max_levels = 3;
    // oscillates, so three levels cannot agree to 1e-16
    CHECK(code_of([&] { integrate_half_line([](double t) { return std::sin(t) * std::exp(-0.01 * t); }, tight); }) ==
          ErrorCode::QuadratureNoConvergence);
  }

  TEST_CASE("k_p against the Beta integral") {
    CHECK(kp_constant(1.5) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
    CHECK(kp_constant(1.25) == doctest::Approx(kp_constant(1.75)).epsilon(1e-15));
    CHECK(kp_constant(1.0 + 1e-9) < 1e-8);
    CHECK(code_of([] { kp_constant(2.0); }) == ErrorCode::InvalidP);
    CHECK(code_of([] { kp_constant(1.0); }) == ErrorCode::InvalidP);

    // int s^(p-2) / (1+s) ds = pi / sin(pi (p-1)), evaluated numerically
    for (double p : {1.1, 1.3, 1.5, 1.9}) {
      const auto r = integrate_half_line([p](double s) { return std::pow(s, p - 2.0) / (1.0 + s); }, {});
      CHECK(kp_constant(p) * r.value == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  TEST_CASE("scalar identity on random (c, p)") {
    oracle::Rng rng(51);
    for (int trial = 0; trial < 200; ++trial) {
      const double c = std::exp(rng.uniform(-5.0, 5.0));
      const double p = rng.uniform(1.0005, 1.9995);
      const double cp = std::pow(c, p);
      CHECK(std::abs(power_via_integral_scalar(c, p) - cp) <= 1e-8 * cp);
    }
    CHECK(power_via_integral_scalar(0.0, 1.5) == 0.0);
    // exponents hugging the ends of the range, where the tails decay slowest
    for (double p : {1.0 + 1e-4, 1.001, 1.999, 2.0 - 1e-4})
      for (double c : {1e-3, 1.0, 1e3}) CHECK(std::abs(power_via_integral_scalar(c, p) / std::pow(c, p) - 1.0) <= 1e-8);
  }

  TEST_CASE("extended-range scalar identity") {
    oracle::Rng rng(52);
    for (int trial = 0; trial < 100; ++trial) {
      const double c = rng.uniform(0.1, 10.0);
      const double q = rng.uniform(2.0005, 2.9995);
      const double cq = std::pow(c, q);
      CHECK(std::abs(extended_power_via_integral_scalar(c, q) - cq) <= 1e-8 * cq);
      // the simplified integrand equals the four-term resolvent form
      for (double t : {0.3, 1.0, 7.0}) {
        const double raw = (c * c / (t * t * t) - c / (t * t) + 1.0 / t - 1.0 / (t + c)) * std::pow(t, q);
        const double simple = c * c * c * std::pow(t, q - 3.0) / (t + c);
        CHECK(raw == doctest::Approx(simple).epsilon(1e-9));
      }
    }
    CHECK(code_of([] { extended_power_via_integral_scalar(1.0, 1.5); }) == ErrorCode::InvalidP);
  }

  TEST_CASE("matrix power via the integral") {
    ComplexMatrix one(1, 1);
    one << 1.0;
    CHECK(std::abs(power_via_integral(one, 1.5)(0, 0) - 1.0) <= 1e-9);

    const double d41[] = {4.0, 1.0};
    const auto r = power_via_integral(diagonal(d41), 1.5);
    CHECK(r(0, 0).real() == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(r(1, 1).real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(r(0, 1)) <= 1e-12);

    const auto c = mat2(2, 1, 1, 2);
    const auto ref = oracle::spectral(c, [](double x) { return std::pow(x, 1.5); });
    CHECK((power_via_integral(c, 1.5) - ref).norm() <= 1e-6);

    CHECK(code_of([] { power_via_integral(mat2(1, 2, 2, 1), 1.5); }) == ErrorCode::NotPSD);
  }

  TEST_CASE("matrix power via the integral matches an Eigen oracle") {
    oracle::Rng rng(53);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = rng.integer(1, 8);
      const auto c = rng.psd(n);
      const double p = rng.uniform(1.0005, 1.9995);
      const auto ref = oracle::spectral(c, [p](double x) { return std::pow(x, p); });
      CHECK((power_via_integral(c, p) - ref).norm() <= 1e-6 * ref.norm());
    }
  }

  TEST_CASE("ordered-pair integrand") {
    const double d32[] = {3, 2}, d10[] = {1, 0};
    auto m = ordered_resolvent_integrand(diagonal(d32), diagonal(d10), 1.0);
    CHECK(m.matrix.norm() <= 1e-14);
    CHECK(m.psd);
    CHECK(std::abs(m.trace) <= 1e-14);

    // The matrix itself is not PSD here: smallest eigenvalue is about -0.02507.
    // Only its trace is nonnegative.
    m = ordered_resolvent_integrand(diagonal(d32), 0.5 * mat2(1, 1, 1, 1), 1.0);
    CHECK_FALSE(m.psd);
    const auto e = oracle::eigenvalues_desc(m.matrix);
    CHECK(e.back() == doctest::Approx(-0.02507).epsilon(1e-3));
    CHECK(m.trace == doctest::Approx(m.matrix.trace().real()).epsilon(1e-10));
    CHECK(m.trace > 0.0);

    CHECK(code_of([] { ordered_resolvent_integrand(identity(2), 2.0 * identity(2), 1.0); }) == ErrorCode::HypothesisViolated);
    CHECK(code_of([] { ordered_resolvent_integrand(identity(2), identity(2), 0.0); }) == ErrorCode::DomainViolation);
  }

  TEST_CASE("ordered-pair integrand trace is nonnegative") {
    for (std::uint64_t i = 0; i < 300; ++i) {
      const auto pr = random_pair({FamilyTag::OrderedPsd, 2 + static_cast<int>(i % 3)}, {61, i});
      for (double t : {0.1, 1.0, 10.0}) {
        const auto m = ordered_resolvent_integrand(pr.a, pr.b, t);
        CHECK(m.trace >= -1e-10);
        CHECK(std::abs(m.trace - m.matrix.trace().real()) <= 1e-9 * (1.0 + m.matrix.norm()));
      }
    }
  }

  TEST_CASE("contraction integrand trace") {
    const double d56[] = {5, 6}, d1h[] = {1, 0.5};
    CHECK(std::abs(updown_resolvent_trace(diagonal(d56), diagonal(d1h), 1.0)) <= 1e-14);
    const auto ce1 = fixture_pair("ce1");
    CHECK(updown_resolvent_trace(ce1.a, ce1.b, 1.0) <= 0.0);
    for (std::uint64_t i = 0; i < 300; ++i) {
      const auto pr = random_pair({FamilyTag::Contraction, 2 + static_cast<int>(i % 3)}, {62, i});
      for (double t : {0.1, 1.0, 10.0}) CHECK(updown_resolvent_trace(pr.a, pr.b, t) <= 1e-8);
    }
    // sigma_n(A) < sigma_1(B)
    const double d11[] = {1, 1};
    CHECK(code_of([&] { updown_resolvent_trace(diagonal(d11), 0.9 * mat2(0, 1, 1, 0) * 1.5, 1.0); }) ==
          ErrorCode::HypothesisViolated);
  }

  TEST_CASE("stable trace difference matches the direct sum") {
    oracle::Rng rng(63);
    for (int trial = 0; trial < 100; ++trial) {
      const auto pr = random_pair({FamilyTag::OrderedPsd, 3}, {64, static_cast<std::uint64_t>(trial)});
      for (double t : {0.01, 0.5, 3.0, 50.0}) {
        const auto m = ordered_resolvent_integrand(pr.a, pr.b, t);
        CHECK(std::abs(m.trace - m.matrix.trace().real()) <= 1e-10 * (1.0 + m.matrix.norm()));
      }
    }
  }

  TEST_CASE("gap via the integral") {
    const auto ce1 = fixture_pair("ce1");
    for (double p : {1.25, 1.5, 1.75, 2.25, 2.5, 2.75}) {
      const double direct = rearrangement_gap(ce1.a, ce1.b, p, Arrangement::Aligned).gap;
      CHECK(integral_gap(ce1.a, ce1.b, p, Arrangement::Aligned) == doctest::Approx(direct).epsilon(1e-6));
    }
    for (std::uint64_t i = 0; i < 20; ++i) {
      const auto pr = random_pair({FamilyTag::OrderedPsd, 3}, {65, i});
      for (double p : {1.25, 1.5, 1.75, 2.5}) {
        const double direct = oracle::gap(pr.a, pr.b, p, true);
        CHECK(integral_gap(pr.a, pr.b, p, Arrangement::Aligned) == doctest::Approx(direct).epsilon(1e-5));
      }
    }
    for (std::uint64_t i = 0; i < 20; ++i) {
      const auto pr = random_pair({FamilyTag::Contraction, 3}, {66, i});
      const double direct = oracle::gap(pr.a, pr.b, 1.5, false);
      CHECK(integral_gap(pr.a, pr.b, 1.5, Arrangement::UpDown) == doctest::Approx(direct).epsilon(1e-5));
    }
    CHECK(code_of([&] { integral_gap(ce1.a, ce1.b, 2.0, Arrangement::Aligned); }) == ErrorCode::InvalidP);
  }

  TEST_CASE("neumann terms") {
    const auto ce1 = fixture_pair("ce1");
    auto term = neumann_trace_term(ce1.a, ce1.b, 1.0, 0);
    CHECK(term.value == doctest::Approx(1.0 / 7.0 + 1.0 / 6.0).epsilon(1e-13));
    CHECK(term.value == doctest::Approx(term.bound).epsilon(1e-13));
    term = neumann_trace_term(ce1.a, ce1.b, 1.0, 1);
    CHECK(term.value <= term.bound + 1e-9);

    const double d56[] = {5, 6}, d1h[] = {1, 0.5};
    for (int m = 0; m < 5; ++m) {
      term = neumann_trace_term(diagonal(d56), diagonal(d1h), 0.7, m);
      CHECK(term.value == doctest::Approx(term.bound).epsilon(1e-12));
    }

    for (std::uint64_t i = 0; i < 300; ++i) {
      const auto pr = random_pair({FamilyTag::Contraction, 2 + static_cast<int>(i % 3)}, {67, i});
      const double t = 0.1 * std::pow(10.0, static_cast<double>(i % 3));
      const int m = static_cast<int>(i % 6);
      term = neumann_trace_term(pr.a, pr.b, t, m);
      CHECK(term.value <= term.bound + 1e-9);
    }
    CHECK(code_of([&] { neumann_trace_term(ce1.a, ce1.b, 1.0, -1); }) == ErrorCode::InvalidConfig);
  }

  TEST_CASE("neumann partial sums increase to the resolvent trace") {
    for (std::uint64_t i = 0; i < 30; ++i) {
      const auto pr = random_pair({FamilyTag::Contraction, 3}, {68, i});
      const auto s = neumann_partial_sums(pr.a, pr.b, 1.0);
      for (std::size_t k = 1; k < s.partial_sums.size(); ++k) CHECK(s.partial_sums[k] >= s.partial_sums[k - 1]);
      CHECK(s.partial_sums.back() == doctest::Approx(s.target).epsilon(1e-8));
    }
  }
}
