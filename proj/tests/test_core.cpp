#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fusa/core.hpp"

using namespace fusa;

TEST_CASE("asil total order") {
  const Asil all[] = {Asil::QM, Asil::A, Asil::B, Asil::C, Asil::D};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK((all[i] < all[j]) == (i < j));
      if (all[i] < all[j]) CHECK_FALSE(all[j] < all[i]);
    }
  for (auto a : all) CHECK(parse_asil(to_string(a)) == a);
  CHECK_FALSE(parse_asil("E").has_value());
  CHECK_FALSE(parse_asil("qm").has_value());
}

TEST_CASE("failure rate units") {
  CHECK(FailureRate::fit(100).per_hour() == 1e-7);
  CHECK(FailureRate::per_hour(1e-9).fit() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(FailureRate::fit(-1), DomainError);
  CHECK_THROWS_AS(FailureRate::per_hour(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(FailureRate::per_hour(std::nan("")), DomainError);
  CHECK(FailureRate::from(5, RateUnit::FIT) == FailureRate::fit(5));
  CHECK(parse_rate_unit("FIT") == RateUnit::FIT);
  CHECK(parse_rate_unit("per_hour") == RateUnit::PerHour);
  CHECK_FALSE(parse_rate_unit("fit").has_value());
}

TEST_CASE("FIT round trip stays within one ulp") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> exponent(-6.0, 6.0);
  for (int i = 0; i < 2000; ++i) {
    const double fit = std::pow(10.0, exponent(rng));
    const double back = FailureRate::fit(fit).fit();
    const double ulp = std::nextafter(fit, INFINITY) - fit;
    CHECK(std::fabs(back - fit) <= ulp);
  }
}

TEST_CASE("unit interval") {
  CHECK(UnitInterval(0.0).value() == 0.0);
  CHECK(UnitInterval(1.0).value() == 1.0);
  CHECK_THROWS_AS(UnitInterval(-1e-300), DomainError);
  CHECK_THROWS_AS(UnitInterval(1.0000000000000002), DomainError);
  CHECK_THROWS_AS(UnitInterval(std::nan("")), DomainError);
}

TEST_CASE("findings sort by rule then subject") {
  std::vector<Finding> f = {{"B", Severity::Info, "x", ""},
                            {"A", Severity::Error, "z", ""},
                            {"A", Severity::Warning, "y", ""}};
  sort_findings(f);
  CHECK(f[0].subject == "y");
  CHECK(f[1].subject == "z");
  CHECK(f[2].rule_id == "B");
  CHECK(has_errors(f));
  CHECK(has_warnings(f));
  CHECK(count_rule(f, "A") == 2);
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(1e-9) == "1e-09");
  CHECK(format_double(0.99) == "0.99");
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("compensated sum is order stable") {
  std::vector<double> v;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) v.push_back(std::pow(10.0, -12.0 * u(rng)));
  KahanSum a, b;
  for (double x : v) a.add(x);
  for (auto it = v.rbegin(); it != v.rend(); ++it) b.add(*it);
  CHECK(std::fabs(a.value() - b.value()) <= 1e-12 * a.value());
}
