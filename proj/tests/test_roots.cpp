#include <doctest.h>

#include <cmath>

#include "nhrm/errors.hpp"
#include "nhrm/roots.hpp"

using nhrm::find_root_bracketed;

TEST_CASE("find_root_bracketed locates simple roots") {
  const auto f = [](double x) { return x * x - 2.0; };
  const auto df = [](double x) { return 2.0 * x; };
  const double want = std::sqrt(2.0);

  CHECK(find_root_bracketed(f, 1.0, 2.0, 1e-14) ==
        doctest::Approx(want).epsilon(1e-12));
  CHECK(find_root_bracketed(f, df, 1.0, 2.0, 1e-14) ==
        doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("find_root_bracketed handles slow one-sided convergence") {
  // Convex residual whose secant iterates approach from one side only;
  // the stale-endpoint halving must still shrink the bracket.
  const auto f = [](double x) { return std::pow(x, 10) - 0.5; };
  const double want = std::pow(0.5, 0.1);
  CHECK(find_root_bracketed(f, 0.0, 1.0, 1e-13) ==
        doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("find_root_bracketed returns exact endpoint zeros") {
  const auto f = [](double x) { return x - 1.0; };
  CHECK(find_root_bracketed(f, 1.0, 2.0, 1e-12) == 1.0);
  CHECK(find_root_bracketed(f, 0.0, 1.0, 1e-12) == 1.0);
}

TEST_CASE("find_root_bracketed handles steep transcendental residuals") {
  const auto f = [](double x) { return std::tanh(50.0 * (x - 0.731)); };
  CHECK(find_root_bracketed(f, 0.0, 1.0, 1e-13) ==
        doctest::Approx(0.731).epsilon(1e-9));

  const auto g = [](double x) { return std::exp(x) - 3.0; };
  const auto dg = [](double x) { return std::exp(x); };
  CHECK(find_root_bracketed(g, dg, 0.0, 4.0, 1e-14) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("find_root_bracketed rejects invalid input") {
  const auto f = [](double x) { return x; };
  const auto df = [](double) { return 1.0; };
  CHECK_THROWS_AS(find_root_bracketed(f, 1.0, 2.0, 1e-12),
                  nhrm::BracketError);  // no sign change
  CHECK_THROWS_AS(find_root_bracketed(f, df, 1.0, 2.0, 1e-12),
                  nhrm::BracketError);
  CHECK_THROWS_AS(find_root_bracketed(f, 2.0, 1.0, 1e-12),
                  nhrm::BracketError);  // inverted bracket
  CHECK_THROWS_AS(find_root_bracketed(f, -1.0, 1.0, 0.0), nhrm::RangeError);
}
