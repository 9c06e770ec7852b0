#include <limits>
#include <stdexcept>

#include "support.hpp"

using namespace testing;

TEST_CASE("rationals normalize") {
  CHECK(R(2, 4) == R(1, 2));
  CHECK(R(3, -6) == R(-1, 2));
  CHECK(R(-3, -6).num() == 1);
  CHECK(R(0, -5).den() == 1);
  CHECK_THROWS_AS(R(1, 0), InvalidInput);
}

TEST_CASE("rational arithmetic and ordering") {
  CHECK(R(1, 3) + R(1, 6) == R(1, 2));
  CHECK(R(1, 3) - R(1, 2) == R(-1, 6));
  CHECK(R(2, 3) * R(9, 4) == R(3, 2));
  CHECK(R(2, 3) / R(4, 9) == R(3, 2));
  CHECK(R(1, 3) < R(34, 100));
  CHECK(R(-1, 2) < R(-1, 3));
  CHECK(R(7, 2).floor() == 3);
  CHECK(R(7, 2).ceil() == 4);
  CHECK(R(-7, 2).floor() == -4);
  CHECK(R(-7, 2).ceil() == -3);
  CHECK(R(6).ceil() == 6);
  CHECK(R(-2, 5).sign() == -1);
}

TEST_CASE("rational text form") {
  CHECK(R(3, 2).to_string() == "3/2");
  CHECK(R(-4).to_string() == "-4");
  CHECK(Rational::parse("6/18") == R(1, 3));
  CHECK(Rational::parse("-7") == R(-7));
  CHECK_THROWS_AS(Rational::parse("1/0"), InvalidInput);
  CHECK_THROWS_AS(Rational::parse("abc"), InvalidInput);
  CHECK_THROWS_AS(Rational::parse("1/"), InvalidInput);
  CHECK_THROWS_AS(Rational::parse(""), InvalidInput);
}

TEST_CASE("overflow is reported, never wrapped") {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(big + R(1), std::overflow_error);
  CHECK_THROWS_AS(big * R(2), std::overflow_error);
  // intermediates that overflow int64 but reduce are fine
  CHECK(big * R(1, 3) / big == R(1, 3));
}

TEST_CASE("extended rationals") {
  const ExtRational inf = ExtRational::infinity();
  CHECK(inf.is_infinite());
  CHECK(ExtRational(R(1000000)) < inf);
  CHECK(inf == ExtRational::infinity());
  CHECK(inf.to_string() == "inf");
  CHECK(ExtRational::parse("inf").is_infinite());
  CHECK(ExtRational::parse("5/10") == ExtRational(R(1, 2)));
  CHECK((inf / R(3)).is_infinite());
  CHECK(ExtRational(R(6)) / R(3) == ExtRational(R(2)));
  CHECK(ExtRational(R(1, 2)) * R(4) == ExtRational(R(2)));
}
