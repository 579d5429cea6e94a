#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "stabrecon/field.hpp"

using namespace stabrecon;

namespace {

// Schoolbook GF(p)[t]/(m) multiplication on coefficient vectors, used as an
// oracle independent of the lookup tables.
int slow_mul(int a, int b, int p, const std::vector<int>& m) {
  const int k = static_cast<int>(m.size()) - 1;
  std::vector<int> x(k), y(k), z(2 * k, 0);
  for (int i = 0; i < k; ++i, a /= p, b /= p) {
    x[i] = a % p;
    y[i] = b % p;
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
  for (int i = 2 * k - 1; i >= k; --i) {
    int c = z[i];
    for (int j = 0; j <= k; ++j) z[i - k + j] = ((z[i - k + j] - c * m[j]) % p + p) % p;
  }
  int v = 0;
  for (int i = k - 1; i >= 0; --i) v = v * p + z[i];
  return v;
}

void check_axioms(const Field& f) {
  const int q = f.q();
  for (int a = 0; a < q; ++a) {
    const Elem ea = static_cast<Elem>(a);
    CHECK(f.add(ea, 0) == ea);
    CHECK(f.mul(ea, 1) == ea);
    CHECK(f.add(ea, f.neg(ea)) == 0);
    if (a) CHECK(f.mul(ea, f.inv(ea)) == 1);
    for (int b = 0; b < q; ++b) {
      const Elem eb = static_cast<Elem>(b);
      REQUIRE(f.add(ea, eb) == f.add(eb, ea));
      REQUIRE(f.mul(ea, eb) == f.mul(eb, ea));
      if (f.k() > 1) REQUIRE(f.mul(ea, eb) == slow_mul(a, b, f.p(), f.modulus()));
      else REQUIRE(f.mul(ea, eb) == (a * b) % f.p());
    }
  }
  // distributivity and associativity on a stride through all triples
  for (int a = 0; a < q; a += 3)
    for (int b = 0; b < q; b += 5)
      for (int c = 0; c < q; c += 7) {
        const Elem x = static_cast<Elem>(a), y = static_cast<Elem>(b), z = static_cast<Elem>(c);
        REQUIRE(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
        REQUIRE(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
        REQUIRE(f.add(f.add(x, y), z) == f.add(x, f.add(y, z)));
      }
}

}  // namespace

TEST_CASE("bundled moduli are irreducible") {
  for (int p : {2, 3, 5, 7, 11, 13})
    for (int k = 2; k <= 8; ++k) {
      auto m = bundled_modulus(p, k);
      if (m.empty()) continue;
      CAPTURE(p);
      CAPTURE(k);
      CHECK(is_irreducible_mod_p(p, m));
    }
  CHECK_FALSE(is_irreducible_mod_p(2, {1, 0, 1}));  // (t+1)^2
  CHECK_FALSE(is_irreducible_mod_p(5, {4, 0, 1}));  // t^2 - 1
}

TEST_CASE("field axioms hold on every element") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {5, 1}, {251, 1}, {2, 2}, {2, 8}, {3, 5}, {5, 3}, {13, 2}}) {
    CAPTURE(p);
    CAPTURE(k);
    check_axioms(Field::make(p, k));
  }
}

TEST_CASE("GF(4) table") {
  Field f = Field::make(2, 2);
  CHECK(f.q() == 4);
  // t^2 = t + 1 with t encoded as 2
  CHECK(f.mul(2, 2) == 3);
  CHECK(f.mul(2, 3) == 1);
  CHECK(f.mul(3, 3) == 2);
  CHECK(f.add(2, 3) == 1);
  CHECK(f.inv(2) == 3);
}

TEST_CASE("invalid fields are rejected") {
  CHECK_THROWS_AS(Field::make(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(2, 9), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(2, 2, {1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(5).inv(0), std::domain_error);
}

TEST_CASE("from_int reduces mod p") {
  Field f = Field::make(5);
  CHECK(f.from_int(-1) == 4);
  CHECK(f.from_int(12) == 2);
  Field g = Field::make(3, 2);
  CHECK(g.from_int(4) == 1);
}
