#include "stabrecon/field.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace stabrecon {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<int> bundled_modulus(int p, int k) {
  // Conway polynomials, constant term first, monic.
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{7, 2}, {3, 6, 1}},
      {{11, 2}, {2, 7, 1}},
      {{13, 2}, {2, 12, 1}},
  };
  if (k == 1) return {};
  auto it = table.find({p, k});
  return it == table.end() ? std::vector<int>{} : it->second;
}

namespace {

// Polynomial remainder over GF(p); a and m low-first, m monic.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
  const int dm = static_cast<int>(m.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    int c = a[i] % p;
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
  }
  a.resize(std::min<std::size_t>(a.size(), dm));
  return a;
}

std::vector<int> decode(int v, int p, int k) {
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) {
    c[i] = v % p;
    v /= p;
  }
  return c;
}

int encode(const std::vector<int>& c, int p) {
  int v = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p + c[i];
  return v;
}

}  // namespace

bool is_irreducible_mod_p(int p, const std::vector<int>& poly) {
  const int n = static_cast<int>(poly.size()) - 1;
  if (n < 1 || poly.back() % p != 1) return false;
  if (n == 1) return true;
  // Trial division by every monic polynomial of degree 1..n/2.
  for (int d = 1; d <= n / 2; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int v = 0; v < count; ++v) {
      std::vector<int> m = decode(v, p, d);
      m.push_back(1);
      auto r = poly_mod(poly, m, p);
      bool zero = true;
      for (int c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

Field Field::make(int p, int k) {
  if (k == 1) return make(p, 1, {0, 1});
  auto m = bundled_modulus(p, k);
  if (m.empty()) throw std::invalid_argument("no bundled modulus for GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");
  return make(p, k, m);
}

Field Field::make(int p, int k, const std::vector<int>& modulus) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
  int q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > 256) throw std::invalid_argument("field order must be <= 256");
  }
  if (static_cast<int>(modulus.size()) != k + 1 || modulus.back() != 1)
    throw std::invalid_argument("modulus must be monic of degree k");
  if (k > 1 && !is_irreducible_mod_p(p, modulus)) throw std::invalid_argument("modulus is reducible");

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->k = k;
  t->q = q;
  t->modulus = modulus;
  t->add.resize(static_cast<std::size_t>(q) * q);
  t->mul.resize(static_cast<std::size_t>(q) * q);
  t->neg.resize(q);
  t->inv.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    auto ca = decode(a, p, k);
    std::vector<int> cn(k);
    for (int i = 0; i < k; ++i) cn[i] = (p - ca[i]) % p;
    t->neg[a] = static_cast<Elem>(encode(cn, p));
    for (int b = 0; b < q; ++b) {
      auto cb = decode(b, p, k);
      std::vector<int> cs(k);
      for (int i = 0; i < k; ++i) cs[i] = (ca[i] + cb[i]) % p;
      t->add[a * q + b] = static_cast<Elem>(encode(cs, p));
      std::vector<int> prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      auto r = k == 1 ? std::vector<int>{prod[0] % p} : poly_mod(prod, modulus, p);
      r.resize(k, 0);
      t->mul[a * q + b] = static_cast<Elem>(encode(r, p));
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (t->mul[a * q + b] == 1) {
        t->inv[a] = static_cast<Elem>(b);
        break;
      }
  Field f;
  f.t_ = std::move(t);
  return f;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return t_->inv[a];
}

Elem Field::from_int(long long v) const {
  long long r = v % t_->p;
  if (r < 0) r += t_->p;
  return static_cast<Elem>(r);
}

std::string Field::name() const {
  return t_->k == 1 ? "GF(" + std::to_string(t_->p) + ")"
                    : "GF(" + std::to_string(t_->p) + "^" + std::to_string(t_->k) + ")";
}

}  // namespace stabrecon
