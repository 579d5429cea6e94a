#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace stabrecon {

/// Field elements are small integers; GF(p^k) element sum_i a_i t^i is encoded
/// as sum_i a_i p^i.
using Elem = std::uint8_t;

/// Finite field GF(p^k) with q <= 256, backed by full lookup tables.
///
/// A Field is a cheap handle (shared immutable tables); copies compare equal
/// when they describe the same field.
class Field {
 public:
  Field() = default;

  /// GF(p^k) with the bundled (Conway) modulus. Throws std::invalid_argument
  /// when p is not prime, q > 256, or no modulus is bundled.
  static Field make(int p, int k = 1);

  /// GF(p^k) with a caller-supplied monic modulus, low coefficient first.
  static Field make(int p, int k, const std::vector<int>& modulus);

  int p() const { return t_->p; }
  int k() const { return t_->k; }
  int q() const { return t_->q; }
  const std::vector<int>& modulus() const { return t_->modulus; }
  bool valid() const { return static_cast<bool>(t_); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return t_->add[idx(a, b)]; }
  Elem sub(Elem a, Elem b) const { return t_->add[idx(a, t_->neg[b])]; }
  Elem mul(Elem a, Elem b) const { return t_->mul[idx(a, b)]; }
  Elem neg(Elem a) const { return t_->neg[a]; }
  /// Multiplicative inverse; throws std::domain_error on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// Image of an integer under Z -> GF(p) -> GF(q).
  Elem from_int(long long v) const;

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.t_ == b.t_ || (a.t_ && b.t_ && a.t_->p == b.t_->p && a.t_->k == b.t_->k &&
                            a.t_->modulus == b.t_->modulus);
  }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  struct Tables {
    int p = 0, k = 0, q = 0;
    std::vector<int> modulus;
    std::vector<Elem> add, mul, neg, inv;
  };

  std::size_t idx(Elem a, Elem b) const { return static_cast<std::size_t>(a) * t_->q + b; }

  std::shared_ptr<const Tables> t_;
};

bool is_prime(int n);

/// Bundled modulus for GF(p^k), empty when k == 1 or not bundled.
std::vector<int> bundled_modulus(int p, int k);

/// Brute-force irreducibility test of a monic polynomial over GF(p).
bool is_irreducible_mod_p(int p, const std::vector<int>& poly);

}  // namespace stabrecon
