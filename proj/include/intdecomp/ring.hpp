#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace intdecomp {

template <class Element>
struct ExtGcd {
  Element g, u, v;  // u*a + v*b == g
};

template <class Element>
struct DivMod {
  Element quot, rem;  // a == quot*b + rem
};

/// A Euclidean domain with exact arithmetic. Elements support + - * and unary
/// minus; everything that needs more structure goes through the ring object.
template <class R>
concept EuclideanRing = std::copyable<R> && requires(const R& r, const typename R::Element& a,
                                                     const typename R::Element& b, long n,
                                                     const std::string& s) {
  typename R::Element;
  { r.zero() } -> std::same_as<typename R::Element>;
  { r.one() } -> std::same_as<typename R::Element>;
  { r.from_int(n) } -> std::same_as<typename R::Element>;
  { r.from_integer(mpz_class{}) } -> std::same_as<typename R::Element>;
  { r.is_zero(a) } -> std::same_as<bool>;
  { r.is_unit(a) } -> std::same_as<bool>;
  { r.normalize(a) } -> std::same_as<typename R::Element>;
  { r.unit_part(a) } -> std::same_as<typename R::Element>;
  { r.unit_inverse(a) } -> std::same_as<typename R::Element>;
  { r.div_exact(a, b) } -> std::same_as<typename R::Element>;
  { r.divmod(a, b) } -> std::same_as<DivMod<typename R::Element>>;
  { r.divides(a, b) } -> std::same_as<bool>;
  { r.ext_gcd(a, b) } -> std::same_as<ExtGcd<typename R::Element>>;
  { r.norm_less(a, b) } -> std::same_as<bool>;
  { r.equal(a, b) } -> std::same_as<bool>;
  { r.to_string(a) } -> std::same_as<std::string>;
  { r.parse(s) } -> std::same_as<typename R::Element>;
  { r.name() } -> std::same_as<std::string>;
};

/// The integers, backed by GMP.
class Integers {
 public:
  using Element = mpz_class;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long n) const { return n; }
  Element from_integer(const mpz_class& n) const { return n; }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_unit(const Element& a) const { return mpz_cmpabs_ui(a.get_mpz_t(), 1) == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  // Canonical associate is the absolute value.
  Element normalize(const Element& a) const { return abs(a); }
  Element unit_part(const Element& a) const { return sgn(a) < 0 ? -1 : 1; }
  Element unit_inverse(const Element& u) const { return u; }

  Element div_exact(const Element& a, const Element& b) const {
    Element q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }

  // Floor division: the remainder has the sign of b, so for b > 0 it is in [0, b).
  DivMod<Element> divmod(const Element& a, const Element& b) const {
    DivMod<Element> r;
    mpz_fdiv_qr(r.quot.get_mpz_t(), r.rem.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }

  /// True iff a divides b.
  bool divides(const Element& a, const Element& b) const {
    if (sgn(a) == 0) return sgn(b) == 0;
    return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
  }

  ExtGcd<Element> ext_gcd(const Element& a, const Element& b) const {
    ExtGcd<Element> r;
    mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }

  bool norm_less(const Element& a, const Element& b) const { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }

  std::string to_string(const Element& a) const { return a.get_str(10); }
  Element parse(const std::string& s) const {
    Element v;
    if (s.empty() || v.set_str(s, 10) != 0) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
  }
  std::string name() const { return "Z"; }

  friend bool operator==(const Integers&, const Integers&) = default;
};

/// Residue modulo a prime. Carries its modulus so that the usual operators work.
struct Residue {
  std::uint64_t value = 0;
  std::uint64_t modulus = 0;

  friend Residue operator+(Residue a, Residue b) {
    std::uint64_t s = a.value + b.value;
    return {s >= a.modulus ? s - a.modulus : s, a.modulus};
  }
  friend Residue operator-(Residue a, Residue b) {
    return {a.value >= b.value ? a.value - b.value : a.value + a.modulus - b.value, a.modulus};
  }
  friend Residue operator*(Residue a, Residue b) { return {(a.value * b.value) % a.modulus, a.modulus}; }
  friend Residue operator-(Residue a) { return {a.value == 0 ? 0 : a.modulus - a.value, a.modulus}; }
  Residue& operator+=(Residue b) { return *this = *this + b; }
  Residue& operator-=(Residue b) { return *this = *this - b; }
  Residue& operator*=(Residue b) { return *this = *this * b; }
  friend bool operator==(Residue a, Residue b) { return a.value == b.value; }
};

/// GF(p) for a prime p < 2^31.
class PrimeField {
 public:
  using Element = Residue;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime(p) || p >= (std::uint64_t{1} << 31))
      throw std::invalid_argument("GF(p) needs a prime p < 2^31, got " + std::to_string(p));
  }

  std::uint64_t characteristic() const { return p_; }

  Element zero() const { return {0, p_}; }
  Element one() const { return {1, p_}; }
  Element from_int(long n) const {
    long r = n % static_cast<long>(p_);
    return {static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(p_) : r), p_};
  }
  Element from_integer(const mpz_class& n) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p_);
    return {r.get_ui(), p_};
  }

  bool is_zero(const Element& a) const { return a.value == 0; }
  bool is_unit(const Element& a) const { return a.value != 0; }
  bool equal(const Element& a, const Element& b) const { return a.value == b.value; }

  // Every nonzero element is associate to 1.
  Element normalize(const Element& a) const { return a.value == 0 ? zero() : one(); }
  Element unit_part(const Element& a) const { return a.value == 0 ? one() : inverse(a); }
  Element unit_inverse(const Element& u) const { return inverse(u); }

  Element inverse(const Element& a) const {
    if (a.value == 0) throw std::domain_error("division by zero in GF(p)");
    return pow(a, p_ - 2);
  }
  Element pow(Element base, std::uint64_t e) const {
    Element r = one();
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  Element div_exact(const Element& a, const Element& b) const { return a * inverse(b); }
  DivMod<Element> divmod(const Element& a, const Element& b) const { return {a * inverse(b), zero()}; }
  bool divides(const Element& a, const Element& b) const { return a.value != 0 || b.value == 0; }

  ExtGcd<Element> ext_gcd(const Element& a, const Element& b) const {
    if (a.value != 0) return {one(), inverse(a), zero()};
    if (b.value != 0) return {one(), zero(), inverse(b)};
    return {zero(), zero(), zero()};
  }

  bool norm_less(const Element& a, const Element& b) const { return a.value == 0 && b.value != 0; }

  std::string to_string(const Element& a) const { return std::to_string(a.value); }
  Element parse(const std::string& s) const { return from_integer(Integers{}.parse(s)); }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

static_assert(EuclideanRing<Integers>);
static_assert(EuclideanRing<PrimeField>);

}  // namespace intdecomp
