#include "memnet/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "memnet/errors.hpp"

namespace memnet {

Rational pi_upper() { return Rational(355, 113); }
Rational two_pi_upper() { return Rational(710, 113); }

Int floor_int(const Rational& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int ceil_int(const Rational& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int ceil_div(const Int& a, const Int& b) {
  if (b <= 0) throw InvalidArgumentError("ceil_div: divisor must be positive");
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int isqrt_ceil(const Rational& q) {
  if (q < 0) throw InvalidArgumentError("isqrt_ceil: negative argument");
  Int c = ceil_int(q);
  Int r;
  mpz_sqrt(r.get_mpz_t(), c.get_mpz_t());  // floor sqrt
  if (r * r < c) ++r;
  return r;
}

Rational pow2(long e) {
  Rational r;
  if (e >= 0) {
    mpz_ui_pow_ui(r.get_num_mpz_t(), 2, static_cast<unsigned long>(e));
  } else {
    mpz_ui_pow_ui(r.get_den_mpz_t(), 2, static_cast<unsigned long>(-e));
  }
  r.canonicalize();
  return r;
}

double log2_double(const Rational& q) {
  if (q <= 0) throw InvalidArgumentError("log2_double: non-positive argument");
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log2(mn) - std::log2(md) + static_cast<double>(en - ed);
}

Rational parse_ratio(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) {
    throw InvalidArgumentError("malformed rational: '" + s + "'");
  }
  if (r.get_den() == 0) {
    throw InvalidArgumentError("zero denominator: '" + s + "'");
  }
  r.canonicalize();
  return r;
}

Rational parse_decimal(const std::string& s) {
  // [+-]? digits [. digits]? ([eE] [+-]? digits)?
  std::size_t i = 0;
  const std::size_t n = s.size();
  bool neg = false;
  if (i < n && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  std::string digits;
  long frac_len = 0;
  bool any = false;
  while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < n && s[i] == '.') {
    ++i;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      ++frac_len;
      any = true;
    }
  }
  long exp10 = 0;
  if (any && i < n && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < n && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
    if (i >= n) throw InvalidArgumentError("malformed number: '" + s + "'");
    long e = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
      e = e * 10 + (s[i++] - '0');
      if (e > 1000000) throw InvalidArgumentError("exponent too large: '" + s + "'");
    }
    exp10 = eneg ? -e : e;
  }
  if (!any || i != n) throw InvalidArgumentError("malformed number: '" + s + "'");

  Int num(digits.empty() ? "0" : digits);
  Rational r(num);
  long e = exp10 - frac_len;
  Int p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
  if (e >= 0) {
    r *= Rational(p10);
  } else {
    r /= Rational(p10);
  }
  if (neg) r = -r;
  r.canonicalize();
  return r;
}

std::string to_ratio_string(const Rational& q) {
  return q.get_str(10);
}

Rational from_double(double d) {
  if (!std::isfinite(d)) throw InvalidArgumentError("from_double: non-finite value");
  Rational r;
  mpq_set_d(r.get_mpq_t(), d);
  r.canonicalize();
  return r;
}

std::int64_t to_i64(const Int& v) {
  if (!v.fits_slong_p()) {
    throw NumericOverflowError("integer out of int64 range: " + v.get_str());
  }
  return static_cast<std::int64_t>(v.get_si());
}

}  // namespace memnet
