#include "sbp/rational.hpp"

#include <ostream>
#include <sstream>

namespace sbp {

Rational::Rational(long n, long d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
  std::string num, den = "1";
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    num = std::string(s);
  } else {
    num = std::string(s.substr(0, slash));
    den = std::string(s.substr(slash + 1));
  }
  auto check = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); i++)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!check(num) || !check(den))
    throw std::invalid_argument("Rational::parse: malformed '" + std::string(s) + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("Rational::parse: zero denominator");
  Rational r;
  r.v_ = mpq_class(n, d);
  r.v_.canonicalize();
  return r;
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  mpz_class n = v_.get_num(), d = v_.get_den();
  bool neg = n < 0;
  if (neg) n = -n;
  mpz_class ip = n / d, rem = n % d;
  std::ostringstream os;
  if (neg && (ip != 0 || rem != 0)) os << '-';
  os << ip.get_str();
  if (digits > 0) {
    os << '.';
    for (int i = 0; i < digits; i++) {
      rem *= 10;
      os << (rem / d).get_str();
      rem %= d;
    }
  }
  return os.str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class rfloor(const Rational& r) { return floor_div(r.num(), r.den()); }

bool divides(const Rational& b, const Rational& a) {
  Rational q = a / b;
  return q.den() == 1;
}

}  // namespace sbp
