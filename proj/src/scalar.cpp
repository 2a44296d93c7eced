#include "rhi/scalar.hpp"

#include <cctype>
#include <limits>
#include <ostream>

namespace rhi {

namespace {

using i128 = __int128;

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 x) {
  return x >= std::numeric_limits<std::int64_t>::min() + 1 && x <= std::numeric_limits<std::int64_t>::max();
}

mpz_class to_mpz(std::int64_t x) { return mpz_class(static_cast<long>(x)); }

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string strip_plus(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational

void Rational::assign_small(i128 n, i128 d) {
  if (d == 0) throw ScalarError("division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  if (d != 1) {
    i128 g = gcd128(n, d);
    if (g != 1) {
      n /= g;
      d /= g;
    }
  }
  if (fits64(n) && fits64(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    big_.reset();
    return;
  }
  // 128-bit values that do not fit: go through GMP via decimal-free limb split.
  auto to_z = [](i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  };
  assign(mpq_class(to_z(n), to_z(d)));
}

void Rational::assign(const mpq_class& q_in) {
  mpq_class q = q_in;
  q.canonicalize();
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() &&
      q.get_num() != std::numeric_limits<long>::min()) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const mpq_class>(std::move(q));
  }
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(to_mpz(num_), to_mpz(den_));
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw ScalarError("malformed rational literal '" + std::string(text) + "'");
  mpz_class n(strip_plus(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ScalarError("zero denominator in literal '" + std::string(text) + "'");
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.assign_small(-static_cast<i128>(num_), den_);  // -INT64_MIN needs the wide path
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(a.to_mpq() + b.to_mpq());
  Rational r;
  if (a.den_ == 1 && b.den_ == 1) {
    std::int64_t s;
    if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
      r.num_ = s;
      return r;
    }
  }
  r.assign_small(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                 static_cast<i128>(a.den_) * b.den_);
  return r;
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(a.to_mpq() * b.to_mpq());
  Rational r;
  if (a.num_ == 0 || b.num_ == 0) return r;
  if (a.den_ == 1 && b.den_ == 1) {
    std::int64_t p;
    if (!__builtin_mul_overflow(a.num_, b.num_, &p) && p != std::numeric_limits<std::int64_t>::min()) {
      r.num_ = p;
      return r;
    }
  }
  r.assign_small(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
  return r;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw ScalarError("division by zero");
  if (a.big_ || b.big_) return Rational(a.to_mpq() / b.to_mpq());
  Rational r;
  r.assign_small(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
  return r;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a big value never equals a small one
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

// ---------------------------------------------------------------------------
// Zp

Zp::Zp(long long n, std::uint64_t p) : p_(p) {
  if (p == 0) {
    raw_ = n;
    return;
  }
  long long m = n % static_cast<long long>(p);
  if (m < 0) m += static_cast<long long>(p);
  raw_ = m;
}

std::uint64_t Zp::reduced(std::uint64_t p) const {
  if (p_ != 0) return static_cast<std::uint64_t>(raw_);
  if (p == 0) {
    if (raw_ < 0) throw ScalarError("unbound negative residue");
    return static_cast<std::uint64_t>(raw_);
  }
  long long m = raw_ % static_cast<long long>(p);
  if (m < 0) m += static_cast<long long>(p);
  return static_cast<std::uint64_t>(m);
}

std::uint64_t Zp::value() const { return reduced(p_); }

std::uint64_t Zp::common_modulus(const Zp& a, const Zp& b) {
  if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
    throw ScalarError("mixing residues modulo " + std::to_string(a.p_) + " and " + std::to_string(b.p_));
  return a.p_ != 0 ? a.p_ : b.p_;
}

std::string Zp::str() const { return p_ == 0 ? std::to_string(raw_) : std::to_string(value()); }

Zp Zp::inverse() const {
  if (p_ == 0) {
    if (raw_ == 1 || raw_ == -1) return *this;
    throw ScalarError("inverse of unbound residue");
  }
  std::uint64_t v = value();
  if (v == 0) throw ScalarError("division by zero");
  // Fermat: v^(p-2)
  unsigned __int128 base = v, acc = 1;
  std::uint64_t e = p_ - 2;
  while (e) {
    if (e & 1) acc = acc * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return Zp(static_cast<long long>(acc), p_);
}

Zp Zp::operator-() const {
  if (p_ == 0) return Zp(-raw_);
  return Zp(raw_ == 0 ? 0 : static_cast<long long>(p_) - raw_, p_);
}

Zp operator+(const Zp& a, const Zp& b) {
  std::uint64_t p = Zp::common_modulus(a, b);
  if (p == 0) return Zp(a.raw_ + b.raw_);
  std::uint64_t s = a.reduced(p) + b.reduced(p);
  if (s >= p) s -= p;
  Zp r;
  r.raw_ = static_cast<long long>(s);
  r.p_ = p;
  return r;
}

Zp operator-(const Zp& a, const Zp& b) { return a + (-b); }

Zp operator*(const Zp& a, const Zp& b) {
  std::uint64_t p = Zp::common_modulus(a, b);
  if (p == 0) return Zp(a.raw_ * b.raw_);
  Zp r;
  r.raw_ = static_cast<long long>(static_cast<unsigned __int128>(a.reduced(p)) * b.reduced(p) % p);
  r.p_ = p;
  return r;
}

Zp operator/(const Zp& a, const Zp& b) {
  std::uint64_t p = Zp::common_modulus(a, b);
  if (p == 0) return a * b.inverse();
  return a * Zp(static_cast<long long>(b.reduced(p)), p).inverse();
}

bool operator==(const Zp& a, const Zp& b) {
  std::uint64_t p = Zp::common_modulus(a, b);
  if (p == 0) return a.raw_ == b.raw_;
  return a.reduced(p) == b.reduced(p);
}

std::ostream& operator<<(std::ostream& os, const Zp& x) { return os << x.str(); }

Zp ScalarOps<Zp>::parse(const FieldSpec& f, std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw ScalarError("malformed literal '" + std::string(text) + "'");
  const std::uint64_t p = f.characteristic;
  mpz_class n(strip_plus(num), 10), d(std::string(den), 10);
  mpz_class pn = n % static_cast<unsigned long>(p);
  if (pn < 0) pn += static_cast<unsigned long>(p);
  mpz_class pd = d % static_cast<unsigned long>(p);
  if (pd == 0) throw ScalarError("denominator of '" + std::string(text) + "' vanishes mod " + std::to_string(p));
  return Zp(static_cast<long long>(pn.get_ui()), p) / Zp(static_cast<long long>(pd.get_ui()), p);
}

// ---------------------------------------------------------------------------
// FieldSpec

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!is_prime(p)) throw ScalarError("characteristic " + std::to_string(p) + " is not prime");
  if (p >= (1ULL << 31)) throw ScalarError("characteristic must be below 2^31");
  return {Kind::prime, p};
}

std::string FieldSpec::name() const {
  return kind == Kind::rationals ? "Q" : "F" + std::to_string(characteristic);
}

}  // namespace rhi
