#include "salv/laurent.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

namespace salv {

LaurentPoly::LaurentPoly(const Rat& c) {
  if (sgn(c) != 0) terms_.emplace_back(0, c);
}

LaurentPoly::LaurentPoly(long c) : LaurentPoly(Rat(c)) {}

LaurentPoly LaurentPoly::monomial(const Rat& c, long e) {
  LaurentPoly p;
  if (sgn(c) != 0) p.terms_.emplace_back(e, c);
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> t) {
  LaurentPoly p;
  p.terms_ = std::move(t);
  return p;
}

long LaurentPoly::min_exp() const { return terms_.front().first; }
long LaurentPoly::max_exp() const { return terms_.back().first; }
long LaurentPoly::width() const { return max_exp() - min_exp(); }

Rat LaurentPoly::coeff(long e) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), e,
      [](const Term& t, long x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) return it->second;
  return Rat(0);
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p;
  p.terms_.reserve(terms_.size());
  for (const auto& [e, c] : terms_) p.terms_.emplace_back(e, -c);
  return p;
}

static void merge_terms(const std::vector<LaurentPoly::Term>& a,
                        const std::vector<LaurentPoly::Term>& b, int bsign,
                        std::vector<LaurentPoly::Term>& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, bsign > 0 ? b[j].second : -b[j].second);
      ++j;
    } else {
      Rat c = bsign > 0 ? Rat(a[i].second + b[j].second)
                        : Rat(a[i].second - b[j].second);
      if (sgn(c) != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly p;
  merge_terms(terms_, o.terms_, +1, p.terms_);
  return p;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly p;
  merge_terms(terms_, o.terms_, -1, p.terms_);
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  *this = *this + o;
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  *this = *this - o;
  return *this;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return LaurentPoly();
  if (o.is_monomial()) {
    LaurentPoly p;
    p.terms_.reserve(terms_.size());
    const auto& [be, bc] = o.terms_.front();
    for (const auto& [e, c] : terms_) p.terms_.emplace_back(e + be, c * bc);
    return p;
  }
  std::map<long, Rat> acc;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) acc[ea + eb] += ca * cb;
  LaurentPoly p;
  p.terms_.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (sgn(c) != 0) p.terms_.emplace_back(e, std::move(c));
  return p;
}

LaurentPoly LaurentPoly::scaled(const Rat& c) const {
  if (sgn(c) == 0) return LaurentPoly();
  LaurentPoly p;
  p.terms_.reserve(terms_.size());
  for (const auto& [e, a] : terms_) p.terms_.emplace_back(e, a * c);
  return p;
}

LaurentPoly LaurentPoly::shifted(long k) const {
  LaurentPoly p;
  p.terms_.reserve(terms_.size());
  for (const auto& [e, a] : terms_) p.terms_.emplace_back(e + k, a);
  return p;
}

LaurentPoly LaurentPoly::unit_normalized() const {
  if (is_zero()) return LaurentPoly();
  LaurentPoly p = shifted(-min_exp());
  return p.scaled(Rat(1) / p.terms_.back().second);
}

void divmod(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& q,
            LaurentPoly& r) {
  if (b.is_zero()) throw DivisionByZeroError("divmod by zero polynomial");
  if (a.is_zero()) {
    q = LaurentPoly();
    r = LaurentPoly();
    return;
  }
  // Shift both operands to plain polynomials; the quotient absorbs the
  // shift difference, the remainder keeps a's shift.
  const long alpha = a.min_exp(), beta = b.min_exp();
  LaurentPoly rr = a.shifted(-alpha);
  const LaurentPoly bb = b.shifted(-beta);
  const long db = bb.max_exp();
  const Rat& lead_b = bb.terms().back().second;
  std::vector<LaurentPoly::Term> qterms;
  while (!rr.is_zero() && rr.max_exp() >= db) {
    long e = rr.max_exp() - db;
    Rat c = rr.terms().back().second / lead_b;
    qterms.emplace_back(e, c);
    rr -= bb.shifted(e).scaled(c);
  }
  std::reverse(qterms.begin(), qterms.end());
  q = LaurentPoly::from_terms(std::move(qterms)).shifted(alpha - beta);
  r = rr.shifted(alpha);
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a,
                                        const LaurentPoly& b) {
  LaurentPoly q, r;
  divmod(a, b, q, r);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

LaurentPoly gcd_poly(LaurentPoly a, LaurentPoly b) {
  a = a.unit_normalized();
  b = b.unit_normalized();
  while (!b.is_zero()) {
    LaurentPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = r.unit_normalized();
  }
  return a;
}

LaurentPoly pow_poly(const LaurentPoly& p, unsigned k) {
  LaurentPoly acc{Rat(1)};
  for (unsigned i = 0; i < k; ++i) acc = acc * p;
  return acc;
}

Rat eval_poly(const LaurentPoly& p, const Rat& t0) {
  if (p.is_zero()) return Rat(0);
  if (sgn(t0) == 0 && p.min_exp() < 0)
    throw DivisionByZeroError("evaluating negative exponent at t=0");
  Rat acc(0);
  for (const auto& [e, c] : p.terms()) {
    Rat pw(1);
    long k = std::labs(e);
    for (long i = 0; i < k; ++i) pw *= t0;
    if (e < 0) pw = Rat(1) / pw;
    acc += c * pw;
  }
  return acc;
}

std::string poly_to_text(const LaurentPoly& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << ',';
    first = false;
    os << e << ':' << c.get_num().get_str() << '/' << c.get_den().get_str();
  }
  return os.str();
}

LaurentPoly poly_from_text(const std::string& s) {
  if (s.empty()) return LaurentPoly();
  std::vector<LaurentPoly::Term> terms;
  std::size_t pos = 0;
  long prev_exp = 0;
  bool have_prev = false;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t colon = tok.find(':');
    std::size_t slash = tok.find('/');
    if (colon == std::string::npos || slash == std::string::npos ||
        slash < colon)
      throw ParseError("bad polynomial term '" + tok + "'");
    errno = 0;
    char* end = nullptr;
    std::string exps = tok.substr(0, colon);
    long e = std::strtol(exps.c_str(), &end, 10);
    if (errno != 0 || end == exps.c_str() || *end != '\0')
      throw ParseError("bad exponent in term '" + tok + "'");
    std::string nums = tok.substr(colon + 1, slash - colon - 1);
    std::string dens = tok.substr(slash + 1);
    if (nums.empty() || dens.empty())
      throw ParseError("bad coefficient in term '" + tok + "'");
    mpz_class num, den;
    if (num.set_str(nums, 10) != 0 || den.set_str(dens, 10) != 0)
      throw ParseError("bad coefficient in term '" + tok + "'");
    if (sgn(den) == 0) throw ParseError("zero denominator in term '" + tok + "'");
    if (have_prev && e <= prev_exp)
      throw ParseError("exponents not strictly increasing at term '" + tok +
                       "'");
    prev_exp = e;
    have_prev = true;
    Rat c(num, den);
    c.canonicalize();
    if (sgn(c) == 0) throw ParseError("zero coefficient in term '" + tok + "'");
    terms.emplace_back(e, c);
    if (comma == std::string::npos) break;
    pos = comma + 1;
    if (pos == s.size()) throw ParseError("trailing comma in polynomial");
  }
  return LaurentPoly::from_terms(std::move(terms));
}

int totient(int d) {
  int result = d, n = d;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<int> divisors_of(long n) {
  std::vector<int> ds;
  for (long i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      ds.push_back(static_cast<int>(i));
      if (i != n / i) ds.push_back(static_cast<int>(n / i));
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

const LaurentPoly& cyclotomic(int d) {
  static std::map<int, LaurentPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  LaurentPoly p;
  if (d == 1) {
    p = LaurentPoly::monomial(Rat(1), 1) - LaurentPoly(Rat(1));
  } else {
    p = LaurentPoly::monomial(Rat(1), d) - LaurentPoly(Rat(1));
    for (int e : divisors_of(d)) {
      if (e == d) continue;
      // Recursion is safe: cache fills bottom-up through the lock-held map.
      auto sub = cache.find(e);
      LaurentPoly phie;
      if (sub != cache.end()) {
        phie = sub->second;
      } else {
        // Compute missing proper divisors inline (still under the lock).
        std::vector<int> stack{e};
        while (!stack.empty()) {
          int m = stack.back();
          if (cache.count(m)) {
            stack.pop_back();
            continue;
          }
          bool ready = true;
          for (int f : divisors_of(m))
            if (f != m && !cache.count(f)) {
              stack.push_back(f);
              ready = false;
            }
          if (!ready) continue;
          stack.pop_back();
          LaurentPoly pm;
          if (m == 1) {
            pm = LaurentPoly::monomial(Rat(1), 1) - LaurentPoly(Rat(1));
          } else {
            pm = LaurentPoly::monomial(Rat(1), m) - LaurentPoly(Rat(1));
            for (int f : divisors_of(m)) {
              if (f == m) continue;
              auto qq = divide_exact(pm, cache.at(f));
              pm = std::move(*qq);
            }
          }
          cache.emplace(m, std::move(pm));
        }
        phie = cache.at(e);
      }
      auto qq = divide_exact(p, phie);
      p = std::move(*qq);
    }
  }
  return cache.emplace(d, std::move(p)).first->second;
}

UnityFactorization factor_unity(const LaurentPoly& p) {
  if (p.is_zero())
    throw DivisionByZeroError("factor_unity of the zero polynomial");
  UnityFactorization f;
  f.unit_exp = p.min_exp();
  LaurentPoly q = p.shifted(-f.unit_exp);
  long deg = q.max_exp();
  // totient(d) >= sqrt(d/2), so candidates are exhausted well below 2*deg^2+8.
  const long dmax = 2 * deg * deg + 8;
  for (int d = 1; d <= dmax && q.max_exp() > 0; ++d) {
    if (totient(d) > q.max_exp()) continue;
    int mult = 0;
    while (true) {
      auto quo = divide_exact(q, cyclotomic(d));
      if (!quo) break;
      q = std::move(*quo);
      ++mult;
    }
    if (mult > 0) f.factors.emplace_back(d, mult);
  }
  if (q.max_exp() > 0)
    throw NonCyclotomicFactorError("non-cyclotomic factor remains: " +
                                   poly_to_text(q));
  f.unit_coeff = q.coeff(0);
  return f;
}

// ---------------------------------------------------------------------------
// CycField

CycField::CycField(int d) : d_(d) {
  const LaurentPoly& phi = cyclotomic(d);
  deg_ = static_cast<int>(phi.max_exp());
  phi_.assign(deg_ + 1, Rat(0));
  for (const auto& [e, c] : phi.terms()) phi_[e] = c;
  // t^deg ≡ -(phi - t^deg); extend row by row up to t^(2deg-2).
  red_rows_.clear();
  if (deg_ > 0) {
    std::vector<Rat> row(deg_, Rat(0));
    for (int i = 0; i < deg_; ++i) row[i] = -phi_[i];
    red_rows_.push_back(row);
    for (int k = deg_ + 1; k <= 2 * deg_ - 2; ++k) {
      std::vector<Rat> next(deg_, Rat(0));
      // next = t * prev  (then reduce the overflow coefficient)
      const std::vector<Rat>& prev = red_rows_.back();
      for (int i = 0; i + 1 < deg_; ++i) next[i + 1] = prev[i];
      const Rat& hi = prev[deg_ - 1];
      if (sgn(hi) != 0)
        for (int i = 0; i < deg_; ++i) next[i] += hi * red_rows_[0][i];
      red_rows_.push_back(std::move(next));
    }
  }
  tau_pow_.resize(d_);
  Value cur = one();
  for (int k = 0; k < d_; ++k) {
    tau_pow_[k] = cur;
    // cur *= t, reducing the single overflow coefficient
    std::vector<Rat> shifted(deg_ + 1, Rat(0));
    for (int i = 0; i < deg_; ++i) shifted[i + 1] = cur[i];
    Value nxt(deg_, Rat(0));
    for (int i = 0; i < deg_; ++i) nxt[i] = shifted[i];
    if (deg_ >= 1 && sgn(shifted[deg_]) != 0)
      for (int i = 0; i < deg_; ++i) nxt[i] += shifted[deg_] * red_rows_[0][i];
    cur = std::move(nxt);
  }
}

CycField::Value CycField::one() const {
  Value v(deg_, Rat(0));
  v[0] = 1;
  return v;
}

bool CycField::is_zero(const Value& v) const {
  for (const Rat& c : v)
    if (sgn(c) != 0) return false;
  return true;
}

void CycField::add_assign(Value& a, const Value& b) const {
  for (int i = 0; i < deg_; ++i) a[i] += b[i];
}

void CycField::sub_assign(Value& a, const Value& b) const {
  for (int i = 0; i < deg_; ++i) a[i] -= b[i];
}

void CycField::reduce(std::vector<Rat>& c) const {
  for (int k = static_cast<int>(c.size()) - 1; k >= deg_; --k) {
    if (sgn(c[k]) == 0) continue;
    const std::vector<Rat>& row = red_rows_[k - deg_];
    for (int i = 0; i < deg_; ++i) c[i] += c[k] * row[i];
    c[k] = 0;
  }
  c.resize(deg_);
}

CycField::Value CycField::mul(const Value& a, const Value& b) const {
  std::vector<Rat> c(2 * deg_ - 1, Rat(0));
  for (int i = 0; i < deg_; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < deg_; ++j) {
      if (sgn(b[j]) == 0) continue;
      c[i + j] += a[i] * b[j];
    }
  }
  reduce(c);
  return c;
}

void CycField::submul(Value& a, const Value& f, const Value& b) const {
  Value p = mul(f, b);
  for (int i = 0; i < deg_; ++i) a[i] -= p[i];
}

CycField::Value CycField::neg(const Value& a) const {
  Value v(deg_);
  for (int i = 0; i < deg_; ++i) v[i] = -a[i];
  return v;
}

// Extended Euclid over Q[t] on dense coefficient vectors.
namespace {
using Dense = std::vector<Rat>;

int dense_deg(const Dense& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (sgn(p[i]) != 0) return i;
  return -1;
}

void dense_trim(Dense& p) { p.resize(std::max(dense_deg(p) + 1, 1)); }

Dense dense_sub_scaled(const Dense& a, const Dense& b, const Rat& c, int shift) {
  Dense r = a;
  if (static_cast<int>(r.size()) < static_cast<int>(b.size()) + shift)
    r.resize(b.size() + shift, Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= c * b[i];
  dense_trim(r);
  return r;
}

// a = q*b + r
void dense_divmod(const Dense& a, const Dense& b, Dense& q, Dense& r) {
  int db = dense_deg(b);
  r = a;
  dense_trim(r);
  q.assign(1, Rat(0));
  int dr = dense_deg(r);
  if (dr >= db) q.assign(dr - db + 1, Rat(0));
  while ((dr = dense_deg(r)) >= db && db >= 0) {
    Rat c = r[dr] / b[db];
    q[dr - db] = c;
    r = dense_sub_scaled(r, b, c, dr - db);
  }
}
}  // namespace

CycField::Value CycField::inv(const Value& a) const {
  if (is_zero(a)) throw DivisionByZeroError("inverse of zero in F_d");
  // Extended Euclid: u*a + v*phi = gcd (a constant, since phi irreducible).
  Dense r0 = phi_;
  Dense r1(a.begin(), a.end());
  dense_trim(r1);
  Dense s0{Rat(0)}, s1{Rat(1)};  // coefficients of `a`
  while (dense_deg(r1) > 0) {
    Dense q, r;
    dense_divmod(r0, r1, q, r);
    // s = s0 - q*s1
    Dense s = s0;
    for (int i = 0; i <= dense_deg(q); ++i) {
      if (sgn(q[i]) == 0) continue;
      s = dense_sub_scaled(s, s1, q[i], i);
    }
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (dense_deg(r1) < 0)
    throw DivisionByZeroError("non-invertible element in F_d");
  const Rat c = r1[0];
  Value v(deg_, Rat(0));
  for (int i = 0; i <= dense_deg(s1) && i < deg_; ++i) v[i] = s1[i] / c;
  return v;
}

CycField::Value CycField::div(const Value& a, const Value& b) const {
  return mul(a, inv(b));
}

CycField::Value CycField::from_monomial(int sign, long exp) const {
  long e = exp % d_;
  if (e < 0) e += d_;
  Value v = tau_pow_[e];
  if (sign < 0)
    for (Rat& c : v) c = -c;
  return v;
}

CycField::Value CycField::from_poly(const LaurentPoly& p) const {
  Value acc = zero();
  for (const auto& [e, c] : p.terms()) {
    Value m = from_monomial(1, e);
    for (int i = 0; i < deg_; ++i) acc[i] += c * m[i];
  }
  return acc;
}

LaurentPoly CycField::to_poly(const Value& v) const {
  std::vector<LaurentPoly::Term> terms;
  for (int i = 0; i < deg_; ++i)
    if (sgn(v[i]) != 0) terms.emplace_back(i, v[i]);
  return LaurentPoly::from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// PrimeField

PrimeField::PrimeField(std::uint64_t q, std::uint64_t r, int order_d)
    : q_(q), r_(r % q) {
  if (q < 2 || !is_prime_u64(q)) throw BadPrimeError("modulus is not prime");
  if (q >= (1ull << 31)) throw BadPrimeError("modulus too large");
  if (order_d > 0) {
    if ((q - 1) % static_cast<std::uint64_t>(order_d) != 0)
      throw OrderMismatchError("d does not divide q-1");
    if (powmod_u64(r_, order_d, q_) != 1 % q_)
      throw OrderMismatchError("root does not satisfy r^d = 1");
    for (int e : divisors_of(order_d)) {
      if (e == order_d) continue;
      if (powmod_u64(r_, e, q_) == 1)
        throw OrderMismatchError("root has order smaller than d");
    }
  }
}

PrimeField::Value PrimeField::inv(Value a) const {
  if (a == 0) throw DivisionByZeroError("inverse of zero mod q");
  return powmod_u64(a, q_ - 2, q_);
}

PrimeField::Value PrimeField::from_monomial(int sign, long exp) const {
  std::uint64_t e = static_cast<std::uint64_t>(
      ((exp % static_cast<long>(q_ - 1)) + static_cast<long>(q_ - 1)) %
      static_cast<long>(q_ - 1));
  Value v = powmod_u64(r_, e, q_);
  return sign < 0 ? neg(v) : v;
}

PrimeField::Value PrimeField::from_rat(const Rat& x) const {
  mpz_class num = x.get_num(), den = x.get_den();
  mpz_class qz(static_cast<unsigned long>(q_));
  mpz_class nm = num % qz, dm = den % qz;
  if (nm < 0) nm += qz;
  if (dm < 0) dm += qz;
  std::uint64_t n = nm.get_ui(), d = dm.get_ui();
  if (d == 0) throw BadPrimeError("denominator vanishes mod q");
  return mul(n, inv(d));
}

PrimeField::Value PrimeField::from_poly(const LaurentPoly& p) const {
  Value acc = 0;
  for (const auto& [e, c] : p.terms()) {
    Value t = mul(from_rat(c), from_monomial(1, e));
    add_assign(acc, t);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// RationalField

RationalField::RationalField(Rat t0) : t0_(std::move(t0)) {
  if (sgn(t0_) == 0)
    throw DivisionByZeroError("rational specialization point must be nonzero");
  pow_pos_.push_back(Rat(1));
  pow_neg_.push_back(Rat(1));
}

RationalField::Value RationalField::inv(const Value& a) const {
  if (sgn(a) == 0) throw DivisionByZeroError("inverse of zero rational");
  return Rat(1) / a;
}

RationalField::Value RationalField::div(const Value& a, const Value& b) const {
  if (sgn(b) == 0) throw DivisionByZeroError("rational division by zero");
  return a / b;
}

RationalField::Value RationalField::from_monomial(int sign, long exp) const {
  std::vector<Rat>& cache = exp >= 0 ? pow_pos_ : pow_neg_;
  std::size_t k = static_cast<std::size_t>(exp >= 0 ? exp : -exp);
  while (cache.size() <= k) {
    if (exp >= 0)
      cache.push_back(cache.back() * t0_);
    else
      cache.push_back(cache.back() / t0_);
  }
  return sign < 0 ? Rat(-cache[k]) : cache[k];
}

// ---------------------------------------------------------------------------
// prime helpers

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (std::uint64_t i = 17; i * i <= n; i += 2)
    if (n % i == 0) return false;
  return true;
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t q) {
  std::uint64_t acc = 1 % q;
  b %= q;
  while (e > 0) {
    if (e & 1) acc = acc * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return acc;
}

std::uint64_t prime_with_unity_root(int d, std::uint64_t start) {
  std::uint64_t q = start;
  std::uint64_t step = d > 0 ? static_cast<std::uint64_t>(d) : 1;
  // align q to 1 mod d
  if (d > 1) q += (1 + step - (q % step)) % step;
  while (!(is_prime_u64(q) && (d <= 1 || (q - 1) % step == 0))) q += (d > 1 ? step : 1);
  return q;
}

std::uint64_t element_of_order(std::uint64_t q, int d) {
  if (d <= 1) return 1;
  if ((q - 1) % static_cast<std::uint64_t>(d) != 0)
    throw OrderMismatchError("d does not divide q-1");
  for (std::uint64_t g = 2; g < q; ++g) {
    std::uint64_t r = powmod_u64(g, (q - 1) / d, q);
    if (r == 1) continue;
    bool ok = true;
    for (int e : divisors_of(d)) {
      if (e == d) continue;
      if (powmod_u64(r, e, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return r;
  }
  throw OrderMismatchError("no element of requested order");
}

std::uint64_t element_avoiding_orders(std::uint64_t q, long bound) {
  // Want ord(r) > bound, i.e. r^k != 1 for all 1 <= k <= bound.
  for (std::uint64_t r = 2; r < q; ++r) {
    std::uint64_t ord = 1, acc = r % q;
    while (acc != 1 && ord <= static_cast<std::uint64_t>(bound)) {
      acc = acc * (r % q) % q;
      ++ord;
    }
    if (acc != 1 || ord > static_cast<std::uint64_t>(bound)) return r;
  }
  throw BadPrimeError("no suitable evaluation point mod q");
}

}  // namespace salv
