#include "modblob/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "modblob/error.hpp"

namespace modblob {

Poly::Poly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly({c}); }
Poly Poly::x() { return Poly({Rational(0), Rational(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
  return c_[k];
}

Rational Poly::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational Poly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly::eval(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

int Poly::sign_at(const Rational& x) const { return sgn((*this)(x)); }

Poly Poly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
  return Poly(std::move(d));
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return (Rational(1) / leading()) * (*this);
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(out));
}

Poly operator*(const Rational& k, const Poly& a) {
  std::vector<Rational> out = a.c_;
  for (auto& c : out) c *= k;
  return Poly(std::move(out));
}

Poly Poly::operator-() const { return Rational(-1) * (*this); }

void Poly::divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder) {
  if (b.is_zero()) throw Error(ErrorCode::MalformedInput, "polynomial division by zero");
  std::vector<Rational> r = a.c_;
  const int db = b.degree();
  std::vector<Rational> q(std::max(0, a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    if (r[k] == 0) continue;
    Rational f = r[k] / b.leading();
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
  }
  quotient = Poly(std::move(q));
  remainder = Poly(std::move(r));
}

Poly Poly::exact_div(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  if (!r.is_zero()) throw Error(ErrorCode::PrecisionExhausted, "inexact polynomial division");
  return q;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (c_[k] == 0) continue;
    if (!first) os << (c_[k] > 0 ? " + " : " - ");
    else if (c_[k] < 0) os << "-";
    Rational a = abs(c_[k]);
    if (a != 1 || k == 0) os << format_rational(a);
    if (k > 0) os << var;
    if (k > 1) os << "^" << k;
    first = false;
  }
  return os.str();
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    Poly::divmod(a, b, q, r);
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

Poly square_free(const Poly& p) {
  if (p.degree() <= 0) return p;
  Poly g = gcd(p, p.derivative());
  return Poly::exact_div(p, g).monic();
}

std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    Poly q, r;
    Poly::divmod(seq[seq.size() - 2], seq.back(), q, r);
    if (r.is_zero()) break;
    // Positive rescaling keeps signs and tames coefficient growth.
    seq.push_back(-(Rational(1) / abs(r.leading())) * r);
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

int sign_variations(const std::vector<Poly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    const int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rational root_bound(const Poly& p) {
  Rational m(0);
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coefficient(k) / p.leading())));
  return m + 1;
}

namespace {

struct Isolator {
  Poly q;
  std::vector<Poly> seq;

  explicit Isolator(const Poly& p) : q(square_free(p)), seq(sturm_sequence(q)) {}

  // Roots in the open interval (a, b).
  int count(const Rational& a, const Rational& b) const {
    return sign_variations(seq, a) - sign_variations(seq, b) - (q.sign_at(b) == 0 ? 1 : 0);
  }

  void isolate(const Rational& a, const Rational& b, int n, std::vector<RootInterval>& out) const {
    if (n == 0) return;
    if (n == 1 && q.sign_at(a) != 0 && q.sign_at(b) != 0) {
      out.push_back({a, b});
      return;
    }
    const Rational m = (a + b) / 2;
    const int left = count(a, m);
    isolate(a, m, left, out);
    int mid = 0;
    if (q.sign_at(m) == 0) {
      out.push_back({m, m});
      mid = 1;
    }
    isolate(m, b, n - left - mid, out);
  }
};

}  // namespace

int count_real_roots(const Poly& p, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (p.is_zero()) throw Error(ErrorCode::MalformedInput, "root count of the zero polynomial");
  if (p.degree() == 0) return 0;
  Isolator iso(p);
  const Rational b = root_bound(iso.q);
  const Rational a_ = lo ? *lo : -b;
  const Rational b_ = hi ? *hi : b;
  if (a_ >= b_) return 0;
  return iso.count(a_, b_);
}

std::vector<RootInterval> isolate_real_roots(const Poly& p, const std::optional<Rational>& lo,
                                             const std::optional<Rational>& hi) {
  if (p.is_zero()) throw Error(ErrorCode::MalformedInput, "roots of the zero polynomial");
  std::vector<RootInterval> out;
  if (p.degree() == 0) return out;
  Isolator iso(p);
  const Rational b = root_bound(iso.q);
  const Rational a_ = lo ? *lo : -b;
  const Rational b_ = hi ? *hi : b;
  if (a_ >= b_) return out;
  iso.isolate(a_, b_, iso.count(a_, b_), out);
  return out;
}

void refine_root(const Poly& p, RootInterval& root, const Rational& width) {
  if (root.exact()) return;
  int s_lo = p.sign_at(root.lo);
  while (root.hi - root.lo > width) {
    const Rational m = root.mid();
    const int s = p.sign_at(m);
    if (s == 0) {
      root.lo = root.hi = m;
      return;
    }
    if (s == s_lo) {
      root.lo = m;
    } else {
      root.hi = m;
    }
  }
}

// ---------------------------------------------------------------------------

BiPoly::BiPoly(std::vector<Poly> coefficients) : c_(std::move(coefficients)) {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly BiPoly::at(const Rational& theta) const {
  std::vector<Rational> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(c(theta));
  return Poly(std::move(out));
}

double BiPoly::eval(double u, double theta) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * u + it->eval(theta);
  return acc;
}

BiPoly BiPoly::derivative_u() const {
  std::vector<Poly> out;
  for (std::size_t k = 1; k < c_.size(); ++k) out.push_back(Rational(static_cast<long>(k)) * c_[k]);
  return BiPoly(std::move(out));
}

BiPoly BiPoly::compose_theta(const Poly& inner) const {
  std::vector<Poly> out;
  for (const auto& c : c_) out.push_back(c.compose(inner));
  return BiPoly(std::move(out));
}

Poly resultant_u(const BiPoly& p, const BiPoly& q) {
  const int m = p.degree_u(), n = q.degree_u();
  if (m < 0 || n < 0) return Poly();
  if (m == 0 && n == 0) return Poly::constant(1);
  const int N = m + n;
  std::vector<std::vector<Poly>> M(N, std::vector<Poly>(N));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[r][r + k] = p.coefficient(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) M[n + r][r + k] = q.coefficient(n - k);

  Poly prev = Poly::constant(1);
  int sign = 1;
  for (int k = 0; k + 1 < N; ++k) {
    if (M[k][k].is_zero()) {
      int r = k + 1;
      while (r < N && M[r][k].is_zero()) ++r;
      if (r == N) return Poly();
      std::swap(M[k], M[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) M[i][j] = Poly::exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
      M[i][k] = Poly();
    }
    prev = M[k][k];
  }
  return sign > 0 ? M[N - 1][N - 1] : -M[N - 1][N - 1];
}

Poly discriminant_u(const BiPoly& p) { return resultant_u(p, p.derivative_u()); }

}  // namespace modblob
