#include "phasespace/poly.hpp"

#include <cmath>
#include <sstream>

#include "phasespace/error.hpp"

namespace phasespace {

std::complex<double> CRational::to_complex() const {
  return {static_cast<double>(re), static_cast<double>(im)};
}

PolySymbol PolySymbol::constant(const CRational& c) { return monomial(0, 0, c); }

PolySymbol PolySymbol::monomial(int i, int j, const CRational& c) {
  PolySymbol out;
  out.add(i, j, c);
  return out;
}

void PolySymbol::add(int i, int j, const CRational& c) {
  require(i >= 0 && j >= 0, "PolySymbol: negative exponent");
  if (c.is_zero()) return;
  require(i + j <= kMaxDegree, "PolySymbol: degree overflow (bound " + std::to_string(kMaxDegree) + ")");
  auto [it, fresh] = terms_.try_emplace({i, j}, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CRational PolySymbol::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? CRational{} : it->second;
}

int PolySymbol::degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
  return d;
}

PolySymbol PolySymbol::derivative(int nq, int np) const {
  PolySymbol out;
  for (const auto& [k, c] : terms_) {
    auto [i, j] = k;
    if (i < nq || j < np) continue;
    Rational f = 1;
    for (int t = 0; t < nq; ++t) f *= i - t;
    for (int t = 0; t < np; ++t) f *= j - t;
    out.add(i - nq, j - np, c * CRational(f));
  }
  return out;
}

std::complex<double> PolySymbol::evaluate(double q, double p) const {
  std::complex<double> sum{};
  for (const auto& [k, c] : terms_) sum += c.to_complex() * std::pow(q, k.first) * std::pow(p, k.second);
  return sum;
}

std::string PolySymbol::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) o << " + ";
    first = false;
    o << "(" << c.re << (c.im < 0 ? "-" : "+") << abs(c.im) << "i)";
    if (k.first) o << " q^" << k.first;
    if (k.second) o << " p^" << k.second;
  }
  return o.str();
}

PolySymbol operator+(const PolySymbol& a, const PolySymbol& b) {
  PolySymbol out = a;
  for (const auto& [k, c] : b.terms_) out.add(k.first, k.second, c);
  return out;
}

PolySymbol operator-(const PolySymbol& a, const PolySymbol& b) {
  PolySymbol out = a;
  for (const auto& [k, c] : b.terms_) out.add(k.first, k.second, CRational(-c.re, -c.im));
  return out;
}

PolySymbol operator*(const PolySymbol& a, const PolySymbol& b) {
  PolySymbol out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
  }
  return out;
}

PolySymbol operator*(const CRational& c, const PolySymbol& a) { return PolySymbol::constant(c) * a; }

namespace {

Rational binomial(int k, int j) {
  Rational r = 1;
  for (int t = 1; t <= j; ++t) r = r * (k - j + t) / t;
  return r;
}

CRational ipow(const CRational& x, int k) {
  CRational r = 1;
  for (int t = 0; t < k; ++t) r = r * x;
  return r;
}

// Coefficient of the k-th order, j-split term of the E-s exponential.
CRational term_coeff(int k, int j, const Rational& s, const Rational& hbar) {
  Rational fact = 1;
  for (int t = 2; t <= k; ++t) fact *= t;
  const CRational ih2(0, hbar / 2);
  const CRational left = ipow(CRational(1 - s), j);
  const CRational right = ipow(CRational(-(1 + s)), k - j);
  return CRational(binomial(k, j) / fact) * ipow(ih2, k) * left * right;
}

}  // namespace

PolySymbol star_poly(const PolySymbol& a, const PolySymbol& b, const Rational& s, const Rational& hbar) {
  PolySymbol out;
  const int kmax = std::min(a.degree(), b.degree());
  for (int k = 0; k <= kmax; ++k) {
    for (int j = 0; j <= k; ++j) {
      const auto da = a.derivative(j, k - j);
      const auto db = b.derivative(k - j, j);
      if (da.is_zero() || db.is_zero()) continue;
      out = out + term_coeff(k, j, s, hbar) * (da * db);
    }
  }
  return out;
}

GaussianWeighted GaussianWeighted::derivative(int nq, int np) const {
  GaussianWeighted r = *this;
  const CRational inv(Rational(-1) / sigma2);
  for (int t = 0; t < nq; ++t) r.poly = r.poly.derivative(1, 0) + inv * (PolySymbol::q() * r.poly);
  for (int t = 0; t < np; ++t) r.poly = r.poly.derivative(0, 1) + inv * (PolySymbol::p() * r.poly);
  return r;
}

std::complex<double> GaussianWeighted::evaluate(double q, double p) const {
  return poly.evaluate(q, p) * std::exp(-(q * q + p * p) / (2.0 * static_cast<double>(sigma2)));
}

GaussianWeighted star_poly(const PolySymbol& a, const GaussianWeighted& b, const Rational& s, const Rational& hbar) {
  GaussianWeighted out{PolySymbol{}, b.sigma2};
  for (int k = 0; k <= a.degree(); ++k) {
    for (int j = 0; j <= k; ++j) {
      const auto da = a.derivative(j, k - j);
      if (da.is_zero()) continue;
      const auto db = b.derivative(k - j, j);
      out.poly = out.poly + term_coeff(k, j, s, hbar) * (da * db.poly);
    }
  }
  return out;
}

}  // namespace phasespace
