#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <map>
#include <string>
#include <utility>

namespace phasespace {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex rational re + i im.
struct CRational {
  Rational re{0};
  Rational im{0};

  CRational() = default;
  CRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  CRational(int r) : re(r) {}

  bool is_zero() const { return re == 0 && im == 0; }
  std::complex<double> to_complex() const;

  friend CRational operator+(const CRational& a, const CRational& b) { return {a.re + b.re, a.im + b.im}; }
  friend CRational operator-(const CRational& a, const CRational& b) { return {a.re - b.re, a.im - b.im}; }
  friend CRational operator*(const CRational& a, const CRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const CRational& a, const CRational& b) { return a.re == b.re && a.im == b.im; }
};

/// Sparse polynomial sum c_ij q^i p^j with exact coefficients.
class PolySymbol {
 public:
  static constexpr int kMaxDegree = 12;

  PolySymbol() = default;
  static PolySymbol constant(const CRational& c);
  static PolySymbol monomial(int i, int j, const CRational& c = 1);
  static PolySymbol q() { return monomial(1, 0); }
  static PolySymbol p() { return monomial(0, 1); }

  const std::map<std::pair<int, int>, CRational>& terms() const { return terms_; }
  void add(int i, int j, const CRational& c);
  CRational coeff(int i, int j) const;

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }

  PolySymbol derivative(int nq, int np) const;
  std::complex<double> evaluate(double q, double p) const;
  std::string to_string() const;

  friend PolySymbol operator+(const PolySymbol& a, const PolySymbol& b);
  friend PolySymbol operator-(const PolySymbol& a, const PolySymbol& b);
  friend PolySymbol operator*(const PolySymbol& a, const PolySymbol& b);
  friend PolySymbol operator*(const CRational& c, const PolySymbol& a);
  friend bool operator==(const PolySymbol& a, const PolySymbol& b) { return a.terms_ == b.terms_; }

 private:
  std::map<std::pair<int, int>, CRational> terms_;
};

/// a exp{(i hbar/2)[(1-s) <d_q d_p> - (1+s) <d_p d_q>]} b, a terminating series.
/// Throws InvalidArgument if the result would exceed kMaxDegree.
PolySymbol star_poly(const PolySymbol& a, const PolySymbol& b, const Rational& s, const Rational& hbar);

/// P(q,p) exp(-(q^2 + p^2) / 2 sigma^2): decays on a grid yet keeps exact
/// derivatives, d(P G) = (dP - x P / sigma^2) G.
struct GaussianWeighted {
  PolySymbol poly;
  Rational sigma2{1};

  GaussianWeighted derivative(int nq, int np) const;
  std::complex<double> evaluate(double q, double p) const;
};

/// a *_s (P G), exact; the series stops at the degree of a.
GaussianWeighted star_poly(const PolySymbol& a, const GaussianWeighted& b, const Rational& s, const Rational& hbar);

}  // namespace phasespace
