#pragma once

#include <complex>
#include <vector>

#include <gmpxx.h>

namespace resokit {

// Exact Gaussian rational: re + i*im with arbitrary-precision rational parts.
struct GaussQ {
  mpq_class re{0};
  mpq_class im{0};

  GaussQ() = default;
  GaussQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  GaussQ conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }

  friend GaussQ operator+(const GaussQ& a, const GaussQ& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussQ operator-(const GaussQ& a, const GaussQ& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussQ& a, const GaussQ& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// i^k for integer k (k may be negative).
GaussQ unit_i_power(long k);

// Polynomial with exact Gaussian-rational coefficients, ascending degree.
using PolyQ = std::vector<GaussQ>;

int poly_degree(const PolyQ& p);

// Exact formal derivative.
PolyQ poly_derivative(const PolyQ& p);

// Coefficient-wise complex conjugate (gives the polynomial q with
// q(z) = conj(p(conj(z)))).
PolyQ poly_conjugate(const PolyQ& p);

// Rounded double conversion. Throws Error if a coefficient magnitude
// exceeds the double range (happens for very large mode numbers).
std::complex<double> to_complex(const GaussQ& q);
std::vector<std::complex<double>> to_complex_coeffs(const PolyQ& p);

// Horner evaluation of double-converted coefficients.
std::complex<double> poly_eval(const std::vector<std::complex<double>>& coeffs,
                               std::complex<double> z);

// Evaluate polynomial and derivative together (single Horner pass).
std::pair<std::complex<double>, std::complex<double>> poly_eval_with_derivative(
    const std::vector<std::complex<double>>& coeffs, std::complex<double> z);

// max_k |c_k| * (1 + |z|)^deg — the natural residual scale for |p(z)|.
double poly_residual_scale(const std::vector<std::complex<double>>& coeffs,
                           std::complex<double> z);

// sum_k |c_k| |z|^k — majorant of |p(z)|; times machine epsilon it bounds the
// Horner roundoff, which is much tighter than poly_residual_scale when the
// coefficients decay with k.
double poly_abs_eval(const std::vector<std::complex<double>>& coeffs,
                     double abs_z);

}  // namespace resokit
