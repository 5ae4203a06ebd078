#include "resokit/radial_model.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "mproot.hpp"
#include "resokit/errors.hpp"

namespace resokit::radial {
namespace {

void validate(int d, int l) {
  if (d < 3 || d % 2 == 0) {
    throw Error("radial model requires an odd dimension >= 3, got " + std::to_string(d));
  }
  if (l < 0) {
    throw Error("angular mode must be nonnegative, got " + std::to_string(l));
  }
}

// T(z) = sum_{k=0}^{m} i^k (m+k)! / (k! (m-k)! 2^k) z^{m-k}, exact.
PolyQ dirichlet_coeffs(int m) {
  PolyQ t(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    const int k = m - j;  // z^j carries k = m - j
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(m + k));
    mpz_class den;
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_class fac;
    mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(m - k));
    den *= fac;
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(k));
    den *= pow2;
    mpq_class ratio(num, den);
    ratio.canonicalize();
    const GaussQ ik = unit_i_power(k);
    t[static_cast<std::size_t>(j)] = GaussQ{ik.re * ratio, ik.im * ratio};
  }
  return t;
}

}  // namespace

const char* to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Neumann ? "neumann" : "dirichlet";
}

RadialPolynomial radial_polynomial(int d, int l, BoundaryCondition bc) {
  validate(d, l);
  const int m = l + (d - 3) / 2;
  RadialPolynomial poly;
  poly.dimension = d;
  poly.mode = l;
  poly.bc = bc;

  const PolyQ t = dirichlet_coeffs(m);
  if (bc == BoundaryCondition::Dirichlet) {
    poly.coefficients = t;
    return poly;
  }

  // N(z) = i z T(z) + z T'(z) - a T(z), a = l + d - 2:
  //   N_j = i T_{j-1} + (j - a) T_j.
  const long a = l + d - 2;
  PolyQ n(static_cast<std::size_t>(m) + 2);
  const GaussQ imag_unit{0, 1};
  for (int j = 0; j <= m + 1; ++j) {
    GaussQ acc{0, 0};
    if (j >= 1) acc = acc + imag_unit * t[static_cast<std::size_t>(j - 1)];
    if (j <= m) {
      const mpq_class f(j - a);
      const GaussQ& tj = t[static_cast<std::size_t>(j)];
      acc = acc + GaussQ{tj.re * f, tj.im * f};
    }
    n[static_cast<std::size_t>(j)] = acc;
  }
  poly.coefficients = n;
  return poly;
}

std::int64_t sh_dim(int d, int l) {
  validate(d, l);
  if (l == 0) return 1;
  // (2l + d - 2) / (d - 2) * C(l + d - 3, l), always an integer.
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(l + d - 3),
               static_cast<unsigned long>(l));
  mpz_class num = mpz_class(2 * l + d - 2) * binom;
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), mpz_class(d - 2).get_mpz_t());
  if (r != 0) throw Error("sh_dim: internal arithmetic error");
  if (!q.fits_slong_p()) throw Error("sh_dim: multiplicity exceeds 64-bit range");
  return static_cast<std::int64_t>(q.get_si());
}

std::int64_t ResonanceSet::total_multiplicity() const {
  std::int64_t total = 0;
  for (const auto& e : entries) total += e.multiplicity;
  return total;
}

ResonanceSet ball_resonances(int d, double rho, int l_max, BoundaryCondition bc,
                             const roots::RootFindOptions& options) {
  validate(d, 0);
  if (!(rho > 0.0)) throw Error("ball radius must be positive");
  if (l_max < 0) throw Error("l_max must be nonnegative");

  ResonanceSet set;
  set.dimension = d;
  set.radius = rho;
  set.bc = bc;
  set.l_max = l_max;

  std::vector<std::complex<double>> warm;
  for (int l = 0; l <= l_max; ++l) {
    const RadialPolynomial poly = radial_polynomial(d, l, bc);
    if (poly.degree() < 1) continue;  // e.g. Dirichlet l=0 in d=3: no resonances
    // Solve on the exact coefficients at degree-scaled precision: rounding
    // them to double first loses the deep roots beyond degree ~25 (their
    // condition number doubles with every unit of degree), which would break
    // the -conj symmetry and the half-plane confinement of the set.
    // Successive modes' roots nearly interlace, so each mode seeds the next.
    detail::ModeRoots report;
    try {
      report = detail::exact_poly_roots(poly.coefficients, options.max_iterations,
                                        warm.empty() ? nullptr : &warm);
    } catch (NonConvergence& e) {
      throw NonConvergence("ball_resonances: mode l=" + std::to_string(l) + ": " + e.what(),
                           std::move(e.best_iterate));
    }
    if (!report.verified) {
      throw Error("ball_resonances: argument-principle verification failed for mode l=" +
                  std::to_string(l));
    }
    warm.clear();
    for (std::size_t k = 0; k < report.values.size(); ++k) {
      for (int m = 0; m < report.multiplicities[k]; ++m) warm.push_back(report.values[k]);
    }
    const std::int64_t weight = sh_dim(d, l);
    std::vector<Resonance> mode_entries;
    mode_entries.reserve(report.values.size());
    for (std::size_t k = 0; k < report.values.size(); ++k) {
      Resonance res;
      res.value = report.values[k] / rho;
      res.multiplicity = weight * report.multiplicities[k];
      res.mode = l;
      mode_entries.push_back(res);
    }
    std::sort(mode_entries.begin(), mode_entries.end(),
              [](const Resonance& a, const Resonance& b) {
                if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
                return a.value.imag() < b.value.imag();
              });
    set.entries.insert(set.entries.end(), mode_entries.begin(), mode_entries.end());
  }
  return set;
}

ResonanceSet scale_resonances(const ResonanceSet& set, double factor) {
  if (!(factor > 0.0)) throw Error("scale factor must be positive");
  ResonanceSet out = set;
  out.radius = set.radius * factor;
  for (auto& e : out.entries) e.value /= factor;
  return out;
}

}  // namespace resokit::radial
