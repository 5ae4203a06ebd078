#include "mproot.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include <gmpxx.h>

#include "resokit/errors.hpp"

namespace resokit::detail {
namespace {

using cd = std::complex<double>;

// Complex number over GMP floats. Every instance is created at the working
// precision; gmpxx assignments then keep results at the target's precision.
struct MC {
  mpf_class re, im;
  explicit MC(long prec) : re(0, prec), im(0, prec) {}
  MC(double x, double y, long prec) : re(x, prec), im(y, prec) {}
};

// r = a * b, aliasing-safe via scratch t.
void cmul(MC& r, const MC& a, const MC& b, MC& t) {
  t.re = a.re * b.re - a.im * b.im;
  t.im = a.re * b.im + a.im * b.re;
  mpf_swap(r.re.get_mpf_t(), t.re.get_mpf_t());
  mpf_swap(r.im.get_mpf_t(), t.im.get_mpf_t());
}

// r = a / b, aliasing-safe.
void cdiv(MC& r, const MC& a, const MC& b, mpf_class& den, MC& t) {
  den = b.re * b.re + b.im * b.im;
  t.re = (a.re * b.re + a.im * b.im) / den;
  t.im = (a.im * b.re - a.re * b.im) / den;
  mpf_swap(r.re.get_mpf_t(), t.re.get_mpf_t());
  mpf_swap(r.im.get_mpf_t(), t.im.get_mpf_t());
}

void cadd(MC& r, const MC& a) {
  r.re += a.re;
  r.im += a.im;
}

void csub(MC& r, const MC& a) {
  r.re -= a.re;
  r.im -= a.im;
}

void cset(MC& r, const MC& a) {
  r.re = a.re;
  r.im = a.im;
}

void norm2(mpf_class& out, const MC& a) { out = a.re * a.re + a.im * a.im; }

cd to_cd(const MC& a) { return {a.re.get_d(), a.im.get_d()}; }

// The deep radial roots have condition numbers ~2^(2 deg) with respect to
// relative coefficient perturbations, so give the solve that many bits plus
// a double-precision-sized cushion, rounded up to whole limbs.
long working_precision(int degree) {
  const long raw = 96 + 2 * static_cast<long>(degree);
  return 64 * ((raw + 63) / 64);
}

double log2_mag(const mpf_class& x) {
  long e = 0;
  const double m = std::abs(mpf_get_d_2exp(&e, x.get_mpf_t()));
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log2(m) + static_cast<double>(e);
}

double log2_mag(const MC& a) { return std::max(log2_mag(a.re), log2_mag(a.im)); }

// Trimmed exact coefficients as MC at precision `prec`, plus their magnitudes
// (used for the evaluation-noise majorant sum_k |c_k| |z|^k).
struct MpPoly {
  std::vector<MC> c;
  std::vector<mpf_class> mag;
  long prec;
};

MpPoly convert(const PolyQ& coeffs, long prec) {
  int deg = -1;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) deg = static_cast<int>(k);
  }
  if (deg < 0) throw Error("exact_poly_roots: zero polynomial");

  MpPoly out{{}, {}, prec};
  out.c.reserve(static_cast<std::size_t>(deg) + 1);
  out.mag.reserve(static_cast<std::size_t>(deg) + 1);
  for (int k = 0; k <= deg; ++k) {
    MC v(prec);
    v.re = mpf_class(coeffs[static_cast<std::size_t>(k)].re, prec);
    v.im = mpf_class(coeffs[static_cast<std::size_t>(k)].im, prec);
    mpf_class m(0, prec);
    norm2(m, v);
    out.mag.emplace_back(sqrt(m));
    out.c.push_back(std::move(v));
  }
  return out;
}

void make_monic(MpPoly& p) {
  const MC lead = p.c.back();
  mpf_class den(0, p.prec);
  MC t(p.prec);
  for (auto& ck : p.c) cdiv(ck, ck, lead, den, t);
  for (std::size_t k = 0; k < p.mag.size(); ++k) {
    p.mag[k] = p.mag[k] / p.mag.back();
  }
}

// p(z), p'(z), and the majorant sum_k |c_k| |z|^k in one pass.
struct EvalScratch {
  MC p, dp, t;
  mpf_class az, s, w;
  explicit EvalScratch(long prec) : p(prec), dp(prec), t(prec), az(0, prec), s(0, prec), w(0, prec) {}
};

void eval(const MpPoly& poly, const MC& z, EvalScratch& e) {
  const std::size_t n = poly.c.size() - 1;
  norm2(e.az, z);
  e.az = sqrt(e.az);
  cset(e.p, poly.c[n]);
  e.dp.re = 0;
  e.dp.im = 0;
  e.s = poly.mag[n];
  for (std::size_t k = n; k-- > 0;) {
    cmul(e.dp, e.dp, z, e.t);
    cadd(e.dp, e.p);
    cmul(e.p, e.p, z, e.t);
    cadd(e.p, poly.c[k]);
    e.s = e.s * e.az + poly.mag[k];
  }
}

// Fujiwara bound computed from coefficient magnitudes in the log2 domain
// (the raw magnitudes overflow double for large modes).
double root_bound(const MpPoly& poly) {
  const std::size_t n = poly.c.size() - 1;
  const double ln = log2_mag(poly.c[n]);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= n; ++k) {
    double lk = log2_mag(poly.c[n - k]) - ln;
    if (k == n) lk -= 1.0;  // Fujiwara uses |a_0/2| for the constant term
    best = std::max(best, lk / static_cast<double>(k));
  }
  if (!std::isfinite(best)) return 1.0;
  return 2.0 * std::exp2(best);
}

// Winding number of p around the circle, evaluated at working precision.
// Phase steps larger than pi/2 double the sampling; sampled |p| at the
// precision's roundoff floor throws ContourTooClose (at 128+ bits this
// signals a genuinely broken report, not an evaluation limit).
long mp_winding(const MpPoly& poly, cd center, double radius, int samples) {
  const long prec = poly.prec;
  const std::size_t n = poly.c.size() - 1;
  samples = std::max(samples, 64);
  samples += samples % 2;
  constexpr int kMaxSamples = 1 << 14;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  // floor = 32 n * 2^(1-prec) * sum_k |c_k||z|^k, squared for the comparison
  mpf_class floor_coeff(32.0 * static_cast<double>(n), prec);
  mpf_div_2exp(floor_coeff.get_mpf_t(), floor_coeff.get_mpf_t(),
               static_cast<unsigned long>(prec - 1));

  EvalScratch e(prec);
  MC z(prec);
  mpf_class p2(0, prec), lim(0, prec);

  while (true) {
    bool ambiguous = false;
    std::vector<MC> vals;
    vals.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
      const double th = kTwoPi * k / samples;
      z.re = center.real() + radius * std::cos(th);
      z.im = center.imag() + radius * std::sin(th);
      eval(poly, z, e);
      norm2(p2, e.p);
      lim = floor_coeff * e.s;
      lim = lim * lim;
      if (p2 <= lim) {
        throw ContourTooClose("winding: sampled |p| at the working-precision floor");
      }
      vals.push_back(e.p);
    }

    double total = 0.0;
    mpf_class cross(0, prec), dot(0, prec);
    for (int k = 0; k < samples; ++k) {
      const MC& a = vals[static_cast<std::size_t>(k)];
      const MC& b = vals[static_cast<std::size_t>((k + 1) % samples)];
      cross = a.re * b.im - a.im * b.re;
      dot = a.re * b.re + a.im * b.im;
      long ec = 0, ed = 0;
      const double mc = mpf_get_d_2exp(&ec, cross.get_mpf_t());
      const double md = mpf_get_d_2exp(&ed, dot.get_mpf_t());
      const long shift = std::max(ec, ed);
      const double step = std::atan2(std::ldexp(mc, static_cast<int>(ec - shift)),
                                     std::ldexp(md, static_cast<int>(ed - shift)));
      if (std::abs(step) > 0.5 * std::numbers::pi) {
        ambiguous = true;
        break;
      }
      total += step;
    }
    if (!ambiguous) return std::lround(total / kTwoPi);
    if (samples >= kMaxSamples) {
      throw ContourTooClose("winding: phase steps stay ambiguous at the sample cap");
    }
    samples *= 2;
  }
}

// Separate double-identical points so a stage never starts two iterates at
// the same place.
void separate_seeds(std::vector<cd>& seeds) {
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    bool bumped = true;
    while (bumped) {
      bumped = false;
      for (std::size_t j = 0; j < i; ++j) {
        if (seeds[i] == seeds[j]) {
          seeds[i] += 1e-13 * (1.0 + std::abs(seeds[i])) * cd(1.0, 1.0);
          bumped = true;
        }
      }
    }
  }
}

// Aberth-Ehrlich sweeps at the polynomial's precision, refining the given
// iterates in place. The repulsion sum only steers the path -- the fixed
// point is p(z) = 0 whatever the repulsion -- so it is accumulated in double
// from rounded positions; p/p' stays at full precision.
struct StageResult {
  bool converged = false;
  int used = 0;
};

StageResult aberth_stage(const MpPoly& poly, std::vector<MC>& z, int budget) {
  const long prec = poly.prec;
  const std::size_t n = poly.c.size() - 1;

  // Settle rule: |p(z_i)| at or below the working-precision evaluation noise
  // (4 n * 2^(1-prec) * sum_k |c_k||z|^k) means the iterate is as accurate as
  // this precision permits; keep it fixed and let the others finish.
  mpf_class settle_coeff(4.0 * static_cast<double>(n), prec);
  mpf_div_2exp(settle_coeff.get_mpf_t(), settle_coeff.get_mpf_t(),
               static_cast<unsigned long>(prec - 1));

  EvalScratch e(prec);
  MC w(prec), rep(prec), diff(prec), denom(prec), step(prec);
  mpf_class p2(0, prec), lim(0, prec), den(0, prec), d2(0, prec);

  std::vector<cd> zd(n);
  for (std::size_t i = 0; i < n; ++i) zd[i] = to_cd(z[i]);

  StageResult res;
  std::vector<char> settled(n, 0);
  while (res.used < budget && !res.converged) {
    ++res.used;
    res.converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (settled[i]) continue;
      eval(poly, z[i], e);
      norm2(p2, e.p);
      lim = settle_coeff * e.s;
      lim = lim * lim;
      if (p2 <= lim) {
        settled[i] = 1;
        continue;
      }
      res.converged = false;
      norm2(d2, e.dp);
      if (d2 == 0) {
        z[i].re += 1e-6 * (1.0 + std::abs(zd[i]));
        zd[i] = to_cd(z[i]);
        continue;
      }
      cdiv(w, e.p, e.dp, den, diff);
      cd rep_d = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        cd dz = zd[i] - zd[j];
        // keep the sum finite when rounding collapses a pair of iterates
        if (!(std::norm(dz) > 1e-60)) dz = cd(1e-30, 0.0);
        rep_d += 1.0 / dz;
      }
      if (!std::isfinite(rep_d.real()) || !std::isfinite(rep_d.imag())) rep_d = 0.0;
      rep.re = rep_d.real();
      rep.im = rep_d.imag();
      cmul(denom, w, rep, diff);
      denom.re = 1.0 - denom.re;
      denom.im = -denom.im;
      norm2(d2, denom);
      if (d2 == 0) {
        cset(step, w);
      } else {
        cdiv(step, w, denom, den, diff);
      }
      csub(z[i], step);
      zd[i] = to_cd(z[i]);
    }
  }
  return res;
}

}  // namespace

ModeRoots exact_poly_roots(const PolyQ& coeffs, int max_iterations,
                           const std::vector<cd>* warm_seeds) {
  MpPoly poly = convert(coeffs, 64);
  const int degree = static_cast<int>(poly.c.size()) - 1;
  if (degree < 1) {
    ModeRoots empty;
    empty.verified = true;
    return empty;
  }
  const long prec = working_precision(degree);
  poly = convert(coeffs, prec);
  make_monic(poly);
  const std::size_t n = static_cast<std::size_t>(degree);

  // --- Aberth-Ehrlich: seeding stage, then full precision ---------------------
  // A cheap pass at reduced precision locates every root to ~1e-5 or better,
  // so the full-precision pass starts inside the quadratic basins and needs
  // only a handful of sweeps. One extra bit per unit of degree keeps pace
  // with the growth of the deep roots' condition numbers.
  const long coarse_prec =
      std::min(prec, 64 * ((64 + static_cast<long>(degree) + 63) / 64));
  MpPoly coarse = convert(coeffs, coarse_prec);
  make_monic(coarse);

  std::vector<MC> z;
  z.reserve(n);
  if (warm_seeds != nullptr && !warm_seeds->empty() && warm_seeds->size() <= n) {
    std::vector<cd> seeds = *warm_seeds;
    double min_im = 0.0;
    for (const cd& s : seeds) min_im = std::min(min_im, s.imag());
    // Missing iterates start below the deepest seed, where the extra roots
    // of the next mode appear; any misplacement only costs extra sweeps.
    for (std::size_t j = seeds.size(); j < n; ++j) {
      const double off = 0.7 * static_cast<double>(n - j);
      seeds.push_back(cd((j % 2 == 0 ? 0.3 : -0.3) * off, min_im - off));
    }
    separate_seeds(seeds);
    for (const cd& s : seeds) z.emplace_back(s.real(), s.imag(), coarse_prec);
  } else {
    const double radius = std::max(root_bound(coarse), 1e-3);
    constexpr double kRotation = 0.61803398874989485;  // irrational: breaks symmetry locks
    for (std::size_t k = 0; k < n; ++k) {
      const double th =
          2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + kRotation;
      z.emplace_back(radius * std::cos(th), radius * std::sin(th), coarse_prec);
    }
  }

  const auto positions = [&z]() {
    std::vector<cd> v;
    v.reserve(z.size());
    for (const auto& zi : z) v.push_back(to_cd(zi));
    return v;
  };

  StageResult seed_stage = aberth_stage(coarse, z, max_iterations);
  int used = seed_stage.used;
  if (!seed_stage.converged) {
    throw NonConvergence("exact_poly_roots: seeding stage exhausted its budget", positions());
  }

  if (prec > coarse_prec) {
    std::vector<cd> seeds = positions();
    separate_seeds(seeds);
    z.clear();
    for (const cd& s : seeds) z.emplace_back(s.real(), s.imag(), prec);
    StageResult refine = aberth_stage(poly, z, max_iterations);
    used += refine.used;
    if (!refine.converged) {
      throw NonConvergence("exact_poly_roots: refinement exhausted its budget", positions());
    }
  }

  // --- Clustering ------------------------------------------------------------
  // The working precision leaves ~2^(prec/3) between distinct roots and the
  // residual cloud of a genuinely multiple root, so a single relative
  // threshold separates the two cases cleanly.
  std::vector<cd> vals;
  vals.reserve(n);
  for (const auto& zi : z) vals.push_back(to_cd(zi));
  const double link_scale = std::exp2(-static_cast<double>(prec) / 3.0);

  std::vector<int> cluster_of(n, -1);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    if (cluster_of[i] >= 0) continue;
    const int id = static_cast<int>(groups.size());
    groups.push_back({});
    std::vector<std::size_t> stack{i};
    cluster_of[i] = id;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      groups[static_cast<std::size_t>(id)].push_back(a);
      for (std::size_t b = 0; b < n; ++b) {
        if (cluster_of[b] >= 0) continue;
        const double thr = link_scale * (1.0 + std::abs(vals[a]));
        if (std::abs(vals[a] - vals[b]) <= thr) {
          cluster_of[b] = id;
          stack.push_back(b);
        }
      }
    }
  }

  ModeRoots out;
  out.iterations = used;
  for (const auto& g : groups) {
    cd centroid = 0.0;
    for (std::size_t i : g) centroid += vals[i];
    centroid /= static_cast<double>(g.size());
    out.values.push_back(centroid);
    out.multiplicities.push_back(static_cast<int>(g.size()));
  }
  std::vector<std::size_t> order(out.values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (out.values[a].real() != out.values[b].real())
      return out.values[a].real() < out.values[b].real();
    return out.values[a].imag() < out.values[b].imag();
  });
  ModeRoots sorted;
  sorted.iterations = out.iterations;
  for (std::size_t i : order) {
    sorted.values.push_back(out.values[i]);
    sorted.multiplicities.push_back(out.multiplicities[i]);
  }

  // --- Argument-principle verification ---------------------------------------
  double max_abs = 0.0;
  for (const auto& v : sorted.values) max_abs = std::max(max_abs, std::abs(v));
  bool ok = false;
  try {
    long enclosing = mp_winding(poly, cd(0.0, 0.0), 1.2 * max_abs + 1.0, 256);
    ok = (enclosing == degree);
    for (std::size_t i = 0; ok && i < sorted.values.size(); ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < sorted.values.size(); ++j) {
        if (j != i) nearest = std::min(nearest, std::abs(sorted.values[i] - sorted.values[j]));
      }
      const double r = std::isfinite(nearest) ? 0.45 * nearest
                                              : 0.5 * (1.0 + std::abs(sorted.values[i]));
      ok = (mp_winding(poly, sorted.values[i], r, 64) == sorted.multiplicities[i]);
    }
  } catch (const Error&) {
    ok = false;
  }
  sorted.verified = ok;
  return sorted;
}

}  // namespace resokit::detail
