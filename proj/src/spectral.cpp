#include "nilcalc/spectral.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nilcalc/gauss.hpp"

namespace nilcalc {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::function<double(double)> potential(const RepParams& p) {
  p.validate();
  if (p.group == GroupId::Engel) {
    const double l = p.lambda, m = p.mu;
    if (l == 0) throw std::invalid_argument("potential: Engel requires lambda != 0");
    const double shift = l * l + 1.0 / (l * l);
    return [l, m, shift](double u) {
      const double w = l * u * u - m / l;
      return 0.25 * w * w + l * l * u * u + shift;
    };
  }
  const double l = p.lambda, m = p.mu, nu = p.nu;
  if (l == 0 || m == 0)
    throw std::invalid_argument("potential: Cartan requires lambda != 0 and mu != 0");
  const double r = l * l + m * m;
  const double shift = r * (l * l + m * m + 1.0 / (l * l) + 1.0 / (m * m));
  return [r, nu, shift](double u) {
    const double w = nu + r * r * u * u;
    return 0.25 * w * w + r * r * r * u * u + shift;
  };
}

double count_threshold(const RepParams& p, double s) {
  return p.group == GroupId::Engel ? s : p.rho() * s;
}

SchrodingerDisc::SchrodingerDisc(double half_width, int n, const std::function<double(double)>& V,
                                 double k)
    : L(half_width), N(n), kinetic(k), diag(size_t(n)), offdiag(0) {
  if (n < 16) throw std::invalid_argument("SchrodingerDisc: N must be >= 16");
  const double hh = h();
  offdiag = -k / (hh * hh);
  for (int j = 0; j < n; ++j) diag[size_t(j)] = 2.0 * k / (hh * hh) + V(node(j));
}

int count_below(const SchrodingerDisc& disc, double s) {
  // LDL^T pivots of T - sI; the count of negative pivots is the count of
  // eigenvalues below s (Sylvester inertia).
  const double b2 = disc.offdiag * disc.offdiag;
  int count = 0;
  double piv = disc.diag[0] - s;
  if (piv == 0) piv = -1e-300;
  if (piv < 0) ++count;
  for (size_t j = 1; j < disc.diag.size(); ++j) {
    piv = (disc.diag[j] - s) - b2 / piv;
    if (piv == 0) piv = -1e-300;
    if (piv < 0) ++count;
  }
  return count;
}

double auto_box(const std::function<double(double)>& V, double s_max, double L0) {
  double L = L0;
  while (std::min(V(L), V(-L)) <= 4.0 * s_max) {
    L *= 1.25;
    if (L > 1e8) throw std::runtime_error("auto_box: potential does not confine");
  }
  return L;
}

int model_count(const RepParams& p, double s, int n_disc) {
  auto V = potential(p);
  const double thr = count_threshold(p, s);
  const double L = auto_box(V, std::max(thr, 1.0));
  SchrodingerDisc disc(L, n_disc, V, 1.0);
  return count_below(disc, thr);
}

namespace {

// roots of V - s on a confining potential by scan + bisection
std::vector<std::pair<double, double>> allowed_intervals(const std::function<double(double)>& V,
                                                         double s) {
  const double L = auto_box(V, std::max(s, 1.0));
  const int scan = 4000;
  std::vector<double> roots;
  double prev_u = -L, prev_f = s - V(-L);
  for (int j = 1; j <= scan; ++j) {
    double u = -L + 2.0 * L * j / scan;
    double f = s - V(u);
    if ((prev_f <= 0 && f > 0) || (prev_f > 0 && f <= 0)) {
      double a = prev_u, b = u, fa = prev_f;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (a + b);
        double fm = s - V(mid);
        if ((fa <= 0 && fm <= 0) || (fa > 0 && fm > 0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_u = u;
    prev_f = f;
  }
  std::vector<std::pair<double, double>> out;
  for (size_t i = 0; i + 1 < roots.size(); i += 2) out.emplace_back(roots[i], roots[i + 1]);
  return out;
}

}  // namespace

double weyl_volume(const std::function<double(double)>& V, double s) {
  auto intervals = allowed_intervals(V, s);
  double area = 0;
  std::vector<double> xs, ws;
  for (auto [a, b] : intervals) {
    // u = c + R sin(theta) soaks up the sqrt endpoint singularities
    const double c = 0.5 * (a + b), R = 0.5 * (b - a);
    gauss_legendre(240, -0.5 * kPi, 0.5 * kPi, xs, ws);
    double acc = 0;
    for (size_t q = 0; q < xs.size(); ++q) {
      const double th = xs[q];
      const double u = c + R * std::sin(th);
      const double val = std::max(s - V(u), 0.0);
      acc += ws[q] * std::sqrt(val) * R * std::cos(th);
    }
    area += acc;
  }
  return 2.0 * area;
}

TraceResult trace_estimate(GroupId group, double s, const TraceSpec& spec) {
  if (s < 10.0) throw std::invalid_argument("trace_estimate: s must be >= 10");
  Budget budget(spec.budget_seconds);
  const double l_lo = std::pow(s, -0.5), l_hi = std::pow(s, 0.5);
  TraceResult out{0.0, false};
  if (group == GroupId::Engel) {
    // log-midpoint cells in lambda, uniform midpoint cells in mu in (-2s, 4s)
    const int nl = spec.n_lambda, nm = spec.n_mu;
    const double dln = (std::log(l_hi) - std::log(l_lo)) / nl;
    const double mu_lo = -2.0 * s, mu_hi = 4.0 * s;
    const double dmu = (mu_hi - mu_lo) / nm;
    std::vector<double> cell(size_t(nl) * size_t(nm), 0.0);
    std::atomic<bool> stop{false};
    deterministic_parallel_for(nl * nm, spec.workers, [&](int idx) {
      if (stop.load(std::memory_order_relaxed)) return;
      if (budget.exceeded()) {
        stop.store(true, std::memory_order_relaxed);
        return;
      }
      const int i = idx / nm, j = idx % nm;
      const double lam = std::exp(std::log(l_lo) + (i + 0.5) * dln);
      const double mu = mu_lo + (j + 0.5) * dmu;
      if (lam * lam + 1.0 / (lam * lam) >= s) return;  // empty spectrum below s
      RepParams p = RepParams::engel(lam, mu);
      int n = model_count(p, s, spec.n_disc);
      cell[size_t(idx)] = double(n) * (lam * dln) * dmu;  // dlambda = lam dln
    });
    out.partial = stop.load();
    for (double c : cell) out.value += c;
    return out;
  }
  // Cartan
  const int nl = spec.n_lambda, nm = spec.n_mu, nn = spec.n_nu;
  const double dln = (std::log(l_hi) - std::log(l_lo)) / nl;
  const double nu_lo = -2.0 * s, nu_hi = 2.0 * s;
  if (spec.monte_carlo_samples > 0) {
    // seeded Monte Carlo over the printed box
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uln(std::log(l_lo), std::log(l_hi));
    std::uniform_real_distribution<double> unu(nu_lo, nu_hi);
    const int M = spec.monte_carlo_samples;
    std::vector<double> vals(size_t(M), 0.0);
    auto draws = std::vector<std::array<double, 3>>(size_t(M));
    for (int k = 0; k < M; ++k) draws[size_t(k)] = {uln(rng), uln(rng), unu(rng)};
    std::atomic<bool> stop{false};
    deterministic_parallel_for(M, spec.workers, [&](int k) {
      if (stop.load(std::memory_order_relaxed)) return;
      if (budget.exceeded()) {
        stop.store(true, std::memory_order_relaxed);
        return;
      }
      const double lam = std::exp(draws[size_t(k)][0]);
      const double mu = std::exp(draws[size_t(k)][1]);
      const double nu = draws[size_t(k)][2];
      RepParams p = RepParams::cartan(lam, mu, nu);
      vals[size_t(k)] = double(model_count(p, s, spec.n_disc)) * lam * mu;  // jacobian of log draws
    });
    out.partial = stop.load();
    double mean = 0;
    for (double v : vals) mean += v;
    mean /= M;
    const double vol = std::pow(std::log(l_hi) - std::log(l_lo), 2) * (nu_hi - nu_lo);
    out.value = mean * vol;
    return out;
  }
  std::vector<double> cell(size_t(nl) * size_t(nm) * size_t(nn), 0.0);
  const double dnu = (nu_hi - nu_lo) / nn;
  std::atomic<bool> stop{false};
  deterministic_parallel_for(nl * nm * nn, spec.workers, [&](int idx) {
    if (stop.load(std::memory_order_relaxed)) return;
    if (budget.exceeded()) {
      stop.store(true, std::memory_order_relaxed);
      return;
    }
    const int i = idx / (nm * nn), j = (idx / nn) % nm, k = idx % nn;
    const double lam = std::exp(std::log(l_lo) + (i + 0.5) * dln);
    const double mu = std::exp(std::log(l_lo) + (j + 0.5) * dln);
    const double nu = nu_lo + (k + 0.5) * dnu;
    const double E0 = lam * lam + mu * mu + 1.0 / (lam * lam) + 1.0 / (mu * mu);
    if (E0 >= s) return;
    RepParams p = RepParams::cartan(lam, mu, nu);
    int n = model_count(p, s, spec.n_disc);
    cell[size_t(idx)] = double(n) * (lam * dln) * (mu * dln) * dnu;
  });
  out.partial = stop.load();
  for (double c : cell) out.value += c;
  return out;
}

SlopeFit slope_fit(const CountCurve& curve) {
  if (curve.s.size() != curve.value.size())
    throw std::invalid_argument("slope_fit: mismatched curve lengths");
  std::vector<double> xs, ys;
  for (size_t i = 0; i < curve.s.size(); ++i) {
    if (!(curve.s[i] > 0) || !(curve.value[i] > 0))
      throw std::invalid_argument("slope_fit: values must be strictly positive");
    xs.push_back(std::log(curve.s[i]));
    ys.push_back(std::log(curve.value[i]));
  }
  if (xs.size() < 5) throw std::invalid_argument("slope_fit: need at least 5 points");
  const double n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  SlopeFit fit{};
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0, ybar = sy / n;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double pred = fit.slope * xs[i] + fit.intercept;
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  fit.r_squared = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

MultiplierResult multiplier_and_heat(GroupId group, double p, double q, double t) {
  if (!(1.0 < p && p <= 2.0 && 2.0 <= q && q < std::numeric_limits<double>::infinity()))
    throw std::invalid_argument("multiplier_and_heat: need 1 < p <= 2 <= q < inf");
  if (!(t > 0)) throw std::invalid_argument("multiplier_and_heat: t must be positive");
  MultiplierResult out{};
  const double inv_r = 1.0 / p - 1.0 / q;
  out.r = inv_r == 0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_r;
  const double base = group == GroupId::Engel ? 3.0 : 4.5;
  const double sigma = base * inv_r;
  out.exponent = sigma;
  out.heat_constant = sigma == 0 ? 1.0 : std::pow(sigma / t, sigma) * std::exp(-sigma);
  // sup over s > 0 of e^{-t s} s^sigma: coarse log grid, then golden-section
  auto phi = [t, sigma](double s) { return std::exp(-t * s) * std::pow(s, sigma); };
  if (sigma == 0) {
    out.numeric_sup = 1.0;  // supremum at s -> 0+
    return out;
  }
  double best_s = 1e-8, best = 0;
  for (int k = 0; k <= 400; ++k) {
    double s = std::pow(10.0, -8.0 + 16.0 * k / 400.0);
    double v = phi(s);
    if (v > best) {
      best = v;
      best_s = s;
    }
  }
  double a = best_s / 10.0, b = best_s * 10.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  for (int it = 0; it < 200; ++it) {
    if (phi(c1) < phi(c2)) {
      a = c1;
      c1 = c2;
      c2 = a + gr * (b - a);
    } else {
      b = c2;
      c2 = c1;
      c1 = b - gr * (b - a);
    }
  }
  out.numeric_sup = phi(0.5 * (a + b));
  return out;
}

}  // namespace nilcalc
