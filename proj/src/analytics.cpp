#include "rigidity/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace rigidity::analytics {

double poisson_pmf(std::uint32_t j, double mu) {
  if (mu < 0) throw std::domain_error("poisson_pmf: negative mean");
  if (mu == 0.0) return j == 0 ? 1.0 : 0.0;
  return std::exp(-mu + j * std::log(mu) - std::lgamma(static_cast<double>(j) + 1));
}

double psi(std::uint32_t j, double mu) {
  if (mu < 0) throw std::domain_error("psi: negative mean");
  if (j == 0) return 1.0;
  if (mu == 0.0) return 0.0;

  long double term = std::exp(static_cast<long double>(-mu)); // pmf(0)
  long double lower = 0.0L;
  for (std::uint32_t i = 0; i < j; ++i) {
    lower += term;
    term *= mu / (i + 1);
  }
  if (lower <= 0.5L) return static_cast<double>(1.0L - lower);

  // small tail: sum pmf upward from j (term currently = pmf(j))
  long double upper = 0.0L;
  for (std::uint32_t i = j; i < j + 20000; ++i) {
    upper += term;
    term *= mu / (i + 1);
    if (term < upper * 1e-19L) break;
  }
  return static_cast<double>(upper);
}

namespace {

// mu / psi_{k-1}(mu), the function whose minimum is the k-core threshold
double threshold_fn(std::uint32_t k, double mu) { return mu / psi(k - 1, mu); }

double bisect(double lo, double hi, const auto& f) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

LambdaK lambda_k(std::uint32_t k) {
  if (k < 3) throw std::invalid_argument("lambda_k: k >= 3");
  constexpr double invphi = 0.6180339887498949;
  double a = 1e-3, b = 30.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = threshold_fn(k, c), fd = threshold_fn(k, d);
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = threshold_fn(k, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = threshold_fn(k, d);
    }
  }
  double mu = 0.5 * (a + b);
  return {threshold_fn(k, mu), mu};
}

double mu_k(std::uint32_t k, double lambda) {
  LambdaK lk = lambda_k(k);
  if (!(lambda > lk.lambda))
    throw std::domain_error("mu_k: lambda at or below the k-core threshold");
  // threshold_fn increases from lambda_k to infinity right of the argmin
  return bisect(lk.mu_argmin, std::max(lambda, lk.mu_argmin) + 1.0,
                [&](double mu) { return threshold_fn(k, mu) - lambda; });
}

double core_fraction(std::uint32_t k, double lambda) { return psi(k, mu_k(k, lambda)); }

double core3_avg_degree(double c) {
  double mu = mu_k(3, c);
  return mu * psi(2, mu) / psi(3, mu);
}

double c2_solve() {
  return bisect(3.4, 3.8, [](double c) { return core3_avg_degree(c) - 4.0; });
}

CoreFixedPoint q_32core(double c) {
  LambdaK l3 = lambda_k(3);
  if (!(c > l3.lambda))
    throw std::domain_error("q_32core: no root in (0,1) below the 3-core threshold");
  // q = psi_2(qc) is mu/psi_2(mu) = c at mu = qc, i.e. the mu_3 equation
  double tau = mu_k(3, c);
  return {tau / c, tau};
}

double lambda0(double tau) {
  if (!(tau > 0)) throw std::domain_error("lambda0: tau must be positive");
  return std::exp(-tau) * tau * tau / psi(2, tau);
}

double tau_star() {
  return bisect(1.0, 2.5, [](double tau) { return lambda0(tau) - 1.0; });
}

double a3_limit(double tau) {
  return 4.0 - tau - std::exp(-tau) * (tau * tau + 3.0 * tau + 4.0);
}

namespace {

// antiderivative of psi_4: F' = 1 - e^{-x}(1 + x + x^2/2 + x^3/6)
double psi4_antideriv(double x) {
  return x + std::exp(-x) * (x * x * x / 6.0 + x * x + 3.0 * x + 4.0);
}

} // namespace

double Phase3Curve::delta(double s) const { return tau * std::exp(-s); }

double Phase3Curve::a3(double s) const {
  double d = delta(s);
  return poisson_pmf(3, tau) + psi4_antideriv(d) - psi4_antideriv(tau);
}

double Phase3Curve::mu(double s) const {
  double d = delta(s);
  return 3.0 * a3(s) + d * psi(3, d);
}

double Phase3Curve::mu_ge5(double s) const {
  double d = delta(s);
  return d * psi(4, d);
}

double Phase3Curve::lambda(double s) const { return 6.0 * a3(s) / mu(s); }

Phase3Curve phase3_curve(double tau) {
  if (!(tau > 0)) throw std::domain_error("phase3_curve: tau must be positive");
  Phase3Curve curve;
  curve.tau = tau;
  if (a3_limit(tau) >= 0.0)
    throw std::domain_error("phase3_curve: a3 has no root for this tau");
  curve.s_star = bisect(0.0, 20.0, [&](double s) { return curve.a3(s); });
  return curve;
}

OdeCurves ode_oracle(double tau, std::uint32_t degree_cap, double h, double s_max) {
  if (degree_cap < 40) throw std::invalid_argument("ode_oracle: degree cap too small");
  if (h > 1e-3) throw std::invalid_argument("ode_oracle: step too large");
  if (psi(degree_cap, tau) > 1e-12)
    throw std::domain_error("ode_oracle: truncated tail mass too large");

  const std::uint32_t D = degree_cap;
  std::vector<double> y(D + 2, 0.0); // y[i] = a^{(i)}, indices 3..D used
  for (std::uint32_t i = 3; i <= D; ++i) y[i] = poisson_pmf(i, tau);

  auto deriv = [&](const std::vector<double>& a, std::vector<double>& out) {
    double ge5 = 0.0;
    for (std::uint32_t i = D; i >= 5; --i) ge5 += i * a[i];
    out[3] = -ge5;
    for (std::uint32_t i = 4; i <= D; ++i) out[i] = -static_cast<double>(i) * a[i] + (i + 1.0) * a[i + 1];
  };

  OdeCurves curves;
  auto record = [&](double s) {
    double mu = 0.0;
    for (std::uint32_t i = 3; i <= D; ++i) mu += i * y[i];
    curves.s.push_back(s);
    curves.a3.push_back(y[3]);
    curves.mu.push_back(mu);
    curves.lambda.push_back(6.0 * y[3] / mu);
    curves.delta_rec.push_back(5.0 * y[5] / y[4]);
  };

  std::vector<double> k1(D + 2), k2(D + 2), k3(D + 2), k4(D + 2), tmp(D + 2);
  record(0.0);
  const auto steps = static_cast<std::size_t>(std::ceil(s_max / h));
  for (std::size_t step = 0; step < steps; ++step) {
    deriv(y, k1);
    for (std::uint32_t i = 3; i <= D; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    deriv(tmp, k2);
    for (std::uint32_t i = 3; i <= D; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    deriv(tmp, k3);
    for (std::uint32_t i = 3; i <= D; ++i) tmp[i] = y[i] + h * k3[i];
    deriv(tmp, k4);
    for (std::uint32_t i = 3; i <= D; ++i)
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    record(h * static_cast<double>(step + 1));
  }
  return curves;
}

double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) throw std::domain_error("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    // P(a,x) by series, return 1 - P
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  // Q(a,x) by Lentz continued fraction
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, f = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return f * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double chi_square_sf(double stat, std::uint32_t dof) {
  if (dof == 0) throw std::domain_error("chi_square_sf: zero degrees of freedom");
  if (stat <= 0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * stat);
}

} // namespace rigidity::analytics
