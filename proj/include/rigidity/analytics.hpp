#pragma once

#include <cstdint>
#include <vector>

namespace rigidity::analytics {

double poisson_pmf(std::uint32_t j, double mu);

// Pr[Po(mu) >= j]. Relative accuracy ~1e-14 for mu <= 50: evaluates
// whichever of the lower/upper pmf sums is smaller and complements.
double psi(std::uint32_t j, double mu);

// Threshold of a nonempty k-core in G(n, c/n): minimum over mu of
// mu / psi_{k-1}(mu), with the minimizing mu.
struct LambdaK {
    double lambda;
    double mu_argmin;
};
LambdaK lambda_k(std::uint32_t k);

// Largest root of mu / psi_{k-1}(mu) = lambda; requires lambda > lambda_k.
double mu_k(std::uint32_t k, double lambda);

// Asymptotic k-core fraction psi_k(mu_k(lambda)).
double core_fraction(std::uint32_t k, double lambda);

// Average degree inside the 3-core: mu psi_2(mu) / psi_3(mu) at mu = mu_3(c).
double core3_avg_degree(double c);

// The c where the 3-core's average degree reaches 4.
double c2_solve();

// Fixed point q = 1 - e^{-qc}(1 + qc), largest root in (0,1), with tau = qc.
struct CoreFixedPoint {
    double q;
    double tau;
};
CoreFixedPoint q_32core(double c);

// Branching ratio at s = 0: e^{-tau} tau^2 / (1 - e^{-tau}(1 + tau)).
double lambda0(double tau);

// Root of lambda0(tau) = 1.
double tau_star();

// Terminal value of a3: 4 - tau - e^{-tau}(tau^2 + 3 tau + 4). Negative iff
// the degree-3 mass dies out at a finite s*.
double a3_limit(double tau);

// Phase-3 branching curves for initial truncated-Poisson parameter tau.
// delta(s) = tau e^{-s}; a3 is the closed-form degree-3 mass; lambda = 6 a3 / mu.
struct Phase3Curve {
    double tau = 0;
    double s_star = 0; // root of a3 in [0, 20]

    double delta(double s) const;
    double a3(double s) const;
    double mu(double s) const;
    double mu_ge5(double s) const;
    double lambda(double s) const;
};
Phase3Curve phase3_curve(double tau);

// Numerical integration of the full degree-mass system, truncated at
// degree_cap: da3/ds = -mu_ge5, da_i/ds = -i a_i + (i+1) a_{i+1}. Used only
// to validate the closed forms.
struct OdeCurves {
    std::vector<double> s, a3, mu, lambda, delta_rec;
};
OdeCurves ode_oracle(double tau, std::uint32_t degree_cap, double h, double s_max);

// Regularized upper incomplete gamma Q(a, x); chi-square survival function.
double gamma_q(double a, double x);
double chi_square_sf(double stat, std::uint32_t dof);

} // namespace rigidity::analytics
