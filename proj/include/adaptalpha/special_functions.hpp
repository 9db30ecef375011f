#pragma once

namespace adaptalpha::special {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
// Series expansion for x < a+1, continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a,b); continued fraction split at
// x = (a+1)/(a+b+2).
double beta_inc(double a, double b, double x);

// Inverse of gamma_q in x: returns x with gamma_q(a,x) = q.
// Bracketing bisection refined by Newton steps on the log tail.
double gamma_q_inv(double a, double q);

// Inverse of beta_inc in x: returns x with beta_inc(a,b,x) = p.
double beta_inc_inv(double a, double b, double p);

// Standard normal quantile (Wichura's PPND16), |error| < 1e-15.
double normal_quantile(double p);

}  // namespace adaptalpha::special
