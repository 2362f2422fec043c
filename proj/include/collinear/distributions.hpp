#pragma once

namespace collinear {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double df);
/// 2 * (1 - CDF(|t|)).
double t_two_sided_p(double t, double df);
/// Upper tail P(F > f) of the F(df1, df2) distribution.
double f_upper_p(double f, double df1, double df2);

}  // namespace collinear
