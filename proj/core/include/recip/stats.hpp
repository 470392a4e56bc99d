#pragma once

#include <vector>

namespace recip {

double mae(const std::vector<double>& truth, const std::vector<double>& predicted);
double rmse(const std::vector<double>& truth, const std::vector<double>& predicted);

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation (Lentz).
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided tail probability of Student's t with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  bool degenerate = false;  // zero variance of the paired differences
};

// Two-sided paired Student t-test. Zero-variance differences set the
// degenerate flag: p=1 when the means agree, p=0 otherwise.
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace recip
