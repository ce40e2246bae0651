#pragma once

#include <cmath>
#include <vector>

namespace ringbif {

// Neumaier compensated accumulator.
template <class Real>
class BasicCompensatedSum {
 public:
  void add(Real x) {
    const Real t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

using CompensatedSum = BasicCompensatedSum<double>;

// s_k for k = 0..n and sbar_k for k = 0..n-1 (sbar_n = 0 stored too).
struct SumTable {
  int n = 0;
  double alpha = 2.0;
  std::vector<double> s;
  std::vector<double> s_bar;

  // periodic in k with period n; s_{-k} = s_k
  double at(int k) const;
  double bar_at(int k) const;
  double s1() const { return s[1]; }
};

SumTable make_sum_table(int n, double alpha);

// Same sums in long double. Identity checks at large n and alpha need it:
// s_k grows like n^(alpha+1) and a double ulp there exceeds 1e-9.
struct ExtendedSumTable {
  int n = 0;
  double alpha = 2.0;
  std::vector<long double> s;
  std::vector<long double> s_bar;
  long double at(int k) const;
};

ExtendedSumTable make_extended_sum_table(int n, double alpha);

double s_sum(int n, double alpha, int k);
double s_bar_sum(int n, double alpha, int k);

struct RecurrenceReport {
  double second_difference = 0.0;  // s_{k+1}-2s_k+s_{k-1} = 2s_1 - sbar_k
  double closed_sum = 0.0;         // s_k = k^2 s_1 - sum l sbar_{k-l}
  double first_difference = 0.0;   // s_{k+1}-s_k = (2k+1)s_1 - sum sbar_l
  double max_residual() const;
};

RecurrenceReport verify_recurrences(const SumTable& t);
RecurrenceReport verify_recurrences(const ExtendedSumTable& t);
// uses the extended table
RecurrenceReport verify_recurrences(int n, double alpha);

struct CotangentCheck {
  double lhs = 0.0;  // s_{k+1} - 3 s_k + 3 s_{k-1} - s_{k-2}
  double rhs = 0.0;  // -cot((k - 1/2) zeta / 2)
};

// alpha = 2 only. k = 1 uses s_{-1} = s_1.
CotangentCheck second_difference_cotangent(const SumTable& t, int k);
CotangentCheck second_difference_cotangent(const ExtendedSumTable& t, int k);
CotangentCheck second_difference_cotangent(int n, int k);

// (1/(2 pi^3)) sum_{k=1}^{num_terms} (2k-1)^{-3}
double asymptotic_sigma(long num_terms);
// converged value, tail handled by an integral bound
double sigma_constant();

}  // namespace ringbif
