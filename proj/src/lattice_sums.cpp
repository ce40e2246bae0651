#include "ringbif/lattice_sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ringbif/errors.hpp"

namespace ringbif {

namespace {

void check_domain(int n, double alpha) {
  if (n < 2) throw DomainError("n must be >= 2, got " + std::to_string(n));
  if (!(alpha >= 1.0)) throw DomainError("alpha must be >= 1, got " + std::to_string(alpha));
}

int wrap(int k, int n) {
  int r = k % n;
  if (r < 0) r += n;
  return r;
}

// sin(pi m / n) reflected into [0, pi/2]: near pi the argument rounding
// would cost relative accuracy
template <class Real>
Real sin_pi_frac_t(long long m, int n) {
  m %= n;
  if (m < 0) m += n;
  const long long r = std::min(m, static_cast<long long>(n) - m);
  using std::sin;
  return sin(std::numbers::pi_v<Real> * static_cast<Real>(r) / n);
}

double sin_pi_frac(long long m, int n) { return sin_pi_frac_t<double>(m, n); }

template <class Real>
void fill_sums(int n, double alpha, std::vector<Real>& s, std::vector<Real>& s_bar) {
  using std::pow;
  std::vector<Real> sin2(n), w(n), wbar(n);
  for (int m = 1; m < n; ++m) {
    const Real v = sin_pi_frac_t<Real>(m, n);
    sin2[m] = v * v;
  }
  const Real a = alpha;
  const Real c = pow(Real(2), -a);
  const Real cbar = pow(Real(2), Real(2) - a);
  for (int j = 1; j < n; ++j) {
    const Real sj = sin_pi_frac_t<Real>(j, n);
    w[j] = c / pow(sj, a + Real(1));
    wbar[j] = cbar / pow(sj, a - Real(1));
  }
  s.assign(n + 1, Real(0));
  s_bar.assign(n + 1, Real(0));
  // s_k = s_{n-k}: only half the table needs summing
  for (int k = 1; k <= n / 2; ++k) {
    BasicCompensatedSum<Real> acc, accbar;
    int idx = 0;
    for (int j = 1; j < n; ++j) {
      idx += k;
      if (idx >= n) idx -= n;
      acc.add(sin2[idx] * w[j]);
      accbar.add(sin2[idx] * wbar[j]);
    }
    s[k] = s[n - k] = acc.value();
    s_bar[k] = s_bar[n - k] = accbar.value();
  }
  s[0] = s[n] = Real(0);
  s_bar[0] = s_bar[n] = Real(0);
}

template <class Real>
RecurrenceReport recurrences(int n, const std::vector<Real>& s, const std::vector<Real>& s_bar) {
  if (n < 3) throw DomainError("recurrences need n >= 3");
  const Real s1 = s[1];
  RecurrenceReport r;
  auto upd = [](double& slot, Real v) { slot = std::max(slot, static_cast<double>(std::abs(v))); };
  // running sum for the first-difference identity
  BasicCompensatedSum<Real> sum_bar;
  for (int k = 1; k < n; ++k) {
    upd(r.second_difference, (s[k + 1] - 2 * s[k] + s[k - 1]) - (2 * s1 - s_bar[k]));

    BasicCompensatedSum<Real> closed;
    closed.add(s[k]);
    closed.add(-static_cast<Real>(k) * k * s1);
    for (int l = 1; l < k; ++l) closed.add(l * s_bar[k - l]);
    upd(r.closed_sum, closed.value());

    sum_bar.add(s_bar[k]);
    upd(r.first_difference, s[k + 1] - s[k] - ((2 * k + 1) * s1 - sum_bar.value()));
  }
  return r;
}

template <class Real>
CotangentCheck cotangent(int n, double alpha, Real s_next, Real s_k, Real s_prev, Real s_prev2, int k) {
  if (alpha != 2.0) throw DomainError("cotangent identity holds for alpha = 2 only");
  if (k < 1 || k > n) throw DomainError("k must lie in [1, n]");
  using std::cos;
  using std::sin;
  const Real arg = (k - Real(0.5)) * std::numbers::pi_v<Real> / n;
  const Real sa = sin(arg);
  if (std::abs(sa) < Real(1e-14)) throw DomainError("cotangent pole");
  CotangentCheck c;
  c.lhs = static_cast<double>(s_next - 3 * s_k + 3 * s_prev - s_prev2);
  c.rhs = static_cast<double>(-cos(arg) / sa);
  return c;
}

}  // namespace

double SumTable::at(int k) const { return s[wrap(k, n)]; }
double SumTable::bar_at(int k) const { return s_bar[wrap(k, n)]; }

SumTable make_sum_table(int n, double alpha) {
  check_domain(n, alpha);
  SumTable t;
  t.n = n;
  t.alpha = alpha;
  fill_sums<double>(n, alpha, t.s, t.s_bar);
  return t;
}

long double ExtendedSumTable::at(int k) const { return s[wrap(k, n)]; }

ExtendedSumTable make_extended_sum_table(int n, double alpha) {
  check_domain(n, alpha);
  ExtendedSumTable t;
  t.n = n;
  t.alpha = alpha;
  fill_sums<long double>(n, alpha, t.s, t.s_bar);
  return t;
}

double s_sum(int n, double alpha, int k) {
  check_domain(n, alpha);
  if (k < 0 || k > n) throw DomainError("k must lie in [0, n]");
  const double c = std::pow(2.0, -alpha);
  CompensatedSum acc;
  for (int j = 1; j < n; ++j) {
    const double num = sin_pi_frac(static_cast<long long>(k) * j, n);
    const double den = sin_pi_frac(j, n);
    acc.add(c * num * num / std::pow(den, alpha + 1.0));
  }
  return acc.value();
}

double s_bar_sum(int n, double alpha, int k) {
  check_domain(n, alpha);
  if (k < 0 || k > n - 1) throw DomainError("k must lie in [0, n-1]");
  const double c = std::pow(2.0, 2.0 - alpha);
  CompensatedSum acc;
  for (int j = 1; j < n; ++j) {
    const double num = sin_pi_frac(static_cast<long long>(k) * j, n);
    const double den = sin_pi_frac(j, n);
    acc.add(c * num * num / std::pow(den, alpha - 1.0));
  }
  return acc.value();
}

double RecurrenceReport::max_residual() const {
  return std::max({second_difference, closed_sum, first_difference});
}

RecurrenceReport verify_recurrences(const SumTable& t) { return recurrences(t.n, t.s, t.s_bar); }

RecurrenceReport verify_recurrences(const ExtendedSumTable& t) { return recurrences(t.n, t.s, t.s_bar); }

RecurrenceReport verify_recurrences(int n, double alpha) {
  if (n < 3) throw DomainError("recurrences need n >= 3");
  return verify_recurrences(make_extended_sum_table(n, alpha));
}

CotangentCheck second_difference_cotangent(const SumTable& t, int k) {
  return cotangent<double>(t.n, t.alpha, t.at(k + 1), t.at(k), t.at(k - 1), t.at(k - 2), k);
}

CotangentCheck second_difference_cotangent(const ExtendedSumTable& t, int k) {
  return cotangent<long double>(t.n, t.alpha, t.at(k + 1), t.at(k), t.at(k - 1), t.at(k - 2), k);
}

CotangentCheck second_difference_cotangent(int n, int k) {
  return second_difference_cotangent(make_extended_sum_table(n, 2.0), k);
}

double asymptotic_sigma(long num_terms) {
  if (num_terms < 1) throw DomainError("num_terms must be >= 1");
  CompensatedSum acc;
  // smallest terms first
  for (long k = num_terms; k >= 1; --k) {
    const double m = 2.0 * k - 1.0;
    acc.add(1.0 / (m * m * m));
  }
  return acc.value() / (2.0 * std::pow(std::numbers::pi, 3));
}

double sigma_constant() {
  // sum over odd m of m^-3 = (7/8) zeta(3)
  constexpr double zeta3 = 1.2020569031595942853997;
  return 0.875 * zeta3 / (2.0 * std::pow(std::numbers::pi, 3));
}

}  // namespace ringbif
