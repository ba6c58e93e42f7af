#include "microdiff/schedule.hpp"

#include <stdexcept>
#include <string>

namespace microdiff {

namespace {
void check_t(const NoiseSchedule& s, int t) {
  if (t < 1 || t > s.T)
    throw std::out_of_range("schedule: t = " + std::to_string(t) + " outside 1.." +
                            std::to_string(s.T));
}
}  // namespace

double NoiseSchedule::beta_t(int t) const {
  check_t(*this, t);
  return beta[t - 1];
}

double NoiseSchedule::alpha_t(int t) const {
  check_t(*this, t);
  return alpha[t - 1];
}

double NoiseSchedule::alpha_bar_t(int t) const {
  if (t == 0) return 1.0;
  check_t(*this, t);
  return alpha_bar[t - 1];
}

NoiseSchedule linear_schedule(int T, double beta_start, double beta_end) {
  if (T < 1) throw std::invalid_argument("linear_schedule: T must be >= 1");
  if (!(beta_start > 0.0) || !(beta_end < 1.0) || !(beta_start <= beta_end))
    throw std::invalid_argument("linear_schedule: need 0 < beta_start <= beta_end < 1");

  NoiseSchedule s;
  s.T = T;
  s.beta.resize(T);
  s.alpha.resize(T);
  s.alpha_bar.resize(T);
  double prod = 1.0;
  for (int t = 1; t <= T; ++t) {
    const double frac = T == 1 ? 0.0 : static_cast<double>(t - 1) / (T - 1);
    const double b = beta_start + (beta_end - beta_start) * frac;
    s.beta[t - 1] = b;
    s.alpha[t - 1] = 1.0 - b;
    prod *= s.alpha[t - 1];
    s.alpha_bar[t - 1] = prod;
  }
  return s;
}

double posterior_variance(const NoiseSchedule& s, int t) {
  check_t(s, t);
  if (t == 1) return 0.0;
  const double abar_prev = s.alpha_bar_t(t - 1);
  const double abar = s.alpha_bar_t(t);
  return (1.0 - abar_prev) / (1.0 - abar) * s.beta_t(t);
}

}  // namespace microdiff
