#pragma once

#include <vector>

namespace microdiff {

// Diffusion noise schedule: per-step variances beta_t, alpha_t = 1 - beta_t
// and the running product alpha_bar_t. Time is 1-based (t = 1..T); t = 0
// denotes clean data. Immutable after construction.
struct NoiseSchedule {
  int T = 0;
  std::vector<double> beta;       // beta[t-1] for t in 1..T
  std::vector<double> alpha;      // alpha[t-1] = 1 - beta[t-1]
  std::vector<double> alpha_bar;  // running product of alpha

  double beta_t(int t) const;
  double alpha_t(int t) const;
  // alpha_bar_t(0) == 1 by convention (clean data, no noise applied).
  double alpha_bar_t(int t) const;
};

// Linear beta ramp from beta_start to beta_end over T steps.
// Defaults elsewhere in the toolkit: T = 1000, beta 1e-4 -> 0.02.
NoiseSchedule linear_schedule(int T, double beta_start, double beta_end);

// Posterior variance beta_tilde_t = (1 - abar_{t-1}) / (1 - abar_t) * beta_t.
// t = 1 returns 0: the final denoising step adds no noise.
double posterior_variance(const NoiseSchedule& s, int t);

}  // namespace microdiff
