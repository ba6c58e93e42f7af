#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "microdiff/field.hpp"
#include "microdiff/rng.hpp"
#include "microdiff/schedule.hpp"

namespace microdiff {

// Abstract noise predictor eps_theta(x_t, t, y). Implementations: the
// trained network (denoiser.hpp) and the analytic Gaussian oracle.
class NoisePredictor {
 public:
  virtual ~NoisePredictor() = default;
  virtual int dims() const = 0;
  virtual Field predict(const Field& x_t, int t, std::optional<int> label) const = 0;
};

struct SamplerConfig {
  double eta = 0.0;                // DDIM stochasticity in [0, 1]
  std::vector<int> step_sequence;  // strictly increasing subset of 1..T, last == T
  double guidance_weight = 0.0;    // w >= 0; 0 disables guidance
  std::uint64_t seed = 0;
};

// Evenly spaced n-step subsequence of 1..T ending at T.
std::vector<int> make_step_sequence(int T, int n_steps);

void validate_sampler_config(const SamplerConfig& cfg, int T);

// x_t = sqrt(abar_t) x0 + sqrt(1 - abar_t) eps.
Field forward_sample(const Field& x0, int t, const Field& eps, const NoiseSchedule& s);

// One ancestral DDPM step: mu_tilde + sqrt(beta_tilde) * noise.
// At t = 1 the noise argument is ignored and mu_tilde is returned.
Field ddpm_step(const Field& x_t, const Field& eps_pred, int t, const Field& noise,
                const NoiseSchedule& s);

// One DDIM step from t to t_prev (t_prev may be 0, meaning clean data;
// abar_0 = 1 so the final step returns the x0 estimate).
Field ddim_step(const Field& x_t, const Field& eps_pred, int t, int t_prev, double eta,
                const Field& noise, const NoiseSchedule& s);

// DDIM noise scale: sigma_t^2 = eta^2 (1-abar_prev)/(1-abar_t) (1 - abar_t/abar_prev).
double ddim_sigma(const NoiseSchedule& s, int t, int t_prev, double eta);

// Classifier-free combination (1+w) eps_cond - w eps_uncond.
Field guided_eps(const Field& eps_cond, const Field& eps_uncond, double w);

// Spherical interpolation between latents; near-parallel inputs fall back
// to linear interpolation.
Field slerp(const Field& z0, const Field& z1, double alpha);

Field gaussian_field(int dims, const std::array<int, 3>& shape, Rng& rng);

// Full reverse loop: draws x_T from cfg.seed, walks the step sequence with
// ddim_step (plain DDPM steps when the sequence is full and eta == 1),
// applies classifier-free guidance when cond is present and w > 0, and
// returns the final x0 estimate clamped to [-1, 1].
Field sample_loop(const NoisePredictor& model, const SamplerConfig& cfg,
                  std::optional<int> cond, const std::array<int, 3>& shape,
                  const NoiseSchedule& s);

}  // namespace microdiff
