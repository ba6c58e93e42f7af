#include "microdiff/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace microdiff {

namespace {
void check_same_shape(const Field& a, const Field& b, const char* op) {
  if (!a.same_shape(b)) throw std::invalid_argument(std::string(op) + ": shape mismatch");
}
}  // namespace

std::vector<int> make_step_sequence(int T, int n_steps) {
  if (n_steps < 1 || n_steps > T) throw std::invalid_argument("step count outside 1..T");
  std::vector<int> seq(n_steps);
  for (int k = 0; k < n_steps; ++k)
    seq[k] = static_cast<int>(std::llround(static_cast<double>(T) * (k + 1) / n_steps));
  for (int k = 1; k < n_steps; ++k)
    if (seq[k] <= seq[k - 1]) seq[k] = seq[k - 1] + 1;
  seq.back() = T;
  return seq;
}

void validate_sampler_config(const SamplerConfig& cfg, int T) {
  if (!(cfg.eta >= 0.0 && cfg.eta <= 1.0))
    throw std::invalid_argument("sampler: eta must be in [0,1]");
  if (cfg.guidance_weight < 0.0)
    throw std::invalid_argument("sampler: guidance weight must be >= 0");
  const auto& seq = cfg.step_sequence;
  if (seq.empty()) throw std::invalid_argument("sampler: empty step sequence");
  if (seq.front() < 1 || seq.back() != T)
    throw std::invalid_argument("sampler: step sequence must lie in 1..T and end at T");
  for (std::size_t k = 1; k < seq.size(); ++k)
    if (seq[k] <= seq[k - 1])
      throw std::invalid_argument("sampler: step sequence must be strictly increasing");
}

Field forward_sample(const Field& x0, int t, const Field& eps, const NoiseSchedule& s) {
  check_same_shape(x0, eps, "forward_sample");
  const double abar = s.alpha_bar_t(t);
  const double c0 = std::sqrt(abar);
  const double ce = std::sqrt(1.0 - abar);
  Field out = x0;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = c0 * x0.v[i] + ce * eps.v[i];
  return out;
}

Field ddpm_step(const Field& x_t, const Field& eps_pred, int t, const Field& noise,
                const NoiseSchedule& s) {
  check_same_shape(x_t, eps_pred, "ddpm_step");
  const double a = s.alpha_t(t);
  const double abar = s.alpha_bar_t(t);
  const double inv_sqrt_a = 1.0 / std::sqrt(a);
  const double eps_coef = (1.0 - a) / std::sqrt(1.0 - abar);
  Field out = x_t;
  for (std::size_t i = 0; i < out.v.size(); ++i)
    out.v[i] = inv_sqrt_a * (x_t.v[i] - eps_coef * eps_pred.v[i]);
  if (t > 1) {
    check_same_shape(x_t, noise, "ddpm_step");
    const double sig = std::sqrt(posterior_variance(s, t));
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += sig * noise.v[i];
  }
  return out;
}

double ddim_sigma(const NoiseSchedule& s, int t, int t_prev, double eta) {
  const double abar = s.alpha_bar_t(t);
  const double abar_prev = s.alpha_bar_t(t_prev);
  const double var =
      eta * eta * (1.0 - abar_prev) / (1.0 - abar) * (1.0 - abar / abar_prev);
  return std::sqrt(std::max(0.0, var));
}

Field ddim_step(const Field& x_t, const Field& eps_pred, int t, int t_prev, double eta,
                const Field& noise, const NoiseSchedule& s) {
  check_same_shape(x_t, eps_pred, "ddim_step");
  if (t_prev >= t) throw std::invalid_argument("ddim_step: t_prev must be < t");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("ddim_step: eta outside [0,1]");
  const double abar = s.alpha_bar_t(t);
  const double abar_prev = s.alpha_bar_t(t_prev);
  const double sigma = ddim_sigma(s, t, t_prev, eta);
  const double dir_sq = 1.0 - abar_prev - sigma * sigma;
  if (dir_sq < -1e-15)
    throw std::invalid_argument("ddim_step: invalid eta/step combination");
  const double dir = std::sqrt(std::max(0.0, dir_sq));
  const double sqrt_abar = std::sqrt(abar);
  const double sqrt_abar_prev = std::sqrt(abar_prev);
  const double sqrt_one_minus = std::sqrt(1.0 - abar);

  Field out = x_t;
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    const double x0_hat = (x_t.v[i] - sqrt_one_minus * eps_pred.v[i]) / sqrt_abar;
    out.v[i] = sqrt_abar_prev * x0_hat + dir * eps_pred.v[i];
  }
  if (sigma > 0.0) {
    check_same_shape(x_t, noise, "ddim_step");
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += sigma * noise.v[i];
  }
  return out;
}

Field guided_eps(const Field& eps_cond, const Field& eps_uncond, double w) {
  check_same_shape(eps_cond, eps_uncond, "guided_eps");
  if (w < 0.0) throw std::invalid_argument("guided_eps: w must be >= 0");
  Field out = eps_cond;
  for (std::size_t i = 0; i < out.v.size(); ++i)
    out.v[i] = (1.0 + w) * eps_cond.v[i] - w * eps_uncond.v[i];
  return out;
}

Field slerp(const Field& z0, const Field& z1, double alpha) {
  check_same_shape(z0, z1, "slerp");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("slerp: alpha outside [0,1]");
  const double n0 = norm(z0);
  const double n1 = norm(z1);
  if (n0 == 0.0 || n1 == 0.0) throw std::invalid_argument("slerp: zero-norm input");
  double c = dot(z0, z1) / (n0 * n1);
  c = std::clamp(c, -1.0, 1.0);
  Field out = z0;
  if (std::abs(c) > 1.0 - 1e-7) {
    // sin(theta) -> 0 is singular; the limit is linear interpolation
    for (std::size_t i = 0; i < out.v.size(); ++i)
      out.v[i] = (1.0 - alpha) * z0.v[i] + alpha * z1.v[i];
    return out;
  }
  const double theta = std::acos(c);
  const double s = std::sin(theta);
  const double w0 = std::sin((1.0 - alpha) * theta) / s;
  const double w1 = std::sin(alpha * theta) / s;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = w0 * z0.v[i] + w1 * z1.v[i];
  return out;
}

Field gaussian_field(int dims, const std::array<int, 3>& shape, Rng& rng) {
  Field f(dims, shape);
  for (auto& x : f.v) x = rng.normal();
  return f;
}

Field sample_loop(const NoisePredictor& model, const SamplerConfig& cfg,
                  std::optional<int> cond, const std::array<int, 3>& shape,
                  const NoiseSchedule& s) {
  validate_sampler_config(cfg, s.T);
  const auto& seq = cfg.step_sequence;
  const bool full = static_cast<int>(seq.size()) == s.T;
  const bool use_ddpm = full && cfg.eta == 1.0;
  const bool guided = cond.has_value() && cfg.guidance_weight > 0.0;

  Rng rng(cfg.seed);
  Field x = gaussian_field(model.dims(), shape, rng);

  for (int k = static_cast<int>(seq.size()) - 1; k >= 0; --k) {
    const int t = seq[k];
    const int t_prev = k > 0 ? seq[k - 1] : 0;
    Field eps = model.predict(x, t, cond);
    if (guided) {
      Field eps_uncond = model.predict(x, t, std::nullopt);
      eps = guided_eps(eps, eps_uncond, cfg.guidance_weight);
    }
    if (use_ddpm) {
      Field noise;
      if (t > 1) noise = gaussian_field(x.dims, x.shape, rng);
      x = ddpm_step(x, eps, t, noise, s);
    } else {
      Field noise;
      if (cfg.eta > 0.0 && ddim_sigma(s, t, t_prev, cfg.eta) > 0.0)
        noise = gaussian_field(x.dims, x.shape, rng);
      x = ddim_step(x, eps, t, t_prev, cfg.eta, noise, s);
    }
  }
  for (auto& val : x.v) val = std::clamp(val, -1.0, 1.0);
  return x;
}

}  // namespace microdiff
