#include "kpr/pde_limits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kpr/errors.hpp"
#include "kpr/finite_model.hpp"

namespace kpr {

namespace {

constexpr double kCfl = 0.9;

std::vector<double> sine_bump(const std::vector<double>& x, double L) {
  // Smooth unit-integral initial datum vanishing at both boundaries.
  std::vector<double> f(x.size());
  const double c = M_PI / (2.0 * L);
  for (std::size_t i = 0; i < x.size(); ++i) f[i] = c * std::sin(M_PI * x[i] / L);
  return f;
}

double cell_integral(const std::vector<double>& f, double h) {
  return std::accumulate(f.begin(), f.end(), 0.0) * h;
}

double normalized_diff(const std::vector<double>& a, const std::vector<double>& b,
                       double h) {
  const double ia = cell_integral(a, h), ib = cell_integral(b, h);
  if (!(ia > 0.0) || !(ib > 0.0)) return 1.0;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[i] / ia - b[i] / ib));
  return d;
}

}  // namespace

void PdeParams::validate_pde1() const {
  if (!(alpha > 0.0) || !(L > 1.0) || grid < 16 || !(beta >= 0.0) || !(delta_loss >= 0.0))
    throw parameter_error("PdeParams: invalid scalar parameters");
  if (!(alpha * (std::exp(Delta) - std::exp(energy_E)) > 0.0))
    throw unsupported_regime_error(
        "PdeParams: PDE1 needs e^Delta > e^E (transport toward large x)");
}

void PdeParams::validate_pde2() const {
  if (!(alpha > 0.0) || !(L > 1.0) || grid < 16 || !(beta >= 0.0) || !(delta_loss >= 0.0))
    throw parameter_error("PdeParams: invalid scalar parameters");
  if (!(alpha * std::expm1(Delta) > 0.0))
    throw unsupported_regime_error("PdeParams: PDE2 needs e^Delta > 1");
}

PdeField solve_pde1(const PdeParams& p, double t_final) {
  p.validate_pde1();
  const double c = p.alpha * (std::exp(p.Delta) - std::exp(p.energy_E));
  const int M = p.grid;
  const double h = p.L / M;
  const double dt = kCfl * h / c;
  const double loss = p.beta + p.delta_loss;

  PdeField out;
  out.x.resize(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) out.x[static_cast<std::size_t>(i)] = (i + 0.5) * h;
  out.f = sine_bump(out.x, p.L);

  double mass_in = 0.0, mass_out = 0.0;
  const double mass0 = cell_integral(out.f, h);

  auto step = [&](std::vector<double>& f) {
    const double integral = cell_integral(f, h);
    const double f_in = p.beta > 0.0 ? p.beta / c * integral : 0.0;
    std::vector<double> g(f.size());
    for (int i = 0; i < M; ++i) {
      const double up = i == 0 ? f_in : f[static_cast<std::size_t>(i - 1)];
      g[static_cast<std::size_t>(i)] =
          f[static_cast<std::size_t>(i)] +
          dt / h * c * (up - f[static_cast<std::size_t>(i)]) -
          dt * loss * f[static_cast<std::size_t>(i)];
    }
    mass_in += dt * c * f_in;
    mass_out += dt * c * f[static_cast<std::size_t>(M - 1)];
    f.swap(g);
  };

  double t = 0.0;
  if (t_final > 0.0) {
    while (t < t_final - 1e-15) {
      step(out.f);
      t += dt;
    }
  } else {
    // Run one transit at a time until the shape stops changing.
    const double chunk = p.L / c;
    std::vector<double> prev = out.f;
    for (int it = 0; it < 400; ++it) {
      const double t_stop = t + chunk;
      while (t < t_stop) {
        step(out.f);
        t += dt;
      }
      if (it > 0 && normalized_diff(out.f, prev, h) < 1e-6) break;
      prev = out.f;
    }
  }
  out.tau_final = t;
  out.mass0 = mass0;
  out.mass_in = mass_in;
  out.mass_out = mass_out;
  out.mass_final = cell_integral(out.f, h);
  // Normalize per unit integral so fits are amplitude-free.
  const double integral = cell_integral(out.f, h);
  if (integral > 0.0 && t_final <= 0.0)
    for (double& v : out.f) v /= integral;
  return out;
}

PdeField solve_pde2(const PdeParams& p, double t_final) {
  p.validate_pde2();
  const double c = p.alpha * std::expm1(p.Delta);
  const int M = p.grid;
  const double h = p.L / M;
  const double dt = kCfl * h / c;
  const double loss = p.beta + p.delta_loss;
  const double msc = p.beta / (1.0 - std::exp(-p.L));

  PdeField out;
  out.x.resize(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) out.x[static_cast<std::size_t>(i)] = (i + 0.5) * h;
  out.f = sine_bump(out.x, p.L);

  std::vector<double> src(out.x.size());
  for (std::size_t i = 0; i < out.x.size(); ++i) src[i] = std::exp(-out.x[i]);

  auto step = [&](std::vector<double>& f) {
    const double m = msc * cell_integral(f, h);
    std::vector<double> g(f.size());
    for (int i = 0; i < M; ++i) {
      const double up = i == 0 ? 0.0 : f[static_cast<std::size_t>(i - 1)];
      g[static_cast<std::size_t>(i)] =
          f[static_cast<std::size_t>(i)] +
          dt / h * c * (up - f[static_cast<std::size_t>(i)]) -
          dt * loss * f[static_cast<std::size_t>(i)] +
          dt * src[static_cast<std::size_t>(i)] * m;
    }
    f.swap(g);
  };

  double t = 0.0;
  if (t_final > 0.0) {
    while (t < t_final - 1e-15) {
      step(out.f);
      t += dt;
    }
  } else {
    const double chunk = p.L / c;
    std::vector<double> prev = out.f;
    for (int it = 0; it < 800; ++it) {
      const double t_stop = t + chunk;
      while (t < t_stop) {
        step(out.f);
        t += dt;
      }
      if (it > 0 && normalized_diff(out.f, prev, h) < 1e-8) break;
      prev = out.f;
    }
  }
  out.tau_final = t;
  out.m = msc * cell_integral(out.f, h);
  return out;
}

ExponentFit fit_exponent(const PdeField& field, double frac_lo, double frac_hi) {
  const double L = field.x.empty() ? 0.0 : field.x.back() + (field.x[0]);
  ExponentFit fit;
  fit.x_lo = frac_lo * L;
  fit.x_hi = frac_hi * L;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < field.x.size(); ++i) {
    if (field.x[i] < fit.x_lo || field.x[i] > fit.x_hi) continue;
    if (!(field.f[i] > 0.0)) continue;
    const double y = std::log(field.f[i]);
    xs.push_back(field.x[i]);
    ys.push_back(y);
    sx += field.x[i];
    sy += y;
    sxx += field.x[i] * field.x[i];
    sxy += field.x[i] * y;
    ++n;
  }
  if (n < 4) throw degenerate_parameter_error("fit_exponent: too few usable cells");
  const double det = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - fit.slope * sx) / n;
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[static_cast<std::size_t>(i)] -
                     (intercept + fit.slope * xs[static_cast<std::size_t>(i)]);
    rss += r * r;
  }
  const double sigma2 = rss / std::max(1, n - 2);
  fit.stderr_ = std::sqrt(sigma2 * n / det);
  return fit;
}

std::vector<PdeDiscreteGap> compare_pde_vs_discrete(const PdeParams& p, int which_pde,
                                                    double tau,
                                                    const std::vector<int>& N_list) {
  if (which_pde != 1 && which_pde != 2)
    throw parameter_error("compare_pde_vs_discrete: which_pde must be 1 or 2");
  if (which_pde == 1) {
    p.validate_pde1();
    if (!(p.Delta > p.energy_E))
      throw unsupported_regime_error(
          "compare_pde_vs_discrete: transport toward small k dominates (E > Delta)");
  } else {
    p.validate_pde2();
  }
  for (std::size_t i = 1; i < N_list.size(); ++i)
    if (N_list[i] <= N_list[i - 1])
      throw parameter_error("compare_pde_vs_discrete: N_list must be increasing");

  const PdeField ref = which_pde == 1 ? solve_pde1(p, tau) : solve_pde2(p, tau);
  const double h = p.L / p.grid;

  std::vector<PdeDiscreteGap> gaps;
  for (int N : N_list) {
    ModelParams q;
    q.N = static_cast<int>(std::ceil(p.L * N));
    q.alpha = p.alpha;
    q.delta = p.Delta;
    q.sigma = std::log(p.beta / N);
    q.energy_E = which_pde == 1 ? p.energy_E : 1.0 / N;
    q.mu_explicit = std::max(p.delta_loss / N, 1e-14);

    StateVector init;
    init.nS = 0.0;
    init.n.assign(static_cast<std::size_t>(q.N) + 1, 0.0);
    const double cnorm = M_PI / (2.0 * p.L);
    for (int k = 0; k <= q.N; ++k) {
      const double x = static_cast<double>(k) / N;
      if (x < p.L)
        init.n[static_cast<std::size_t>(k)] = cnorm * std::sin(M_PI * x / p.L) / N;
    }
    const std::vector<StateVector> traj =
        integrate_trajectory(q, {static_cast<double>(N) * tau}, init);
    const StateVector& st = traj.back();

    double gap = 0.0;
    for (std::size_t i = 0; i < ref.x.size(); ++i) {
      const double x = ref.x[i];
      if (x < 0.05 * p.L || x > 0.95 * p.L) continue;  // interior window
      const int k = static_cast<int>(std::floor(N * x));
      if (k > q.N) continue;
      const double discrete = N * st.n[static_cast<std::size_t>(k)];
      gap = std::max(gap, std::abs(discrete - ref.f[i]));
    }
    gaps.push_back({N, gap});
  }
  (void)h;
  return gaps;
}

}  // namespace kpr
