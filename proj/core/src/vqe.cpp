// Copyright 2026 The qphonon developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qphonon/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "qphonon/rng.hpp"

namespace qphonon {

namespace {

constexpr double kBoxLo = -2.0 * M_PI;
constexpr double kBoxHi = 2.0 * M_PI;

struct Recorder {
  const Objective& objective;
  int evals = 0;
  std::vector<HistoryPoint> history;
  std::vector<double> best_x;
  double best_f = std::numeric_limits<double>::infinity();

  explicit Recorder(const Objective& f) : objective(f) {}

  double operator()(std::span<const double> x) {
    ++evals;
    const double v = objective(x, evals);
    if (!std::isfinite(v))
      throw std::runtime_error("optimizer diverged: non-finite objective at evaluation " +
                               std::to_string(evals));
    history.push_back({evals, v});
    if (v < best_f) {
      best_f = v;
      best_x.assign(x.begin(), x.end());
    }
    return v;
  }
};

double spread(const std::vector<std::vector<double>>& simplex) {
  double m = 0.0;
  for (std::size_t i = 1; i < simplex.size(); ++i)
    for (std::size_t d = 0; d < simplex[0].size(); ++d)
      m = std::max(m, std::abs(simplex[i][d] - simplex[0][d]));
  return m;
}

void nelder_mead(Recorder& f, std::vector<double> x0, const OptimizerSpec& spec) {
  const std::size_t n = x0.size();
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  double init_step = 0.35;

  std::vector<std::vector<double>> xs;
  std::vector<double> fs;
  auto seed_simplex = [&](const std::vector<double> center, double step) {
    xs.clear();
    fs.clear();
    xs.push_back(center);
    fs.push_back(f(center));
    for (std::size_t i = 0; i < n; ++i) {
      auto xi = center;
      xi[i] += step;
      xs.push_back(xi);
      fs.push_back(f(xi));
    }
  };
  seed_simplex(x0, init_step);

  for (int iter = 0; iter < spec.max_iterations; ++iter) {
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::vector<std::vector<double>> sx;
    std::vector<double> sf;
    for (auto i : order) {
      sx.push_back(xs[i]);
      sf.push_back(fs[i]);
    }
    xs = std::move(sx);
    fs = std::move(sf);

    if (fs.back() - fs.front() < spec.ftol && spread(xs) < spec.ptol) {
      // Restart around the incumbent with a tighter simplex while budget
      // remains; plain Nelder-Mead stalls early in higher dimensions.
      init_step *= 0.3;
      if (init_step < 1e-8) break;
      seed_simplex(xs.front(), init_step);
      continue;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < n; ++d) centroid[d] += xs[i][d] / double(n);

    auto blend = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d) x[d] = centroid[d] + t * (centroid[d] - xs.back()[d]);
      return x;
    };

    const auto xr = blend(alpha);
    const double fr = f(xr);
    if (fr < fs.front()) {
      const auto xe = blend(gamma);
      const double fe = f(xe);
      if (fe < fr) {
        xs.back() = xe;
        fs.back() = fe;
      } else {
        xs.back() = xr;
        fs.back() = fr;
      }
      continue;
    }
    if (fr < fs[n - 1]) {
      xs.back() = xr;
      fs.back() = fr;
      continue;
    }
    const auto xc = blend(-rho);
    const double fc = f(xc);
    if (fc < fs.back()) {
      xs.back() = xc;
      fs.back() = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t d = 0; d < n; ++d) xs[i][d] = xs[0][d] + sigma * (xs[i][d] - xs[0][d]);
      fs[i] = f(xs[i]);
    }
  }
}

struct Brent1d {
  double xmin = 0.0;
  double fmin = 0.0;
};

template <typename F>
Brent1d brent_minimize(F&& g, double ax, double bx, double cx, double fb, double tol, int max_iter) {
  // Classic derivative-free Brent on a bracketing triple (ax < bx < cx with
  // g(bx) below both ends).
  const double golden = 0.3819660112501051;
  double a = std::min(ax, cx), b = std::max(ax, cx);
  double x = bx, w = bx, v = bx;
  double fx = fb, fw = fb, fv = fb;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = tol * std::abs(x) + 1e-12;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool parabolic = false;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (!(std::abs(p) >= std::abs(0.5 * q * etemp) || p <= q * (a - x) || p >= q * (b - x))) {
        parabolic = true;
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm - x >= 0 ? tol1 : -tol1);
      }
    }
    if (!parabolic) {
      e = (x >= xm ? a - x : b - x);
      d = golden * e;
    }
    const double u = (std::abs(d) >= tol1 ? x + d : x + (d >= 0 ? tol1 : -tol1));
    const double fu = g(u);
    if (fu <= fx) {
      if (u >= x)
        a = x;
      else
        b = x;
      v = w; w = x; x = u;
      fv = fw; fw = fx; fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        b = u;
      if (fu <= fw || w == x) {
        v = w; w = u; fv = fw; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx};
}

template <typename F>
Brent1d line_minimize(F&& g, double f0) {
  // Bracket downhill from t=0, then polish with Brent.
  double a = 0.0, fa = f0;
  double step = 0.4;
  double b = step;
  double fb = g(b);
  if (fb > fa) {
    step = -step;
    b = step;
    fb = g(b);
    if (fb > fa) {
      // Minimum bracketed between the two probes.
      return brent_minimize(g, -0.4, 0.0, 0.4, fa, 1e-10, 60);
    }
  }
  double c = b + step * 1.8;
  double fc = g(c);
  int guard = 0;
  while (fc < fb && ++guard < 40) {
    a = b; fa = fb;
    b = c; fb = fc;
    step *= 1.8;
    c = b + step;
    fc = g(c);
  }
  (void)fa;
  return brent_minimize(g, a, b, c, fb, 1e-10, 60);
}

void powell(Recorder& f, std::vector<double> x, const OptimizerSpec& spec) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> dirs(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) dirs[i][i] = 1.0;

  double fx = f(x);
  for (int iter = 0; iter < spec.max_iterations; ++iter) {
    const double f_start = fx;
    const std::vector<double> x_start = x;
    double largest_drop = 0.0;
    std::size_t largest_dir = 0;

    for (std::size_t d = 0; d < n; ++d) {
      auto g = [&](double t) {
        std::vector<double> xt(n);
        for (std::size_t k = 0; k < n; ++k) xt[k] = x[k] + t * dirs[d][k];
        return f(xt);
      };
      const Brent1d r = line_minimize(g, fx);
      if (fx - r.fmin > largest_drop) {
        largest_drop = fx - r.fmin;
        largest_dir = d;
      }
      for (std::size_t k = 0; k < n; ++k) x[k] += r.xmin * dirs[d][k];
      fx = r.fmin;
    }

    if (f_start - fx < spec.ftol) break;

    // Replace the direction of largest decrease with the overall move when
    // the extrapolated point keeps descending (Powell's update rule).
    std::vector<double> overall(n);
    std::vector<double> extrap(n);
    for (std::size_t k = 0; k < n; ++k) {
      overall[k] = x[k] - x_start[k];
      extrap[k] = 2.0 * x[k] - x_start[k];
    }
    const double fe = f(extrap);
    if (fe < f_start) {
      const double t = 2.0 * (f_start - 2.0 * fx + fe) * std::pow(f_start - fx - largest_drop, 2) -
                       largest_drop * std::pow(f_start - fe, 2);
      if (t < 0.0) {
        double norm = 0.0;
        for (double v : overall) norm += v * v;
        if (norm > 1e-24) {
          dirs[largest_dir] = overall;
          auto g = [&](double t1) {
            std::vector<double> xt(n);
            for (std::size_t k = 0; k < n; ++k) xt[k] = x[k] + t1 * overall[k];
            return f(xt);
          };
          const Brent1d r = line_minimize(g, fx);
          for (std::size_t k = 0; k < n; ++k) x[k] += r.xmin * overall[k];
          fx = r.fmin;
        }
      }
    }
  }
}

void spsa(Recorder& f, std::vector<double> x, const OptimizerSpec& spec) {
  const std::size_t n = x.size();
  Rng rng(spec.seed);
  const double a0 = 0.2;
  const double c0 = 0.15;
  const double big_a = 0.1 * double(spec.max_iterations);
  const double alpha = 0.602;
  const double gamma = 0.101;

  for (int k = 0; k < spec.max_iterations; ++k) {
    const double ak = a0 / std::pow(double(k) + 1.0 + big_a, alpha);
    const double ck = c0 / std::pow(double(k) + 1.0, gamma);
    std::vector<double> delta(n);
    for (auto& d : delta) d = rng.uniform() < 0.5 ? -1.0 : 1.0;
    std::vector<double> xp(n), xm(n);
    for (std::size_t i = 0; i < n; ++i) {
      xp[i] = x[i] + ck * delta[i];
      xm[i] = x[i] - ck * delta[i];
    }
    const double fp = f(xp);
    const double fm = f(xm);
    const double diff = (fp - fm) / (2.0 * ck);
    for (std::size_t i = 0; i < n; ++i) x[i] -= ak * diff / delta[i];
  }
  f(x);  // record the final iterate
}

std::vector<double> fd_gradient(Recorder& f, const std::vector<double>& x, double step) {
  const std::size_t n = x.size();
  std::vector<double> g(n);
  std::vector<double> xt = x;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    xt[i] = xi + step;
    const double fp = f(xt);
    xt[i] = xi - step;
    const double fm = f(xt);
    xt[i] = xi;
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

void clamp_box(std::vector<double>& x) {
  for (auto& v : x) v = std::clamp(v, kBoxLo, kBoxHi);
}

void lbfgs_fd(Recorder& f, std::vector<double> x, const OptimizerSpec& spec) {
  const std::size_t n = x.size();
  const std::size_t memory = 8;
  std::deque<std::vector<double>> s_list, y_list;
  std::deque<double> rho_list;

  clamp_box(x);
  double fx = f(x);
  std::vector<double> g = fd_gradient(f, x, spec.fd_step);
  int stall = 0;

  for (int iter = 0; iter < spec.max_iterations; ++iter) {
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, std::abs(v));
    if (gmax < 1e-9) break;

    // Two-loop recursion.
    std::vector<double> q = g;
    std::vector<double> alphas(s_list.size());
    for (std::size_t i = s_list.size(); i-- > 0;) {
      double sq = 0.0;
      for (std::size_t d = 0; d < n; ++d) sq += s_list[i][d] * q[d];
      alphas[i] = rho_list[i] * sq;
      for (std::size_t d = 0; d < n; ++d) q[d] -= alphas[i] * y_list[i][d];
    }
    double scale = 1.0;
    if (!s_list.empty()) {
      double sy = 0.0, yy = 0.0;
      for (std::size_t d = 0; d < n; ++d) {
        sy += s_list.back()[d] * y_list.back()[d];
        yy += y_list.back()[d] * y_list.back()[d];
      }
      if (yy > 0.0) scale = sy / yy;
    }
    for (auto& v : q) v *= scale;
    for (std::size_t i = 0; i < s_list.size(); ++i) {
      double yq = 0.0;
      for (std::size_t d = 0; d < n; ++d) yq += y_list[i][d] * q[d];
      const double beta = rho_list[i] * yq;
      for (std::size_t d = 0; d < n; ++d) q[d] += (alphas[i] - beta) * s_list[i][d];
    }
    std::vector<double> dir(n);
    for (std::size_t d = 0; d < n; ++d) dir[d] = -q[d];

    double dg = 0.0;
    for (std::size_t d = 0; d < n; ++d) dg += dir[d] * g[d];
    if (dg > -1e-14) {
      for (std::size_t d = 0; d < n; ++d) dir[d] = -g[d];
      dg = 0.0;
      for (std::size_t d = 0; d < n; ++d) dg += dir[d] * g[d];
      s_list.clear();
      y_list.clear();
      rho_list.clear();
    }

    // Backtracking Armijo search with box clamping.
    double t = 1.0;
    std::vector<double> xn(n);
    double fn = fx;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      for (std::size_t d = 0; d < n; ++d) xn[d] = x[d] + t * dir[d];
      clamp_box(xn);
      fn = f(xn);
      if (fn <= fx + 1e-4 * t * dg) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    std::vector<double> gn = fd_gradient(f, xn, spec.fd_step);
    std::vector<double> s(n), y(n);
    double sy = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      s[d] = xn[d] - x[d];
      y[d] = gn[d] - g[d];
      sy += s[d] * y[d];
    }
    if (sy > 1e-12) {
      s_list.push_back(std::move(s));
      y_list.push_back(std::move(y));
      rho_list.push_back(1.0 / sy);
      if (s_list.size() > memory) {
        s_list.pop_front();
        y_list.pop_front();
        rho_list.pop_front();
      }
    }

    const double drop = fx - fn;
    x = std::move(xn);
    fx = fn;
    g = std::move(gn);
    if (drop < spec.ftol) {
      if (++stall >= 2) break;
    } else {
      stall = 0;
    }
  }
}

void cobyla_style(Recorder& f, std::vector<double> x0, const OptimizerSpec& spec) {
  const std::size_t n = x0.size();
  double rho0 = 0.5;
  double rho = rho0;

  std::vector<std::vector<double>> xs;
  std::vector<double> fs;
  // center taken by value: callers pass elements of xs, which gets cleared.
  auto seed_simplex = [&](const std::vector<double> center, double scale) {
    xs.clear();
    fs.clear();
    xs.push_back(center);
    fs.push_back(f(center));
    for (std::size_t i = 0; i < n; ++i) {
      auto xi = center;
      xi[i] += scale;
      xs.push_back(xi);
      fs.push_back(f(xi));
    }
  };
  seed_simplex(x0, rho);

  for (int iter = 0; iter < spec.max_iterations; ++iter) {
    if (rho < spec.ptol) {
      // Fresh trust region around the incumbent while budget remains.
      std::size_t best = 0;
      for (std::size_t i = 1; i < xs.size(); ++i)
        if (fs[i] < fs[best]) best = i;
      rho = 0.1 * rho0;
      rho0 *= 0.5;
      if (rho0 < 1e-6) break;
      seed_simplex(xs[best], rho);
      continue;
    }
    std::size_t best = 0, worst = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (fs[i] < fs[best]) best = i;
      if (fs[i] > fs[worst]) worst = i;
    }

    // Linear interpolation model around the best point.
    std::vector<double> amat(n * n);
    std::vector<double> rhs(n);
    std::size_t row = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < n; ++d) amat[row * n + d] = xs[i][d] - xs[best][d];
      rhs[row] = fs[i] - fs[best];
      ++row;
    }
    std::vector<double> grad;
    try {
      grad = solve_linear_real(std::move(amat), std::move(rhs));
    } catch (const std::runtime_error&) {
      seed_simplex(xs[best], rho);
      continue;
    }
    double gnorm = 0.0;
    for (double v : grad) gnorm += v * v;
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-14) {
      rho *= 0.5;
      seed_simplex(xs[best], rho);
      continue;
    }

    std::vector<double> cand(n);
    for (std::size_t d = 0; d < n; ++d) cand[d] = xs[best][d] - rho * grad[d] / gnorm;
    const double fc = f(cand);

    if (fc < fs[best] - 1e-15) {
      xs[worst] = cand;
      fs[worst] = fc;
      rho = std::min(rho * 1.4, 4.0 * rho0);
    } else {
      if (fc < fs[worst]) {
        xs[worst] = cand;
        fs[worst] = fc;
      }
      rho *= 0.5;
      // Keep the interpolation set at the trust-region scale.
      if (spread(xs) > 4.0 * rho) seed_simplex(xs[best], rho);
    }
  }
}

}  // namespace

const char* optimizer_name(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::NelderMead: return "nelder-mead";
    case OptimizerKind::Powell: return "powell";
    case OptimizerKind::Spsa: return "spsa";
    case OptimizerKind::LbfgsFd: return "lbfgs";
    case OptimizerKind::CobylaStyle: return "cobyla";
  }
  throw std::invalid_argument("optimizer_name: bad kind");
}

OptimizerKind optimizer_from_name(const std::string& name) {
  if (name == "nelder-mead") return OptimizerKind::NelderMead;
  if (name == "powell") return OptimizerKind::Powell;
  if (name == "spsa") return OptimizerKind::Spsa;
  if (name == "lbfgs") return OptimizerKind::LbfgsFd;
  if (name == "cobyla") return OptimizerKind::CobylaStyle;
  throw std::invalid_argument("optimizer_from_name: unknown optimizer '" + name + "'");
}

void OptimizerSpec::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("OptimizerSpec: max_iterations must be positive");
  if (ftol <= 0.0 || ptol <= 0.0) throw std::invalid_argument("OptimizerSpec: tolerances must be positive");
  if (fd_step <= 0.0) throw std::invalid_argument("OptimizerSpec: fd_step must be positive");
  if (patience < 1) throw std::invalid_argument("OptimizerSpec: patience must be positive");
}

double vqe_energy(std::span<const double> params, const Circuit& ansatz,
                  const PauliSum& observable, EstimatorMode mode, const NoiseModel* noise,
                  int shots, std::uint64_t seed) {
  const Circuit bound = bind_parameters(ansatz, params);
  if (mode == EstimatorMode::ExactExpectation) {
    if (noise) return expectation(run_density(bound, *noise), observable);
    return expectation(run_statevector(bound), observable);
  }
  if (noise) {
    const DensityMatrix dm = run_density(bound, *noise);
    return sampled_expectation(observable, dm, shots, noise, seed);
  }
  const StateVector sv = run_statevector(bound);
  return sampled_expectation(observable, sv, shots, nullptr, seed);
}

double vqe_energy(std::span<const double> params, const Circuit& ansatz,
                  const MappedHamiltonian& h, EstimatorMode mode, const NoiseModel* noise,
                  int shots, std::uint64_t seed) {
  return vqe_energy(params, ansatz, h.pauli, mode, noise, shots, seed);
}

VqeRun minimize_objective(const Objective& objective, int n_params, const OptimizerSpec& spec,
                          std::span<const double> initial) {
  spec.validate();
  if (static_cast<int>(initial.size()) != n_params)
    throw std::invalid_argument("minimize_objective: initial point has wrong dimension");

  Recorder rec(objective);
  std::vector<double> x0(initial.begin(), initial.end());
  switch (spec.kind) {
    case OptimizerKind::NelderMead: nelder_mead(rec, std::move(x0), spec); break;
    case OptimizerKind::Powell: powell(rec, std::move(x0), spec); break;
    case OptimizerKind::Spsa: spsa(rec, std::move(x0), spec); break;
    case OptimizerKind::LbfgsFd: lbfgs_fd(rec, std::move(x0), spec); break;
    case OptimizerKind::CobylaStyle: cobyla_style(rec, std::move(x0), spec); break;
  }

  VqeRun run;
  run.best_parameters = rec.best_x;
  run.best_energy = rec.best_f;
  run.history = std::move(rec.history);
  run.evaluations = rec.evals;

  if (static_cast<int>(run.history.size()) > spec.patience) {
    double before = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + static_cast<std::size_t>(spec.patience) < run.history.size(); ++i)
      before = std::min(before, run.history[i].energy);
    run.converged = (before - run.best_energy) < spec.ftol;
  }
  return run;
}

VqeRun minimize(const Circuit& ansatz, const PauliSum& observable, const OptimizerSpec& spec,
                EstimatorMode mode, const NoiseModel* noise, int shots,
                std::optional<std::vector<double>> initial) {
  std::vector<double> x0 =
      initial ? std::move(*initial) : random_parameters(ansatz.n_parameters, spec.seed);
  const Objective objective = [&](std::span<const double> x, int evaluation) {
    return vqe_energy(x, ansatz, observable, mode, noise, shots,
                      derive_seed(spec.seed, std::uint64_t(evaluation)));
  };
  VqeRun run = minimize_objective(objective, ansatz.n_parameters, spec, x0);
  run.mode = mode;
  return run;
}

VqeRun minimize(const Circuit& ansatz, const MappedHamiltonian& h, const OptimizerSpec& spec,
                EstimatorMode mode, const NoiseModel* noise, int shots,
                std::optional<std::vector<double>> initial) {
  return minimize(ansatz, h.pauli, spec, mode, noise, shots, std::move(initial));
}

ConvergenceReport convergence_report(const VqeRun& run, double reference) {
  if (run.history.empty()) throw std::invalid_argument("convergence_report: empty history");
  ConvergenceReport report;
  report.envelope.reserve(run.history.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& point : run.history) {
    best = std::min(best, point.energy);
    report.envelope.push_back(best);
    const double gap = std::abs(best - reference);
    if (report.evaluations_to_1e3 < 0 && gap < 1e-3) report.evaluations_to_1e3 = point.evaluation;
    if (report.evaluations_to_1e6 < 0 && gap < 1e-6) report.evaluations_to_1e6 = point.evaluation;
  }
  report.final_gap = std::abs(best - reference);
  return report;
}

}  // namespace qphonon
