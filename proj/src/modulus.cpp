#include "mgraph/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <string>

#include "mgraph/error.hpp"
#include "mgraph/random.hpp"

namespace mgraph {

RhoPath ShortestRhoPath(const MeasureGraph& g, const TerminalPair& t,
                        const Density& rho) {
  g.CheckTerminals(t);
  const std::size_t n = g.vertex_count();
  if (rho.rho.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "density size mismatch");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<Vertex> parent(n, n);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[t.source] = rho.rho[t.source];
  heap.push({dist[t.source], t.source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u == t.sink) break;
    for (Vertex z : g.neighbors(u)) {
      if (done[z]) continue;
      const double candidate = d + rho.rho[z];
      if (candidate < dist[z] || (candidate == dist[z] && u < parent[z])) {
        dist[z] = candidate;
        parent[z] = u;
        heap.push({candidate, z});
      }
    }
  }
  if (!done[t.sink]) {
    throw Error(ErrorCode::kNoPath, "no path joins '" + g.label(t.source) +
                                        "' and '" + g.label(t.sink) + "'");
  }
  RhoPath out;
  out.length = dist[t.sink];
  for (Vertex z = t.sink; z != n; z = parent[z]) {
    out.path.vertices.push_back(z);
    if (z == t.source) break;
  }
  std::reverse(out.path.vertices.begin(), out.path.vertices.end());
  return out;
}

namespace {

// Dual of the modulus problem restricted to a finite set of paths:
//   maximize  sum_c lambda_c - (1 - 1/p) sum_z s_z rho_z(s_z),  lambda >= 0,
// with s_z = sum_{c ∋ z} lambda_c and rho_z(s) = (s / (p mu_z))^(1/(p-1)).
class RestrictedDual {
 public:
  RestrictedDual(const MeasureGraph& g, double p)
      : g_(g), p_(p), exponent_(1.0 / (p - 1.0)), load_(g.vertex_count(), 0.0) {}

  bool Contains(const std::vector<Vertex>& path) const {
    return std::find(paths_.begin(), paths_.end(), Distinct(path)) !=
           paths_.end();
  }

  void Add(const std::vector<Vertex>& path) {
    paths_.push_back(Distinct(path));
    ordered_.push_back(path);
    lambda_.push_back(0.0);
  }

  double Rho(Vertex z) const { return RhoAt(z, load_[z]); }

  std::vector<double> Density() const {
    std::vector<double> rho(g_.vertex_count());
    for (Vertex z = 0; z < rho.size(); ++z) rho[z] = Rho(z);
    return rho;
  }

  double Length(std::size_t c) const {
    double total = 0.0;
    for (Vertex z : paths_[c]) total += Rho(z);
    return total;
  }

  double DualValue() const {
    double total = 0.0;
    for (double l : lambda_) total += l;
    double penalty = 0.0;
    for (Vertex z = 0; z < load_.size(); ++z) {
      if (load_[z] > 0.0) penalty += load_[z] * Rho(z);
    }
    return total - (1.0 - 1.0 / p_) * penalty;
  }

  /// Exact maximization along lambda_c: the smallest lambda_c >= 0 whose
  /// path has rho-length >= 1.
  void UpdateCoordinate(std::size_t c) {
    const auto& path = paths_[c];
    const double current = lambda_[c];
    auto length_at = [&](double x) {
      double total = 0.0;
      for (Vertex z : path) total += RhoAt(z, load_[z] - current + x);
      return total;
    };
    auto slope_at = [&](double x) {
      double total = 0.0;
      for (Vertex z : path) {
        const double s = load_[z] - current + x;
        if (s > 0.0) total += exponent_ * RhoAt(z, s) / s;
      }
      return total;
    };

    double next = 0.0;
    if (length_at(0.0) < 1.0) {
      double lo = 0.0;
      double hi = 0.0;
      for (Vertex z : path) hi = std::max(hi, p_ * g_.mu(z));
      double x = std::clamp(current, lo, hi);
      if (x <= lo) x = 0.5 * (lo + hi);
      for (int iter = 0; iter < 200; ++iter) {
        const double f = length_at(x) - 1.0;
        if (f == 0.0) break;
        if (f < 0.0) {
          lo = x;
        } else {
          hi = x;
        }
        if (hi - lo <= 1e-16 * hi) break;
        const double slope = slope_at(x);
        double newton = slope > 0.0 ? x - f / slope : lo;
        x = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
      }
      next = x;
    }
    for (Vertex z : path) load_[z] += next - current;
    lambda_[c] = next;
  }

  /// One projected Newton step on the free multipliers (those positive or
  /// with a path shorter than one), with a backtracking line search. Returns
  /// false when no ascent was found.
  bool NewtonStep() {
    const std::size_t m = paths_.size();
    std::vector<double> grad(m);
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m; ++c) {
      grad[c] = 1.0 - Length(c);
      if (lambda_[c] > 0.0 || grad[c] > 0.0) free.push_back(c);
    }
    const std::size_t k = free.size();
    if (k == 0) return false;
    std::vector<double> curvature(load_.size(), 0.0);
    for (Vertex z = 0; z < load_.size(); ++z) {
      if (load_[z] > 0.0) curvature[z] = exponent_ * Rho(z) / load_[z];
    }
    // Negated Hessian restricted to the free set, then Cholesky.
    std::vector<double> h(k * k, 0.0);
    double diagonal = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const auto& a = paths_[free[i]];
        const auto& b = paths_[free[j]];
        double total = 0.0;
        std::size_t x = 0;
        std::size_t y = 0;
        while (x < a.size() && y < b.size()) {
          if (a[x] < b[y]) {
            ++x;
          } else if (b[y] < a[x]) {
            ++y;
          } else {
            total += curvature[a[x]];
            ++x;
            ++y;
          }
        }
        h[i * k + j] = h[j * k + i] = total;
      }
      diagonal = std::max(diagonal, h[i * k + i]);
    }
    if (!(diagonal > 0.0)) return false;
    for (std::size_t i = 0; i < k; ++i) h[i * k + i] += 1e-12 * diagonal;
    for (std::size_t j = 0; j < k; ++j) {
      double d = h[j * k + j];
      for (std::size_t l = 0; l < j; ++l) d -= h[j * k + l] * h[j * k + l];
      if (!(d > 0.0)) return false;
      d = std::sqrt(d);
      h[j * k + j] = d;
      for (std::size_t i = j + 1; i < k; ++i) {
        double v = h[i * k + j];
        for (std::size_t l = 0; l < j; ++l) v -= h[i * k + l] * h[j * k + l];
        h[i * k + j] = v / d;
      }
    }
    std::vector<double> step(k);
    for (std::size_t i = 0; i < k; ++i) {
      double v = grad[free[i]];
      for (std::size_t l = 0; l < i; ++l) v -= h[i * k + l] * step[l];
      step[i] = v / h[i * k + i];
    }
    for (std::size_t i = k; i-- > 0;) {
      double v = step[i];
      for (std::size_t l = i + 1; l < k; ++l) v -= h[l * k + i] * step[l];
      step[i] = v / h[i * k + i];
    }

    const std::vector<double> start = lambda_;
    const std::vector<double> start_load = load_;
    const double before = DualValue();
    const double residual = ProjectedGradient();
    // Near the optimum the dual is flat to rounding while the lengths still
    // move, so a step that keeps the value and shrinks the residual counts.
    const double slack = 8 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(before));
    for (double t = 1.0; t > 1e-10; t *= 0.5) {
      for (std::size_t i = 0; i < k; ++i) {
        lambda_[free[i]] = std::max(0.0, start[free[i]] + t * step[i]);
      }
      std::fill(load_.begin(), load_.end(), 0.0);
      for (std::size_t c = 0; c < m; ++c) {
        if (lambda_[c] > 0.0) {
          for (Vertex z : paths_[c]) load_[z] += lambda_[c];
        }
      }
      const double after = DualValue();
      if (after > before + slack) return true;
      if (after >= before - slack && ProjectedGradient() < 0.5 * residual) {
        return true;
      }
    }
    lambda_ = start;
    load_ = start_load;
    return false;
  }

  /// Largest violation of the optimality conditions: |1 - length| on
  /// positive multipliers, the shortfall below length one elsewhere.
  double ProjectedGradient() const {
    double worst = 0.0;
    for (std::size_t c = 0; c < paths_.size(); ++c) {
      const double g = 1.0 - Length(c);
      worst = std::max(worst, lambda_[c] > 0.0 ? std::abs(g) : g);
    }
    return worst;
  }

  std::size_t size() const { return paths_.size(); }
  const std::vector<std::vector<Vertex>>& ordered_paths() const {
    return ordered_;
  }
  const std::vector<double>& lambda() const { return lambda_; }

 private:
  static std::vector<Vertex> Distinct(std::vector<Vertex> path) {
    std::sort(path.begin(), path.end());
    path.erase(std::unique(path.begin(), path.end()), path.end());
    return path;
  }

  double RhoAt(Vertex z, double s) const {
    if (s <= 0.0) return 0.0;
    return std::pow(s / (p_ * g_.mu(z)), exponent_);
  }

  const MeasureGraph& g_;
  double p_;
  double exponent_;
  std::vector<std::vector<Vertex>> paths_;
  std::vector<std::vector<Vertex>> ordered_;
  std::vector<double> lambda_;
  std::vector<double> load_;
};

std::string FormatTolerance(double tol) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%g", tol);
  return buffer;
}

double PrimalValue(const MeasureGraph& g, const std::vector<double>& rho,
                   double p) {
  double total = 0.0;
  for (Vertex z = 0; z < rho.size(); ++z) {
    if (rho[z] > 0.0) total += g.mu(z) * std::pow(rho[z], p);
  }
  return total;
}

ModulusResult ModulusOne(const MeasureGraph& g, const TerminalPair& t) {
  ModulusResult result;
  result.p = 1.0;
  CutResult cut = MinVertexCut(g, t);
  result.value = cut.value;
  result.dual_value = cut.flow_value;
  result.rho.rho.assign(g.vertex_count(), 0.0);
  for (Vertex z : cut.cut.members()) result.rho.rho[z] = 1.0;
  PathPencil pencil = PencilFromFlow(g, t);
  for (const auto& entry : pencil.paths) {
    result.active_paths.push_back(entry.path);
    result.multipliers.push_back(entry.weight * cut.flow_value);
  }
  result.gap = cut.value > 0.0
                   ? std::abs(cut.value - cut.flow_value) / cut.value
                   : 0.0;
  return result;
}

}  // namespace

ModulusResult ModulusP(const MeasureGraph& g, const TerminalPair& t, double p,
                       const ModulusOptions& options) {
  g.CheckTerminals(t);
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::kInvalidArgument,
                "modulus exponent must be >= 1, got " + std::to_string(p));
  }
  const std::size_t n = g.vertex_count();
  const std::size_t hops = HopDistance(g, t.source, t.sink);
  if (hops == std::numeric_limits<std::size_t>::max()) {
    throw Error(ErrorCode::kNoPath, "no path joins '" + g.label(t.source) +
                                        "' and '" + g.label(t.sink) + "'");
  }
  if (p == 1.0) return ModulusOne(g, t);

  const double tol = options.tol;
  const std::size_t max_rounds =
      options.max_iterations ? options.max_iterations : 10 * n * n;
  constexpr std::size_t kMaxSweeps = 200000;

  RestrictedDual dual(g, p);
  Density initial{std::vector<double>(n, 1.0 / static_cast<double>(hops + 1))};
  dual.Add(ShortestRhoPath(g, t, initial).path.vertices);

  double inner_tol = tol / 10.0;
  ModulusResult result;
  result.p = p;
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    // Solve the restricted problem to the current inner tolerance.
    double previous = -std::numeric_limits<double>::infinity();
    for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
      for (std::size_t c = 0; c < dual.size(); ++c) dual.UpdateCoordinate(c);
      const bool newton = dual.NewtonStep();
      double shortest = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < dual.size(); ++c) {
        shortest = std::min(shortest, dual.Length(c));
      }
      const double d = dual.DualValue();
      std::vector<double> rho = dual.Density();
      for (double& r : rho) r /= shortest;
      const double primal = PrimalValue(g, rho, p);
      const bool gap_ok = primal - d <= inner_tol * primal;
      const bool stalled =
          !newton && std::abs(d - previous) <= 1e-3 * inner_tol * std::abs(d);
      previous = d;
      if (gap_ok || stalled) break;
    }

    Density rho{dual.Density()};
    RhoPath violated = ShortestRhoPath(g, t, rho);
    const double length = violated.length;
    const double d = dual.DualValue();
    double primal = std::numeric_limits<double>::infinity();
    if (length > 0.0) {
      for (double& r : rho.rho) r /= length;
      primal = PrimalValue(g, rho.rho, p);
    }
    const double gap = (primal - d) / primal;
    result.iterations = round;
    if (length >= 1.0 - tol && gap <= tol) {
      result.value = primal;
      result.dual_value = d;
      result.rho = std::move(rho);
      result.gap = std::max(gap, 0.0);
      for (std::size_t c = 0; c < dual.size(); ++c) {
        result.active_paths.push_back(GraphPath{dual.ordered_paths()[c]});
        result.multipliers.push_back(dual.lambda()[c]);
      }
      return result;
    }
    if (!dual.Contains(violated.path.vertices) && length < 1.0) {
      dual.Add(violated.path.vertices);
    } else {
      inner_tol /= 10.0;
      if (inner_tol < 1e-17) break;
    }
  }
  throw Error(ErrorCode::kNonConvergence,
              "modulus solver did not reach tolerance " + FormatTolerance(tol));
}

PathPencil PencilFromDuals(const ModulusResult& result) {
  double total = 0.0;
  for (double l : result.multipliers) total += std::max(l, 0.0);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kDegenerateDuals, "all dual multipliers vanish");
  }
  PathPencil pencil;
  for (std::size_t c = 0; c < result.active_paths.size(); ++c) {
    if (result.multipliers[c] <= 0.0) continue;
    pencil.paths.push_back(
        {result.active_paths[c], result.multipliers[c] / total});
    pencil.total_weight += result.multipliers[c] / total;
  }
  // For p = 1 the flow bound applies; for p > 1 the bound is the Hölder
  // constant reported by EstimatePencilConstant.
  pencil.capacity_bound = result.p == 1.0 && result.value > 0.0
                              ? 1.0 / result.value
                              : 0.0;
  return pencil;
}

PencilConstant EstimatePencilConstant(const MeasureGraph& g,
                                      const PathPencil& pencil, double p,
                                      std::size_t samples,
                                      std::uint64_t seed) {
  const std::vector<double> load = PencilLoad(g, pencil);
  const std::size_t n = g.vertex_count();
  PencilConstant out;
  if (p == 1.0) {
    for (Vertex z = 0; z < n; ++z) {
      out.holder = std::max(out.holder, load[z] / g.mu(z));
    }
  } else {
    const double q = p / (p - 1.0);
    double sum = 0.0;
    for (Vertex z = 0; z < n; ++z) {
      if (load[z] > 0.0) sum += std::pow(load[z], q) * std::pow(g.mu(z), 1.0 - q);
    }
    out.holder = std::pow(sum, p / q);
  }

  Rng rng(seed);
  std::vector<double> sample(n);
  for (std::size_t k = 0; k < samples; ++k) {
    for (double& x : sample) x = rng.Uniform();
    double crossing = 0.0;
    double energy = 0.0;
    for (Vertex z = 0; z < n; ++z) {
      crossing += load[z] * sample[z];
      energy += std::pow(sample[z], p) * g.mu(z);
    }
    if (energy > 0.0) {
      out.empirical = std::max(out.empirical, std::pow(crossing, p) / energy);
    }
  }
  return out;
}

}  // namespace mgraph
