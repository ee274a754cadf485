#pragma once

// Property checks over generated graphs. Each check compares
// production results against the brute-force oracle and counts failures,
// keeping the first counterexample as a loadable graph document.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mgraph/graph.hpp"
#include "mgraph/random.hpp"

namespace mgraph::suite {

struct Instance {
  MeasureGraph graph;
  TerminalPair terminals;
};

/// n vertices, masses uniform in [0.1, 10], terminals 0 and n-1. A random
/// spanning tree plus independent extra edges; with probability
/// `disconnected_probability` the tree is skipped.
Instance RandomInstance(Rng& rng, std::size_t n,
                        double disconnected_probability = 0.1);

/// Calls `visit` on every connected labeled graph with exactly n vertices
/// (all edge subsets of K_n), masses drawn from `rng`, terminals 0 and n-1.
void ForEachConnectedGraph(std::size_t n, Rng& rng,
                           const std::function<void(const Instance&)>& visit);

/// Random subset with each vertex kept with probability 1/2.
VertexSet RandomSet(Rng& rng, std::size_t n);

struct Counterexample {
  std::string check;
  Instance instance;
  std::string detail;
};

struct Tally {
  explicit Tally(std::string name) : name(std::move(name)) {}

  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  /// Largest observed error for checks with a numeric tolerance.
  double max_error = 0.0;
  std::optional<Counterexample> first;

  void Record(bool ok, const Instance& inst, const std::string& detail);
  bool ok() const { return failures == 0; }
};

/// |a - b| <= tol * max(|a|, |b|), exact when both are zero.
bool RelativeClose(double a, double b, double tol);
double RelativeError(double a, double b);

// Single-instance checks. Each returns an empty string on success and a
// description of the mismatch otherwise.

/// Min vertex cut value equals the brute infimum of disc-SR (and the brute
/// minimum separating mass) to `tol` relative.
std::string CheckCutEqualsMinSr(const Instance& inst, double tol,
                                double* error = nullptr);
/// Levels of the fibration of `set` are separating, have width 1 (brute
/// width), are disjoint, and the chosen level has mass <= mu(A)/width(A).
std::string CheckFibration(const Instance& inst, const VertexSet& set);
/// The four slim conditions agree with each other and with IsSlim.
std::string CheckSlimEquivalence(const Instance& inst, const VertexSet& set);
/// Fibrating the brute SR optimum and slimifying the chosen level yields a
/// slim set of mass equal to the cut value.
std::string CheckSlimOptimum(const Instance& inst, double tol,
                             double* error = nullptr);
/// Mod_1 from the modulus solver and from the oracle both equal the cut.
std::string CheckModulusOneDuality(const Instance& inst, double tol,
                                   double* error = nullptr);
/// Mod_p from the cutting-plane solver matches the brute modulus.
std::string CheckModulus(const Instance& inst, double p, double tol,
                         double* error = nullptr);
/// Flow pencil crossing sum_c alpha(c) #(c ∩ A) <= mu(A)/F for `sets` random
/// sets plus the min cut itself. `violation` receives the largest excess.
std::string CheckPencil(const Instance& inst, Rng& rng, std::size_t sets,
                        double tol, double* violation = nullptr);

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t max_vertices = 7;
  /// Random instances per check.
  std::size_t instances = 200;
  /// Exhaustive catalog size bound (connected graphs with 2..n vertices);
  /// clamped to max_vertices.
  std::size_t exhaustive_vertices = 5;
};

struct VerifyReport {
  std::vector<Tally> tallies;
  std::size_t counterexamples() const;
  bool ok() const { return counterexamples() == 0; }
};

/// Runs every property check: cut/SR equality, fibration, slim
/// equivalence, slim optimum, Mod_1 duality and the pencil inequality.
VerifyReport RunVerify(const VerifyOptions& options);

nlohmann::json VerifyToJson(const VerifyOptions& options,
                            const VerifyReport& report);

nlohmann::json InstanceToJson(const Instance& inst);

}  // namespace mgraph::suite
