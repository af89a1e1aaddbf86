#pragma once

#include <span>
#include <vector>

#include "pcmrank/matrix.hpp"

namespace pcmrank {

/// Positive weights over players, normalized to sum 1.
struct WeightVector {
  std::vector<double> weights;
};

struct PowerOptions {
  double tol = 1e-12;    // max-norm change between normalized iterates
  int max_iter = 100000;
};

struct CompletionOptions {
  double tol = 1e-10;     // relative lambda_max improvement per full cycle
  int max_cycles = 10000;
  PowerOptions power{};
};

struct EigenResult {
  double lambda_max = 0.0;
  WeightVector vector;
  int iterations = 0;
};

struct CompletionResult {
  IncompletePCM completed;
  std::vector<double> variables;  // one per originally-missing upper cell
  double lambda_max = 0.0;
  int iterations = 0;             // coordinate-descent cycles used
};

/// Logarithmic least squares weights for an incomplete matrix.
///
/// Minimizes sum over known ordered pairs of [log a(i,j) - log(w_i/w_j)]^2
/// subject to positive weights summing to 1. In log-weights s the
/// stationarity conditions are L s = r with L the graph Laplacian of the
/// comparison graph and r_i the sum of log a(i,j) over neighbours; the
/// gauge s[gauge] = 0 pins the one-dimensional null space and the reduced
/// system is solved directly. Unique exactly when the graph is connected.
WeightVector llsm_weights(const IncompletePCM& pcm, int gauge = 0);

/// Objective of the log least squares problem at log-weights s, summed over
/// ordered known pairs. Exposed so tests can probe stationarity.
double llsm_objective(const IncompletePCM& pcm, std::span<const double> log_weights);

/// Principal eigenpair of a complete positive reciprocal matrix by power
/// iteration from a uniform start. The returned vector is the Perron vector
/// normalized to sum 1; lambda_max is its ratio estimate.
EigenResult perron_vector(const IncompletePCM& complete_pcm,
                          const PowerOptions& options = {});

/// Completes the missing entries to minimize lambda_max.
///
/// Each missing upper-triangle entry is parametrized as exp(t_k), which
/// makes lambda_max(A(exp t)) convex in t; cyclic coordinate descent with a
/// bracketing golden-section line search drives it to the unique minimum.
/// A complete input is returned unchanged. Requires a connected graph.
CompletionResult em_complete(const IncompletePCM& pcm,
                             const CompletionOptions& options = {});

/// Eigenvector-method weights: complete the matrix (em_complete), then take
/// the Perron vector of the completion.
WeightVector em_weights(const IncompletePCM& pcm,
                        const CompletionOptions& options = {});

/// Consistency index (lambda_max - n) / (n - 1), clamped below at zero.
double consistency_index(double lambda_max, int n);

}  // namespace pcmrank
