#include "pcmrank/solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

namespace pcmrank {

namespace {

std::vector<std::vector<std::string>> label_components(
    const IncompletePCM& pcm) {
  auto components = connected_components(graph_of(pcm));
  std::vector<std::vector<std::string>> out;
  out.reserve(components.size());
  for (const auto& component : components) {
    std::vector<std::string> group;
    group.reserve(component.size());
    for (int v : component) group.push_back(pcm.labels()[v]);
    out.push_back(std::move(group));
  }
  return out;
}

void require_connected(const IncompletePCM& pcm) {
  auto components = label_components(pcm);
  if (components.size() > 1) throw DisconnectedError(std::move(components));
}

WeightVector normalized_exp(const Eigen::VectorXd& log_weights) {
  // Shift by the max before exponentiating to stay clear of overflow.
  Eigen::VectorXd w = (log_weights.array() - log_weights.maxCoeff()).exp();
  w /= w.sum();
  return WeightVector{{w.data(), w.data() + w.size()}};
}

Eigen::MatrixXd dense_matrix(const IncompletePCM& pcm) {
  int n = pcm.size();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = pcm.at(i, j);
  return a;
}

// Dense copy with the missing cells filled with 1 (the neutral start of the
// completion search).
Eigen::MatrixXd dense_matrix_with_ones(const IncompletePCM& pcm) {
  int n = pcm.size();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = pcm.known(i, j) ? pcm.at(i, j) : 1.0;
  return a;
}

// One power-iteration run on a positive matrix. `u` is the start vector
// (sum 1, positive) and is left at the final iterate, which makes repeated
// evaluations on a slowly-changing matrix cheap. Returns lambda_max or NaN
// if max_iter was hit; *iterations gets the count used.
double power_iterate(const Eigen::MatrixXd& a, Eigen::VectorXd& u,
                     const PowerOptions& options, int* iterations) {
  Eigen::VectorXd next(u.size());
  double lambda = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= options.max_iter; ++it) {
    next.noalias() = a * u;
    lambda = next.sum();  // u sums to 1, so this is the ratio estimate
    next /= lambda;
    double diff = (next - u).cwiseAbs().maxCoeff();
    u = next;
    if (diff < options.tol) {
      *iterations = it;
      return lambda;
    }
  }
  *iterations = options.max_iter;
  return std::numeric_limits<double>::quiet_NaN();
}

// Minimizes a convex univariate function: expands a bracket around t0, then
// golden-section. Returns the minimizer; g is called with candidate points.
double minimize_convex(const std::function<double(double)>& g, double t0,
                       double f0, double step, double xtol) {
  double mid = t0, fmid = f0;
  double lo = t0 - step, hi = t0 + step;
  double flo = g(lo), fhi = g(hi);
  while (flo < fmid) {
    hi = mid;
    fhi = fmid;
    mid = lo;
    fmid = flo;
    step *= 2.0;
    lo = mid - step;
    flo = g(lo);
  }
  while (fhi < fmid) {
    lo = mid;
    flo = fmid;
    mid = hi;
    fmid = fhi;
    step *= 2.0;
    hi = mid + step;
    fhi = g(hi);
  }
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  while (hi - lo > xtol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = g(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

WeightVector llsm_weights(const IncompletePCM& pcm, int gauge) {
  int n = pcm.size();
  if (n == 0) throw Error(ErrorCode::EmptyProblem, "no players");
  if (gauge < 0 || gauge >= n) {
    throw Error(ErrorCode::ShapeError, "gauge index out of range");
  }
  if (n == 1) return WeightVector{{1.0}};
  require_connected(pcm);

  // Stationarity of the log least squares objective: L s = r on log-weights,
  // L the comparison-graph Laplacian, r_i the row sum of log entries.
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (auto [i, j] : pcm.known_pairs()) {
    double log_a = std::log(pcm.at(i, j));
    laplacian(i, i) += 1.0;
    laplacian(j, j) += 1.0;
    laplacian(i, j) -= 1.0;
    laplacian(j, i) -= 1.0;
    rhs(i) += log_a;
    rhs(j) -= log_a;
  }

  // The Laplacian has a one-dimensional null space (constant shifts); pin
  // s[gauge] = 0 and solve the reduced system, which is positive definite
  // exactly because the graph is connected.
  std::vector<int> keep;
  keep.reserve(n - 1);
  for (int i = 0; i < n; ++i)
    if (i != gauge) keep.push_back(i);
  Eigen::MatrixXd reduced(n - 1, n - 1);
  Eigen::VectorXd reduced_rhs(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    reduced_rhs(i) = rhs(keep[i]);
    for (int j = 0; j < n - 1; ++j) reduced(i, j) = laplacian(keep[i], keep[j]);
  }
  Eigen::VectorXd solution = reduced.ldlt().solve(reduced_rhs);

  Eigen::VectorXd log_weights = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n - 1; ++i) log_weights(keep[i]) = solution(i);
  return normalized_exp(log_weights);
}

double llsm_objective(const IncompletePCM& pcm,
                      std::span<const double> log_weights) {
  if (static_cast<int>(log_weights.size()) != pcm.size()) {
    throw Error(ErrorCode::ShapeError, "log-weight vector size mismatch");
  }
  double value = 0.0;
  for (auto [i, j] : pcm.known_pairs()) {
    double upper = std::log(pcm.at(i, j)) - (log_weights[i] - log_weights[j]);
    double lower = std::log(pcm.at(j, i)) - (log_weights[j] - log_weights[i]);
    value += upper * upper + lower * lower;  // ordered pairs: both directions
  }
  return value;
}

EigenResult perron_vector(const IncompletePCM& complete_pcm,
                          const PowerOptions& options) {
  int n = complete_pcm.size();
  if (n == 0) throw Error(ErrorCode::EmptyProblem, "no players");
  if (!complete_pcm.complete()) {
    throw Error(ErrorCode::ShapeError,
                "perron_vector requires a complete matrix");
  }
  Eigen::MatrixXd a = dense_matrix(complete_pcm);
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / n);
  int iterations = 0;
  double lambda = power_iterate(a, u, options, &iterations);
  if (std::isnan(lambda)) {
    throw NoConvergenceError("power iteration did not converge in " +
                                 std::to_string(options.max_iter) +
                                 " iterations",
                             (a * u).sum(), iterations);
  }
  return EigenResult{lambda, WeightVector{{u.data(), u.data() + n}},
                     iterations};
}

CompletionResult em_complete(const IncompletePCM& pcm,
                             const CompletionOptions& options) {
  int n = pcm.size();
  if (n == 0) throw Error(ErrorCode::EmptyProblem, "no players");
  require_connected(pcm);

  auto missing = pcm.missing_pairs();
  if (missing.empty()) {
    EigenResult eigen = perron_vector(pcm, options.power);
    return CompletionResult{pcm, {}, eigen.lambda_max, 0};
  }

  Eigen::MatrixXd a = dense_matrix_with_ones(pcm);
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / n);
  int power_iters = 0;
  auto lambda_of = [&] {
    double lambda = power_iterate(a, u, options.power, &power_iters);
    if (std::isnan(lambda)) {
      throw NoConvergenceError("power iteration stalled during completion",
                               (a * u).sum(), power_iters);
    }
    return lambda;
  };

  std::vector<double> t(missing.size(), 0.0);  // log of the completed entries
  double current = lambda_of();
  int cycle = 0;
  bool converged = false;
  while (cycle < options.max_cycles && !converged) {
    ++cycle;
    double at_cycle_start = current;
    for (size_t k = 0; k < missing.size(); ++k) {
      auto [i, j] = missing[k];
      auto slice = [&](double tk) {
        a(i, j) = std::exp(tk);
        a(j, i) = std::exp(-tk);
        return lambda_of();
      };
      t[k] = minimize_convex(slice, t[k], current, 1.0, 1e-9);
      current = slice(t[k]);
    }
    // lambda never increases along coordinate minimizations; stop once a
    // whole cycle buys less than the relative tolerance.
    converged = at_cycle_start - current < options.tol * at_cycle_start;
  }

  IncompletePCM completed = pcm;
  std::vector<double> variables(missing.size());
  for (size_t k = 0; k < missing.size(); ++k) {
    variables[k] = std::exp(t[k]);
    completed.set_pair(missing[k].first, missing[k].second, variables[k]);
  }
  double lambda = perron_vector(completed, options.power).lambda_max;
  if (!converged) {
    throw NoConvergenceError("lambda_max minimization did not converge in " +
                                 std::to_string(options.max_cycles) + " cycles",
                             lambda, cycle);
  }
  return CompletionResult{std::move(completed), std::move(variables), lambda,
                          cycle};
}

WeightVector em_weights(const IncompletePCM& pcm,
                        const CompletionOptions& options) {
  CompletionResult completion = em_complete(pcm, options);
  return perron_vector(completion.completed, options.power).vector;
}

double consistency_index(double lambda_max, int n) {
  if (n < 2) {
    throw Error(ErrorCode::Undefined,
                "consistency index needs at least two players");
  }
  if (lambda_max < n - 1e-9) {
    throw Error(ErrorCode::Undefined,
                "lambda_max below matrix dimension is not a principal "
                "eigenvalue of a reciprocal matrix");
  }
  return std::max(0.0, (lambda_max - n) / (n - 1));
}

}  // namespace pcmrank
