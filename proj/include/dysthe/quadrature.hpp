#ifndef DYSTHE_QUADRATURE_HPP
#define DYSTHE_QUADRATURE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dysthe {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// K-point Gauss-Legendre rule by Newton iteration on the three-term recurrence.
inline GaussRule gauss_legendre(int K) {
  if (K < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  GaussRule rule;
  rule.nodes.resize(K);
  rule.weights.resize(K);
  for (int i = 0; i < (K + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (K + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= K; ++k) {
        const double pk = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = K * (x * p1 - p0) / (x * x - 1);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Re-evaluate the derivative at the converged node for the weight.
    double p0 = 1, p1 = x;
    for (int k = 2; k <= K; ++k) {
      const double pk = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = K * (x * p1 - p0) / (x * x - 1);
    const double w = 2.0 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[K - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[K - 1 - i] = w;
  }
  if (K % 2 == 1) rule.nodes[K / 2] = 0;
  return rule;
}

}  // namespace dysthe

#endif  // DYSTHE_QUADRATURE_HPP
