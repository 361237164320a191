#pragma once

// Numerical integration over the model parameter domains: 1D Gauss-Legendre,
// product rules for spheres in the standard angular chart (sin-power Jacobian
// folded into the axis weights), and deterministic pairwise-tree summation so
// reports are bit-stable run to run.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gbc {

struct QuadratureAxis {
  std::vector<double> points;
  std::vector<double> weights;
};

class QuadratureRule {
 public:
  QuadratureRule(std::vector<QuadratureAxis> axes, std::string domain, int order)
      : axes_(std::move(axes)), domain_(std::move(domain)), order_(order) {}

  int dim() const { return static_cast<int>(axes_.size()); }
  const std::string& domain() const { return domain_; }
  int order() const { return order_; }
  const std::vector<QuadratureAxis>& axes() const { return axes_; }
  const std::shared_ptr<const QuadratureRule>& coarse() const { return coarse_; }
  void set_coarse(std::shared_ptr<const QuadratureRule> c) { coarse_ = std::move(c); }

  long node_count() const {
    long n = 1;
    for (const auto& ax : axes_) n *= static_cast<long>(ax.points.size());
    return n;
  }

  /// Product of the axis weight sums = rule measure of the constant-1 integrand.
  double weight_sum() const {
    double total = 1.0;
    for (const auto& ax : axes_) {
      double s = 0.0;
      for (double w : ax.weights) s += w;
      total *= s;
    }
    return total;
  }

  /// Point and weight of the flat-index node (odometer order, last axis fastest).
  void node(long idx, std::vector<double>& x, double& w) const {
    x.resize(axes_.size());
    w = 1.0;
    for (int a = dim() - 1; a >= 0; --a) {
      long sz = static_cast<long>(axes_[a].points.size());
      long digit = idx % sz;
      idx /= sz;
      x[a] = axes_[a].points[digit];
      w *= axes_[a].weights[digit];
    }
  }

 private:
  std::vector<QuadratureAxis> axes_;
  std::string domain_;
  int order_;
  std::shared_ptr<const QuadratureRule> coarse_;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |fine - next-lower level|, 0 when unavailable
  long evaluations = 0;
};

namespace detail {

/// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
inline void legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  const double pi = 3.14159265358979323846264338327950288;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
}

/// Deterministic pairwise-tree sum of a block (recursive halving).
inline double tree_sum(const double* v, long n) {
  if (n == 0) return 0.0;
  if (n == 1) return v[0];
  long half = n / 2;
  return tree_sum(v, half) + tree_sum(v + half, n - half);
}

template <class F>
double evaluate_rule(const QuadratureRule& rule, F&& f) {
  const long n = rule.node_count();
  constexpr long kBlock = 4096;
  const long nblocks = (n + kBlock - 1) / kBlock;

  auto eval_block = [&](long b) {
    long lo = b * kBlock;
    long hi = std::min(n, lo + kBlock);
    std::vector<double> vals(static_cast<size_t>(hi - lo));
    std::vector<double> x;
    double w;
    for (long i = lo; i < hi; ++i) {
      rule.node(i, x, w);
      double fx = f(x);
      if (!std::isfinite(fx)) {
        std::ostringstream os;
        os << "integrate: non-finite integrand value at node (";
        for (size_t a = 0; a < x.size(); ++a) os << (a ? ", " : "") << x[a];
        os << ")";
        throw std::runtime_error(os.str());
      }
      vals[static_cast<size_t>(i - lo)] = w * fx;
    }
    return tree_sum(vals.data(), hi - lo);
  };

  std::vector<double> partial(static_cast<size_t>(nblocks));
  unsigned hw = std::thread::hardware_concurrency();
  if (nblocks >= 8 && hw > 1) {
    // Nodes are evaluated concurrently; the accumulation tree is fixed by the
    // block layout, so the result does not depend on scheduling.
    std::vector<std::future<void>> futs;
    std::atomic<long> next{0};
    unsigned workers = std::min<unsigned>(hw, 8);
    for (unsigned t = 0; t < workers; ++t) {
      futs.push_back(std::async(std::launch::async, [&]() {
        for (long b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1))
          partial[static_cast<size_t>(b)] = eval_block(b);
      }));
    }
    for (auto& fu : futs) fu.get();
  } else {
    for (long b = 0; b < nblocks; ++b) partial[static_cast<size_t>(b)] = eval_block(b);
  }
  return tree_sum(partial.data(), nblocks);
}

}  // namespace detail

/// n-node Gauss-Legendre rule on [a,b]; exact for polynomials of degree
/// <= 2n-1. Rules with n >= 4 carry a ceil(n/2)-node companion for the
/// error estimate.
inline QuadratureRule gauss_legendre(double a, double b, int n_nodes) {
  if (!(a < b)) throw std::domain_error("gauss_legendre: need a < b");
  if (n_nodes < 1 || n_nodes > 128)
    throw std::domain_error("gauss_legendre: node count out of [1, 128]");
  std::vector<double> x, w;
  detail::legendre_nodes(n_nodes, x, w);
  QuadratureAxis ax;
  ax.points.resize(n_nodes);
  ax.weights.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    ax.points[i] = a + (b - a) * (x[i] + 1.0) / 2.0;
    ax.weights[i] = w[i] * (b - a) / 2.0;
  }
  std::ostringstream dom;
  dom << "interval[" << a << "," << b << "]";
  QuadratureRule rule({ax}, dom.str(), n_nodes);
  if (n_nodes >= 4)
    rule.set_coarse(std::make_shared<QuadratureRule>(
        gauss_legendre(a, b, (n_nodes + 1) / 2)));
  return rule;
}

namespace detail {
inline int sphere_axis_nodes(int level) { return 8 + 4 * level; }

inline QuadratureRule sphere_rule_impl(int d, int level) {
  const double pi = 3.14159265358979323846264338327950288;
  int n_ax = sphere_axis_nodes(level);
  std::vector<QuadratureAxis> axes;
  for (int i = 1; i <= d; ++i) {
    double hi = (i == d) ? 2.0 * pi : pi;
    QuadratureRule base = gauss_legendre(0.0, hi, n_ax);
    QuadratureAxis ax = base.axes()[0];
    int sin_pow = d - i;  // Jacobian sin^(d-i)(phi_i)
    for (size_t j = 0; j < ax.points.size(); ++j)
      ax.weights[j] *= std::pow(std::sin(ax.points[j]), sin_pow);
    axes.push_back(std::move(ax));
  }
  return QuadratureRule(std::move(axes), "sphere-S" + std::to_string(d), level);
}
}  // namespace detail

/// Product rule on S^d in the standard angular chart
/// (phi_1..phi_{d-1} in [0,pi], phi_d in [0,2pi]).
inline QuadratureRule sphere_rule(int d, int level) {
  if (d < 1 || d > 5) throw std::domain_error("sphere_rule: d out of [1, 5]");
  if (level < 1) throw std::domain_error("sphere_rule: level must be >= 1");
  QuadratureRule rule = detail::sphere_rule_impl(d, level);
  if (level > 1)
    rule.set_coarse(std::make_shared<QuadratureRule>(detail::sphere_rule_impl(d, level - 1)));
  return rule;
}

/// Product of two rules (concatenated coordinates), e.g. S^p x S^q.
inline QuadratureRule product_rule(const QuadratureRule& a, const QuadratureRule& b) {
  std::vector<QuadratureAxis> axes = a.axes();
  for (const auto& ax : b.axes()) axes.push_back(ax);
  QuadratureRule rule(std::move(axes), a.domain() + "*" + b.domain(),
                      std::min(a.order(), b.order()));
  if (a.coarse() && b.coarse())
    rule.set_coarse(std::make_shared<QuadratureRule>(product_rule(*a.coarse(), *b.coarse())));
  return rule;
}

/// Weighted sum of f over the rule nodes; the error estimate compares against
/// the rule's next-lower refinement level when one is attached.
template <class F>
IntegralResult integrate(const QuadratureRule& rule, F&& f) {
  IntegralResult res;
  res.value = detail::evaluate_rule(rule, f);
  res.evaluations = rule.node_count();
  if (rule.coarse()) {
    double coarse_val = detail::evaluate_rule(*rule.coarse(), f);
    res.error_estimate = std::abs(res.value - coarse_val);
    res.evaluations += rule.coarse()->node_count();
  }
  return res;
}

}  // namespace gbc
