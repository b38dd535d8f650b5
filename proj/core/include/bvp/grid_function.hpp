#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bvp/quadrature.hpp"

namespace bvp {

// Two uniform segments [0, eta] and [eta, T] sharing the breakpoint, so eta
// always sits exactly on a node and both segments keep even subinterval
// counts for Simpson weights. The per-segment spacings are equal when
// eta/T allows it and nearly equal otherwise.
struct Grid {
  UniformGrid head;  // [0, eta]
  UniformGrid tail;  // [eta, T]

  // Splits n_total (even, >= 4) between the segments proportionally to eta/T.
  static Grid over(double eta, double T, int n_total);

  int node_count() const { return head.n + tail.n + 1; }
  int eta_index() const { return head.n; }
  double eta() const { return head.t_end; }
  double t_end() const { return tail.t_end; }
  double node(int i) const {
    return i <= head.n ? head.node(i) : tail.node(i - head.n);
  }
  bool matches(const Grid& other) const;
};

// Samples of a function on a Grid, with linear interpolation between nodes.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction constant(const Grid& g, double c);
  static GridFunction sample(const Grid& g, const std::function<double(double)>& f);

  const Grid& grid() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  double sup_norm() const;
  double min_value() const;
  // Minimum over the nodes of [eta, T].
  double min_on_tail() const;
  bool all_finite() const;
  // Piecewise-linear evaluation; t clamped to [0, T].
  double at(double t) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Simpson integral over the full interval [0, T].
double integrate(const GridFunction& f);
// Simpson integral over [0, eta] only.
double integrate_head(const GridFunction& f);
// Simpson integral over [eta, T] only.
double integrate_tail(const GridFunction& f);
// Fourth-order running integral at every node, segment spacings chained.
std::vector<double> cumulative_integral(const GridFunction& f);

}  // namespace bvp
