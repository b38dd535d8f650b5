#include "bvp/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bvp {

Grid Grid::over(double eta, double T, int n_total) {
  if (!(eta > 0.0 && eta < T))
    throw std::invalid_argument("Grid::over: need 0 < eta < T");
  if (n_total < 4 || n_total % 2 != 0)
    throw std::invalid_argument("Grid::over: total subintervals must be even and >= 4, got " +
                                std::to_string(n_total));
  int n1 = 2 * static_cast<int>(std::lround(n_total * (eta / T) / 2.0));
  n1 = std::clamp(n1, 2, n_total - 2);
  Grid g;
  g.head = UniformGrid{0.0, eta, n1};
  g.tail = UniformGrid{eta, T, n_total - n1};
  return g;
}

bool Grid::matches(const Grid& other) const {
  return head.n == other.head.n && tail.n == other.tail.n &&
         head.t_end == other.head.t_end && tail.t_end == other.tail.t_end;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  grid_.head.require_valid();
  grid_.tail.require_valid();
  if (values_.size() != static_cast<std::size_t>(grid_.node_count()))
    throw std::invalid_argument("GridFunction: expected " +
                                std::to_string(grid_.node_count()) + " values, got " +
                                std::to_string(values_.size()));
}

GridFunction GridFunction::constant(const Grid& g, double c) {
  return GridFunction(g, std::vector<double>(static_cast<std::size_t>(g.node_count()), c));
}

GridFunction GridFunction::sample(const Grid& g, const std::function<double(double)>& f) {
  std::vector<double> v(static_cast<std::size_t>(g.node_count()));
  for (int i = 0; i < g.node_count(); ++i) v[static_cast<std::size_t>(i)] = f(g.node(i));
  return GridFunction(g, std::move(v));
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

double GridFunction::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double GridFunction::min_on_tail() const {
  double m = values_[static_cast<std::size_t>(grid_.eta_index())];
  for (int i = grid_.eta_index(); i < grid_.node_count(); ++i)
    m = std::min(m, values_[static_cast<std::size_t>(i)]);
  return m;
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

double GridFunction::at(double t) const {
  t = std::clamp(t, 0.0, grid_.t_end());
  const UniformGrid& seg = t <= grid_.eta() ? grid_.head : grid_.tail;
  int base = t <= grid_.eta() ? 0 : grid_.eta_index();
  double local = (t - seg.t_start) / seg.h();
  int k = std::clamp(static_cast<int>(local), 0, seg.n - 1);
  double w = local - k;
  double a = values_[static_cast<std::size_t>(base + k)];
  double b = values_[static_cast<std::size_t>(base + k + 1)];
  return a + w * (b - a);
}

double integrate_head(const GridFunction& f) {
  return simpson(f.values().subspan(0, static_cast<std::size_t>(f.grid().head.n) + 1),
                 f.grid().head);
}

double integrate_tail(const GridFunction& f) {
  return simpson(f.values().subspan(static_cast<std::size_t>(f.grid().eta_index())),
                 f.grid().tail);
}

double integrate(const GridFunction& f) { return integrate_head(f) + integrate_tail(f); }

std::vector<double> cumulative_integral(const GridFunction& f) {
  auto head = cumulative_integral(
      f.values().subspan(0, static_cast<std::size_t>(f.grid().head.n) + 1),
      f.grid().head.h());
  auto tail = cumulative_integral(
      f.values().subspan(static_cast<std::size_t>(f.grid().eta_index())),
      f.grid().tail.h());
  std::vector<double> out(static_cast<std::size_t>(f.grid().node_count()));
  std::copy(head.begin(), head.end(), out.begin());
  double offset = head.back();
  for (std::size_t j = 1; j < tail.size(); ++j)
    out[static_cast<std::size_t>(f.grid().eta_index()) + j] = offset + tail[j];
  return out;
}

}  // namespace bvp
