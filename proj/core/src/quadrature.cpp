#include "resilience/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "resilience/errors.hpp"

namespace resilience {

namespace {

// 3-point Gauss-Legendre on [-1, 1]
constexpr double kNode = 0.774596669241483377;  // sqrt(3/5)
constexpr double kW1 = 5.0 / 9.0;
constexpr double kW0 = 8.0 / 9.0;

double gauss3x3(const std::function<double(double, double)>& f, double ax,
                double bx, double ay, double by) {
  const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
  const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
  const double nx[3] = {cx - hx * kNode, cx, cx + hx * kNode};
  const double ny[3] = {cy - hy * kNode, cy, cy + hy * kNode};
  const double w[3] = {kW1, kW0, kW1};
  double acc = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += w[i] * w[j] * f(nx[i], ny[j]);
  return acc * hx * hy;
}

struct Panel {
  double ax, bx, ay, by, tol;
  int depth;
};

}  // namespace

double integrate_2d(const std::function<double(double, double)>& f, double ax,
                    double bx, double ay, double by,
                    const QuadratureOptions& opt) {
  if (!(opt.abs_tol > 0.0))
    throw std::invalid_argument("integrate_2d: abs_tol must be positive");
  if (bx == ax || by == ay) return 0.0;
  if (!(bx > ax) || !(by > ay))
    throw std::invalid_argument("integrate_2d: empty integration domain");

  double total = 0.0;
  std::vector<Panel> stack{{ax, bx, ay, by, opt.abs_tol, 0}};
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double coarse = gauss3x3(f, p.ax, p.bx, p.ay, p.by);
    const double mx = 0.5 * (p.ax + p.bx);
    const double my = 0.5 * (p.ay + p.by);
    const double fine = gauss3x3(f, p.ax, mx, p.ay, my) +
                        gauss3x3(f, mx, p.bx, p.ay, my) +
                        gauss3x3(f, p.ax, mx, my, p.by) +
                        gauss3x3(f, mx, p.bx, my, p.by);
    if (!std::isfinite(fine) || !std::isfinite(coarse))
      throw NumericsError("integrate_2d: non-finite integrand");
    if (std::abs(fine - coarse) <= p.tol) {
      total += fine;
      continue;
    }
    if (p.depth >= opt.max_depth)
      throw NumericsError(
          "integrate_2d: refinement budget exhausted before reaching the "
          "requested tolerance");
    const double child_tol = 0.25 * p.tol;
    stack.push_back({p.ax, mx, p.ay, my, child_tol, p.depth + 1});
    stack.push_back({mx, p.bx, p.ay, my, child_tol, p.depth + 1});
    stack.push_back({p.ax, mx, my, p.by, child_tol, p.depth + 1});
    stack.push_back({mx, p.bx, my, p.by, child_tol, p.depth + 1});
  }
  return total;
}

}  // namespace resilience
