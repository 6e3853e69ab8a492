#pragma once

#include <functional>

namespace resilience {

struct QuadratureOptions {
  double abs_tol = 1e-8;
  int max_depth = 20;
};

// Adaptive panel quadrature on [ax,bx] x [ay,by]: a 3x3 Gauss-Legendre rule
// against its four-subpanel refinement, subdividing until each panel meets
// its area-proportional share of abs_tol. Throws NumericsError once a panel
// still misses its budget at max_depth.
double integrate_2d(const std::function<double(double, double)>& f, double ax,
                    double bx, double ay, double by,
                    const QuadratureOptions& opt = {});

}  // namespace resilience
