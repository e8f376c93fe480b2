#pragma once

#include <functional>
#include <vector>

namespace xxrelay {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]; nodes found by Newton iteration on the
// three-term Legendre recurrence
QuadratureRule gauss_legendre(int n);

// affine image of a rule on [a, b]
QuadratureRule map_to(const QuadratureRule& rule, double a, double b);

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

}  // namespace xxrelay
