#include <cmath>
#include <stdexcept>
#include <string>

#include "nch/fem.hpp"

namespace nch {

namespace {

void add_orbit3(QuadRule& q, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  q.points.push_back({a, a, b});
  q.points.push_back({a, b, a});
  q.points.push_back({b, a, a});
  for (int k = 0; k < 3; ++k) q.weights.push_back(w);
}

void add_orbit6(QuadRule& q, double a, double b, double w) {
  const double c = 1.0 - a - b;
  q.points.push_back({a, b, c});
  q.points.push_back({a, c, b});
  q.points.push_back({b, a, c});
  q.points.push_back({b, c, a});
  q.points.push_back({c, a, b});
  q.points.push_back({c, b, a});
  for (int k = 0; k < 6; ++k) q.weights.push_back(w);
}

}  // namespace

QuadRule reference_quadrature(int min_degree) {
  QuadRule q;
  switch (min_degree) {
    case 1:
      q.degree = 1;
      q.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
      q.weights.push_back(1.0);
      break;
    case 2:
      q.degree = 2;
      add_orbit3(q, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 3:
    case 4:
      // Dunavant, 6 points.
      q.degree = 4;
      add_orbit3(q, 0.44594849091596488632, 0.22338158967801146570);
      add_orbit3(q, 0.09157621350977074346, 0.10995174365532186764);
      break;
    case 5: {
      // Radon, 7 points.
      q.degree = 5;
      const double s15 = std::sqrt(15.0);
      q.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
      q.weights.push_back(9.0 / 40.0);
      add_orbit3(q, (6.0 - s15) / 21.0, (155.0 - s15) / 1200.0);
      add_orbit3(q, (6.0 + s15) / 21.0, (155.0 + s15) / 1200.0);
      break;
    }
    case 6:
      // Dunavant, 12 points.
      q.degree = 6;
      add_orbit3(q, 0.24928674517091042129, 0.11678627572637936603);
      add_orbit3(q, 0.06308901449150222834, 0.050844906370206816921);
      add_orbit6(q, 0.053145049844816947353, 0.31035245103378440542, 0.082851075618373575194);
      break;
    default:
      throw std::invalid_argument("unsupported quadrature degree " + std::to_string(min_degree) +
                                  " (expected 1..6)");
  }
  return q;
}

}  // namespace nch
