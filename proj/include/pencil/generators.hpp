#pragma once

#include <string>
#include <vector>

#include "pencil/space.hpp"

namespace pencil {

// Built-in benchmark spaces. Names and parameters:
//   line(k)                         k points evenly spaced on [0,1]
//   grid2d(k)                       k x k unit-weight grid on [0,1]^2
//   circle(k)                       k points on the unit circle (chordal metric)
//   dumbbell(k, neck_width, neck_points)
//                                   two k x k grids joined by a chain of
//                                   neck_points points of weight neck_width
//   theta_graph(k)                  three arcs of k points each joining two poles
Space generate(const std::string& name, const std::vector<double>& params);

} // namespace pencil
