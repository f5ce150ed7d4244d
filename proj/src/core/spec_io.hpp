#pragma once

#include <optional>
#include <string>

#include "geometry.hpp"
#include "json.hpp"

namespace slicing {

using Json = nlohmann::json;

// Body documents:
//   {"kind":"ball","dim":n}                      (alias "euclidean-ball")
//   {"kind":"ellipsoid","matrix":[[..],..]}       or "diag":[..] (matrix diagonal)
//                                                or "axes":[..] (semi-axes)
//   {"kind":"lp-ball","p":p,"dim":n}
//   {"kind":"cube","dim":n}
//   {"kind":"slab-polytope","rows":[[..],..]}
//   {"kind":"complex-lp-ball","p":p,"complex_dim":n}
//   {"kind":"rtheta-symmetrized","body":{..},"theta_nodes":64}
//   {"kind":"scaled","body":{..},"scale":s}
// A missing "dim" (or "complex_dim" = dim/2) is taken from `dim`. Shorthand
// strings are accepted: ball, cube, ellipsoid, l1-ball, l4-ball, lp-ball:P,
// complex-l1-ball, complex-l2-ball, complex-l4-ball, complex-lp-ball:P,
// rtheta-ellipsoid; a string starting with '{' is parsed as JSON.
StarBody parse_body(const Json& doc, std::optional<int> dim = std::nullopt);

// Density documents:
//   {"kind":"constant","level":c}
//   {"kind":"radial-gaussian","sigma":s,"base":b,"amplitude":a}
//   {"kind":"radial-polynomial","coefficients":[c0,c1,..]}
//   {"kind":"shifted-indicator-sum","components":[{"body":..,"weight":w,"density":..},..]}
// Shorthand: 1 | constant, gaussian, 1+|x|^2, 1+0.5gauss.
Density parse_density(const Json& doc, std::optional<int> dim = std::nullopt);

// Accepts a shorthand name or an inline JSON document.
Json spec_from_string(const std::string& text);

// Fixed dimension demanded by a body document, if any (ignores dim-less docs).
std::optional<int> fixed_dim(const Json& body_doc);

}  // namespace slicing
