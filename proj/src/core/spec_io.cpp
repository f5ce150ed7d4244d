#include "spec_io.hpp"

#include <cmath>

#include "complex_geom.hpp"
#include "errors.hpp"

namespace slicing {

namespace {

Eigen::MatrixXd matrix_of(const Json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) throw InputError(std::string(what) + ": expected a non-empty array of rows");
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (!rows[i].is_array() || static_cast<Eigen::Index>(rows[i].size()) != c) {
      throw InputError(std::string(what) + ": row " + std::to_string(i) + " has the wrong length");
    }
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

std::vector<double> vector_of(const Json& v, const char* what) {
  if (!v.is_array() || v.empty()) throw InputError(std::string(what) + ": expected a non-empty array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.get<double>());
  return out;
}

int require_dim(const Json& doc, std::optional<int> dim, const char* kind) {
  if (doc.contains("dim")) return doc["dim"].get<int>();
  if (dim) return *dim;
  throw InputError(std::string(kind) + ": missing \"dim\"");
}

// {x : sum_i d_i x_i^2 <= 1} with d = 1, 2, 3, 1, 2, 3, ...
Json grid_ellipsoid(int n) {
  Json diag = Json::array();
  for (int i = 0; i < n; ++i) diag.push_back(1 + i % 3);
  return Json{{"kind", "ellipsoid"}, {"diag", diag}};
}

Json shorthand_body(const std::string& name) {
  auto lp = [](double p) { return Json{{"kind", "lp-ball"}, {"p", p}}; };
  auto clp = [](double p) { return Json{{"kind", "complex-lp-ball"}, {"p", p}}; };
  if (name == "ball" || name == "euclidean-ball") return Json{{"kind", "ball"}};
  if (name == "cube") return Json{{"kind", "cube"}};
  if (name == "ellipsoid") return Json{{"kind", "ellipsoid"}, {"grid", true}};
  if (name == "l1-ball") return lp(1.0);
  if (name == "l4-ball") return lp(4.0);
  if (name == "complex-l1-ball") return clp(1.0);
  if (name == "complex-l2-ball") return clp(2.0);
  if (name == "complex-l4-ball") return clp(4.0);
  if (name == "rtheta-ellipsoid") return Json{{"kind", "rtheta-symmetrized"}, {"body", "ellipsoid"}};
  for (const char* prefix : {"lp-ball:", "complex-lp-ball:"}) {
    const std::string pre(prefix);
    if (name.rfind(pre, 0) == 0) {
      try {
        const double p = std::stod(name.substr(pre.size()));
        return pre == "lp-ball:" ? lp(p) : clp(p);
      } catch (const std::exception&) {
        throw InputError("bad exponent in body shorthand '" + name + "'");
      }
    }
  }
  return {};
}

Json shorthand_density(const std::string& name) {
  if (name == "1" || name == "constant") return Json{{"kind", "constant"}, {"level", 1.0}};
  if (name == "gaussian" || name == "radial-gaussian") return Json{{"kind", "radial-gaussian"}, {"sigma", 1.0}};
  if (name == "1+|x|^2") return Json{{"kind", "radial-polynomial"}, {"coefficients", {1.0, 0.0, 1.0}}};
  // 1 + 0.5 exp(-|x|^2)
  if (name == "1+0.5gauss") {
    return Json{{"kind", "radial-gaussian"}, {"sigma", std::sqrt(0.5)}, {"base", 1.0}, {"amplitude", 0.5}};
  }
  return {};
}

const Json& expand(const Json& doc, Json& storage, bool body) {
  if (!doc.is_string()) return doc;
  const std::string s = doc.get<std::string>();
  storage = spec_from_string(s);
  if (storage.is_string()) throw InputError(std::string("unknown ") + (body ? "body" : "density") + " '" + s + "'");
  return storage;
}

}  // namespace

Json spec_from_string(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("malformed JSON spec: ") + e.what());
    }
  }
  Json b = shorthand_body(text);
  if (!b.is_null()) return b;
  Json d = shorthand_density(text);
  if (!d.is_null()) return d;
  return Json(text);
}

std::optional<int> fixed_dim(const Json& body_doc) {
  Json storage;
  const Json* d = &body_doc;
  if (body_doc.is_string()) {
    storage = spec_from_string(body_doc.get<std::string>());
    d = &storage;
  }
  if (!d->is_object()) return std::nullopt;
  if (d->contains("dim")) return (*d)["dim"].get<int>();
  if (d->contains("complex_dim")) return 2 * (*d)["complex_dim"].get<int>();
  if (d->contains("matrix")) return static_cast<int>((*d)["matrix"].size());
  if (d->contains("diag")) return static_cast<int>((*d)["diag"].size());
  if (d->contains("axes")) return static_cast<int>((*d)["axes"].size());
  if (d->contains("rows") && !(*d)["rows"].empty()) return static_cast<int>((*d)["rows"][0].size());
  if (d->contains("body")) return fixed_dim((*d)["body"]);
  return std::nullopt;
}

namespace {

StarBody parse_body_doc(const Json& input, std::optional<int> dim) {
  Json storage;
  const Json& doc = expand(input, storage, true);
  try {
    if (!doc.is_object() || !doc.contains("kind")) throw InputError("body spec needs a \"kind\"");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "ball" || kind == "euclidean-ball") return StarBody::euclidean_ball(require_dim(doc, dim, "ball"));
    if (kind == "cube") return StarBody::cube(require_dim(doc, dim, "cube"));
    if (kind == "lp-ball") return StarBody::lp_ball(require_dim(doc, dim, "lp-ball"), doc.at("p").get<double>());
    if (kind == "ellipsoid") {
      if (doc.contains("matrix")) return StarBody::ellipsoid(matrix_of(doc["matrix"], "ellipsoid.matrix"));
      if (doc.contains("diag")) {
        const auto d = vector_of(doc["diag"], "ellipsoid.diag");
        return StarBody::ellipsoid(Eigen::Map<const Eigen::VectorXd>(d.data(), d.size()).asDiagonal());
      }
      if (doc.value("grid", false)) return parse_body(grid_ellipsoid(require_dim(doc, dim, "ellipsoid")));
      if (!doc.contains("axes")) throw InputError("ellipsoid: needs \"matrix\", \"diag\" or \"axes\"");
      const auto a = vector_of(doc["axes"], "ellipsoid.axes");
      Eigen::VectorXd d(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) d[static_cast<Eigen::Index>(i)] = 1.0 / (a[i] * a[i]);
      return StarBody::ellipsoid(d.asDiagonal());
    }
    if (kind == "slab-polytope") return StarBody::slab_polytope(matrix_of(doc.at("rows"), "slab-polytope.rows"));
    if (kind == "complex-lp-ball") {
      int n = 0;
      if (doc.contains("complex_dim")) {
        n = doc["complex_dim"].get<int>();
      } else {
        const int real = require_dim(doc, dim, "complex-lp-ball");
        if (real % 2 != 0) throw DimensionError("complex-lp-ball: real dimension must be even");
        n = real / 2;
      }
      return StarBody::complex_lp_ball(n, doc.at("p").get<double>());
    }
    if (kind == "rtheta-symmetrized") {
      const StarBody inner = parse_body(doc.at("body"), dim);
      if (doc.contains("theta_nodes")) return StarBody::rtheta_symmetrized(inner, doc["theta_nodes"].get<int>());
      return rtheta_symmetrize(inner);
    }
    if (kind == "scaled") return StarBody::scaled(parse_body(doc.at("body"), dim), doc.at("scale").get<double>());
    throw InputError("unknown body kind '" + kind + "'");
  } catch (const Json::exception& e) {
    throw InputError(std::string("body spec: ") + e.what());
  }
}

}  // namespace

StarBody parse_body(const Json& input, std::optional<int> dim) {
  StarBody body = parse_body_doc(input, dim);
  if (dim && body.dim() != *dim) {
    throw InputError("body " + body.label() + " has dimension " + std::to_string(body.dim()) + ", expected " +
                     std::to_string(*dim));
  }
  return body;
}

Density parse_density(const Json& input, std::optional<int> dim) {
  Json storage;
  const Json& doc = expand(input, storage, false);
  try {
    if (!doc.is_object() || !doc.contains("kind")) throw InputError("density spec needs a \"kind\"");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "constant") return Density::constant(doc.value("level", 1.0));
    if (kind == "radial-gaussian") {
      return Density::radial_gaussian(doc.at("sigma").get<double>(), doc.value("base", 0.0),
                                      doc.value("amplitude", 1.0));
    }
    if (kind == "radial-polynomial") {
      return Density::radial_polynomial(vector_of(doc.at("coefficients"), "radial-polynomial.coefficients"));
    }
    if (kind == "shifted-indicator-sum") {
      std::vector<DensityComponent> parts;
      for (const auto& c : doc.at("components")) {
        parts.push_back(DensityComponent{parse_body(c.at("body"), dim), c.value("weight", 1.0),
                                         c.contains("density") ? parse_density(c["density"], dim)
                                                               : Density::constant(1.0)});
      }
      return Density::indicator_sum(std::move(parts));
    }
    throw InputError("unknown density kind '" + kind + "'");
  } catch (const Json::exception& e) {
    throw InputError(std::string("density spec: ") + e.what());
  }
}

}  // namespace slicing
