#include "descwave/builtin.hpp"

#include "descwave/error.hpp"

namespace descwave::builtin {

namespace {

using nlohmann::json;

json real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row = json::array();
    for (double x : r) row.push_back(json::array({x, 0.0}));
    out.push_back(row);
  }
  return out;
}

json sin_component(double amplitude, int frequency) {
  return {{"amplitude", json::array({amplitude, 0.0})}, {"frequency", frequency}};
}

// Three-component singular system
//   E = [[eps, 0, delta], [0, gp, 0], [0, 0, 0]],  A = diag(0, delta, sigma)
// with eps = gp = delta = sigma = 1 and boundary scalars mu = alpha = 2,
// eta = beta = 1/2:
//   A1 = [[1, 0, b1], [0, 1, b2], [0, 0, b3]] with b = (1, 0, 0),  A2 = mu diag(1, 1, c3), c = 0,
//   B1 = I, B2 = eta I.
// eta = 1 is avoided: with alpha = 2, beta = 1 the linear grid function
// h(i) = i/N - 2 satisfies both boundary rows, so lambda_1 = 0 and rho_1 = 0.
// Then G(2, 1/2) has the single nonzero column (d, 0, 0, 0, 0, 0), d = mu b1 - c1 = 2,
// so Ker G = span(e1, e2), rank G = 1 < 3, and D = Ehat^D Ahat = diag(0, 1, 0).
// The data live in span(e1, e2). g1 must vanish: on e1 the propagators are
// the identity, so a nonzero g1 has no separated solution.
json paper_4_2() {
  json doc;
  doc["m"] = 3;
  doc["N"] = 8;
  doc["k"] = 0.0625;
  doc["T"] = 1.0;
  doc["alpha"] = 2.0;
  doc["beta"] = 0.5;
  doc["E"] = real_matrix({{1, 0, 1}, {0, 1, 0}, {0, 0, 0}});
  doc["A"] = real_matrix({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  doc["A1"] = real_matrix({{1, 0, 1}, {0, 1, 0}, {0, 0, 0}});
  doc["A2"] = real_matrix({{2, 0, 0}, {0, 2, 0}, {0, 0, 0}});
  doc["B1"] = real_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  doc["B2"] = real_matrix({{0.5, 0, 0}, {0, 0.5, 0}, {0, 0, 0.5}});
  doc["F"] = {{"generator", "sin"},
              {"components", json::array({sin_component(1.0, 1), sin_component(0.5, 2), sin_component(0.0, 1)})},
              {"complete_boundary", true}};
  doc["G"] = {{"generator", "sin"},
              {"components", json::array({sin_component(0.0, 1), sin_component(0.25, 1), sin_component(0.0, 1)})},
              {"complete_boundary", true}};
  doc["options"] = {{"gamma", "auto"}, {"halvings", 5}};
  return doc;
}

// u_tt = u_xx with u = 0 at both ends.
json scalar_wave() {
  json doc;
  doc["m"] = 1;
  doc["N"] = 8;
  doc["k"] = 0.0625;
  doc["T"] = 1.0;
  doc["alpha"] = 0.0;
  doc["beta"] = 0.0;
  doc["E"] = real_matrix({{1}});
  doc["A"] = real_matrix({{1}});
  doc["A1"] = real_matrix({{1}});
  doc["A2"] = real_matrix({{0}});
  doc["B1"] = real_matrix({{1}});
  doc["B2"] = real_matrix({{0}});
  doc["F"] = {{"generator", "sin"}, {"components", json::array({sin_component(1.0, 1)})}, {"complete_boundary", true}};
  doc["G"] = {{"generator", "zero"}};
  doc["options"] = {{"gamma", "auto"}, {"halvings", 5}};
  return doc;
}

}  // namespace

std::vector<std::string> example_names() { return {"paper-4-2", "singular-3x3", "scalar-wave"}; }

nlohmann::json example_spec(const std::string& name) {
  if (name == "paper-4-2" || name == "singular-3x3") return paper_4_2();
  if (name == "scalar-wave") return scalar_wave();
  throw Error(ErrorKind::input, "unknown example '" + name + "'");
}

}  // namespace descwave::builtin
