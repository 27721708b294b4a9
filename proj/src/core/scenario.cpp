#include "core/scenario.hpp"

#include <cmath>

#include <json.hpp>

namespace eplab {

using nlohmann::json;

double Grid::point(int k) const {
  if (count <= 1)
    return start;
  const double span = stop - start;
  return start + (static_cast<double>(k) * span) / static_cast<double>(count - 1);
}

double Grid::step() const {
  if (count <= 1)
    return 0.0;
  return (stop - start) / static_cast<double>(count - 1);
}

System Scenario::system_at(double a) const {
  return {e1.at(a), e2.at(a), g1, g2, omega.at(a)};
}

double Scenario::delta_real_at(double a) const {
  const double dc0 = e1.c0 - e2.c0;
  const double dc1 = e1.c1 - e2.c1;
  return dc0 + dc1 * a;
}

cplx Scenario::delta_at(double a) const {
  return {delta_real_at(a), 0.5 * (g1 - g2)};
}

void Scenario::validate() const {
  const bool finite =
      std::isfinite(e1.c0) && std::isfinite(e1.c1) && std::isfinite(e2.c0) &&
      std::isfinite(e2.c1) && std::isfinite(g1) && std::isfinite(g2) &&
      std::isfinite(omega.c0.real()) && std::isfinite(omega.c0.imag()) &&
      std::isfinite(omega.c1.real()) && std::isfinite(omega.c1.imag()) &&
      std::isfinite(grid.start) && std::isfinite(grid.stop);
  if (!finite)
    throw Error(Errc::invalid_argument, "scenario fields must be finite");
  if (grid.count < 2)
    throw Error(Errc::invalid_argument, "a_grid.count must be at least 2");
  if (!(grid.stop > grid.start))
    throw Error(Errc::invalid_argument,
                "a_grid must be strictly increasing (stop > start)");
  if (channels < 1)
    throw Error(Errc::invalid_argument, "channels must be positive");
}

Scenario preset(const std::string &name) {
  Scenario sc;
  sc.name = name;
  if (name == "fig1_left" || name == "fig1_right") {
    sc.e1 = {1.0, -0.5};
    sc.e2 = {0.0, 1.0};
    sc.g1 = -0.1; // half widths -0.05 and 0.06
    sc.g2 = 0.12;
    if (name == "fig1_left") {
      sc.omega.c0 = cplx(0.055, 0.0);
    } else {
      const double w = 0.0789 / std::sqrt(2.0);
      sc.omega.c0 = cplx(w, w);
    }
    // the source material leaves this range open; [0, 1] brackets the level
    // crossing at a = 2/3 and puts it exactly on the default grid
    sc.grid = {0.0, 1.0, 601};
  } else if (name == "fig2_left") {
    sc.e1 = {2.0 / 3.0, 0.0};
    sc.e2 = {2.0 / 3.0, 0.0};
    sc.g1 = -0.1;
    sc.g2 = 0.1;
    sc.omega.c1 = cplx(1.0, 0.0); // omega = a
    sc.grid = {0.0, 0.1, 601};
  } else if (name == "fig2_right") {
    sc.e1 = {2.0 / 3.0, 0.0};
    sc.e2 = {-2.0 / 3.0, 0.0};
    sc.g1 = -0.1;
    sc.g2 = 0.1;
    sc.omega.c1 = cplx(0.0, 1.0); // omega = i*a
    sc.grid = {0.0, 0.12, 601};
  } else {
    throw Error(Errc::unknown_preset, "unknown preset: " + name);
  }
  return sc;
}

namespace {

double num_at(const json &j, const char *key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw Error(Errc::parse, std::string("expected number field '") + key +
                                 "'");
  return j.at(key).get<double>();
}

AffineReal affine_real_at(const json &j, const char *key) {
  if (!j.contains(key) || !j.at(key).is_object())
    throw Error(Errc::parse, std::string("expected object field '") + key +
                                 "' with c0, c1");
  const json &e = j.at(key);
  return {num_at(e, "c0"), num_at(e, "c1")};
}

cplx cplx_member(const json &e, const char *key) {
  if (!e.contains(key))
    throw Error(Errc::parse, std::string("missing coefficient '") + key + "'");
  const json &c = e.at(key);
  if (c.is_number())
    return {c.get<double>(), 0.0};
  if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number())
    return {c[0].get<double>(), c[1].get<double>()};
  throw Error(Errc::parse, std::string("coefficient '") + key +
                               "' must be a number or [re, im]");
}

} // namespace

Scenario parse_scenario(const std::string &json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception &e) {
    throw Error(Errc::parse, std::string("config is not valid JSON: ") +
                                 e.what());
  }
  if (!j.is_object())
    throw Error(Errc::parse, "config root must be a JSON object");
  // a run manifest embeds the config it was produced from
  if (j.contains("command") && j.contains("config"))
    j = j.at("config");

  Scenario sc;
  if (j.contains("name")) {
    if (!j.at("name").is_string())
      throw Error(Errc::parse, "'name' must be a string");
    sc.name = j.at("name").get<std::string>();
  }
  sc.e1 = affine_real_at(j, "e1_expr");
  sc.e2 = affine_real_at(j, "e2_expr");
  sc.g1 = num_at(j, "g1");
  sc.g2 = num_at(j, "g2");
  if (!j.contains("omega_expr") || !j.at("omega_expr").is_object())
    throw Error(Errc::parse, "expected object field 'omega_expr' with c0, c1");
  sc.omega.c0 = cplx_member(j.at("omega_expr"), "c0");
  sc.omega.c1 = cplx_member(j.at("omega_expr"), "c1");
  if (!j.contains("a_grid") || !j.at("a_grid").is_object())
    throw Error(Errc::parse,
                "expected object field 'a_grid' with start, stop, count");
  const json &g = j.at("a_grid");
  sc.grid.start = num_at(g, "start");
  sc.grid.stop = num_at(g, "stop");
  if (!g.contains("count") || !g.at("count").is_number_integer())
    throw Error(Errc::parse, "a_grid.count must be an integer");
  sc.grid.count = g.at("count").get<int>();
  if (j.contains("channels")) {
    if (!j.at("channels").is_number_integer())
      throw Error(Errc::parse, "'channels' must be an integer");
    sc.channels = j.at("channels").get<int>();
  }
  sc.validate();
  return sc;
}

std::string scenario_to_json(const Scenario &sc) {
  json j;
  j["name"] = sc.name;
  j["e1_expr"] = {{"c0", sc.e1.c0}, {"c1", sc.e1.c1}};
  j["e2_expr"] = {{"c0", sc.e2.c0}, {"c1", sc.e2.c1}};
  j["g1"] = sc.g1;
  j["g2"] = sc.g2;
  j["omega_expr"] = {
      {"c0", {sc.omega.c0.real(), sc.omega.c0.imag()}},
      {"c1", {sc.omega.c1.real(), sc.omega.c1.imag()}},
  };
  j["a_grid"] = {
      {"start", sc.grid.start}, {"stop", sc.grid.stop}, {"count", sc.grid.count}};
  j["channels"] = sc.channels;
  return j.dump(2);
}

} // namespace eplab
