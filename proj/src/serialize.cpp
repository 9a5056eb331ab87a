#include "monolab/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace monolab {

void to_json(json& j, const Vector& v) { j = json(std::vector<double>(v.coords().begin(), v.coords().end())); }

void to_json(json& j, const SetValue& s)
{
  switch (s.kind()) {
  case SetValue::Kind::Empty:
    j = json{{"kind", "empty"}};
    break;
  case SetValue::Kind::Singleton:
    j = json{{"kind", "singleton"}, {"v", s.vector()}};
    break;
  case SetValue::Kind::Ray:
    j = json{{"kind", "ray"}, {"direction", s.vector()}};
    break;
  }
}

void to_json(json& j, const Certificate& c)
{
  j = json::object();
  j["property"] = to_string(c.property);
  j["verdict"] = to_string(c.verdict);
  j["estimate"] = c.estimate ? json(*c.estimate) : json(nullptr);
  j["claimed"] = c.claimed ? json(*c.claimed) : json(nullptr);
  j["witness"] = c.witness;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["tol"] = c.tol;
  j["details"] = c.details;
  j["note"] = c.note;
}

void to_json(json& j, const IterationTrace& t)
{
  json thetas = json::array();
  for (const auto& th : t.thetas) {
    thetas.push_back(th ? json(*th) : json(nullptr));
  }
  j = json{{"iterates", t.iterates}, {"norms", t.norms},         {"thetas", thetas},
           {"ratios", t.ratios},     {"converged", t.converged}, {"n_steps", t.n_steps}};
}

Vector vector_from_json(const json& j)
{
  if (!j.is_array() || j.empty()) {
    throw InvalidInput("vector must be a non-empty JSON array of numbers");
  }
  std::vector<double> c;
  c.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw InvalidInput("vector entries must be numbers");
    }
    c.push_back(v.get<double>());
  }
  return Vector(std::move(c));
}

SetValue set_value_from_json(const json& j)
{
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw InvalidInput("set value must be an object with a string \"kind\"");
  }
  const auto kind = j["kind"].get<std::string>();
  if (kind == "empty") {
    return SetValue::empty();
  }
  if (kind == "singleton" && j.contains("v")) {
    return SetValue::singleton(vector_from_json(j["v"]));
  }
  if (kind == "ray" && j.contains("direction")) {
    return SetValue::ray(vector_from_json(j["direction"]));
  }
  throw InvalidInput("unrecognized set value: " + j.dump());
}

std::string format_double(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trace_to_csv(const IterationTrace& t)
{
  std::ostringstream out;
  out << "n,x,norm,theta,ratio\n";
  for (std::size_t n = 0; n < t.iterates.size(); ++n) {
    out << n << ',';
    const auto coords = t.iterates[n].coords();
    for (std::size_t i = 0; i < coords.size(); ++i) {
      out << (i ? ";" : "") << format_double(coords[i]);
    }
    out << ',' << format_double(t.norms[n]) << ',';
    if (t.thetas[n]) {
      out << format_double(*t.thetas[n]);
    }
    out << ',';
    if (n < t.ratios.size()) {
      out << format_double(t.ratios[n]);
    }
    out << '\n';
  }
  return out.str();
}

} // namespace monolab
