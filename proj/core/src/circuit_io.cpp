// Copyright 2026 The gicirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gicirc/circuit_io.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include <fmt/format.h>

#include "gicirc/error.hpp"
#include "json.hpp"

namespace gicirc {
namespace {

using nlohmann::json;

// Error context: "at element 3", "in detect", ...
struct Where {
  std::string text;
};

[[noreturn]] void fail(const Where& where, const std::string& what) {
  throw Error(ErrorKind::kSemantic, fmt::format("{} {}", what, where.text));
}

void require_object(const json& j, const Where& where) {
  if (!j.is_object()) fail(where, "expected an object");
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed,
                    const Where& where) {
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      fail(where, fmt::format("unknown key \"{}\"", item.key()));
    }
  }
}

const json& required(const json& j, const char* key, const Where& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, fmt::format("missing key \"{}\"", key));
  return *it;
}

double number(const json& j, const char* key, const Where& where) {
  const json& v = required(j, key, where);
  if (!v.is_number()) fail(where, fmt::format("\"{}\" must be a number", key));
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, fmt::format("\"{}\" must be finite", key));
  return x;
}

double number_or(const json& j, const char* key, double fallback, const Where& where) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

std::size_t index(const json& v, const char* key, const Where& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    fail(where, fmt::format("\"{}\" must be a non-negative integer", key));
  }
  return v.get<std::size_t>();
}

std::size_t index_field(const json& j, const char* key, const Where& where) {
  return index(required(j, key, where), key, where);
}

ModePair mode_pair(const json& j, const Where& where) {
  const json& v = required(j, "modes", where);
  if (!v.is_array() || v.size() != 2) fail(where, "\"modes\" must be a two-element array");
  return {index(v[0], "modes", where), index(v[1], "modes", where)};
}

PaGain gain(const json& j, const Where& where) {
  const double g = number(j, "g", where);
  if (g < 0.0) fail(where, "g must be >= 0");
  return PaGain::from_g(g);
}

ModePrep parse_input(const json& j, std::size_t k) {
  const Where where{fmt::format("at input {}", k)};
  require_object(j, where);
  const json& type = required(j, "type", where);
  if (!type.is_string()) fail(where, "\"type\" must be a string");
  const std::string t = type.get<std::string>();
  if (t == "vacuum") {
    reject_unknown(j, {"type"}, where);
    return Vacuum{};
  }
  if (t == "coherent") {
    reject_unknown(j, {"type", "alpha"}, where);
    const json& a = required(j, "alpha", where);
    if (a.is_number()) return Coherent{{a.get<double>(), 0.0}};
    if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
      return Coherent{{a[0].get<double>(), a[1].get<double>()}};
    }
    fail(where, "\"alpha\" must be a number or [re, im]");
  }
  if (t == "thermal") {
    reject_unknown(j, {"type", "variance"}, where);
    const double v = number(j, "variance", where);
    if (v < 1.0) fail(where, "thermal variance below 1");
    return Thermal{v};
  }
  fail(where, fmt::format("unknown input type \"{}\"", t));
}

Element parse_element(const json& j, std::size_t i) {
  const Where where{fmt::format("at element {}", i)};
  require_object(j, where);
  const json& type = required(j, "type", where);
  if (!type.is_string()) fail(where, "\"type\" must be a string");
  const std::string t = type.get<std::string>();

  if (t == "pa") {
    reject_unknown(j, {"type", "modes", "g"}, where);
    return PaElement{mode_pair(j, where), gain(j, where)};
  }
  if (t == "single_mode_squeezer") {
    reject_unknown(j, {"type", "mode", "g"}, where);
    return SqueezerElement{index_field(j, "mode", where), gain(j, where)};
  }
  if (t == "bs") {
    reject_unknown(j, {"type", "modes", "T", "convention"}, where);
    BsElement e{mode_pair(j, where), number_or(j, "T", 0.5, where), BsConvention::kMziMinus};
    if (!(e.transmission >= 0.0 && e.transmission <= 1.0)) fail(where, "T outside [0,1]");
    if (j.contains("convention")) {
      const json& c = j["convention"];
      if (c == "mzi_minus") {
        e.convention = BsConvention::kMziMinus;
      } else if (c == "first_plus") {
        e.convention = BsConvention::kFirstPlus;
      } else {
        fail(where, "\"convention\" must be \"mzi_minus\" or \"first_plus\"");
      }
    }
    return e;
  }
  if (t == "phase") {
    reject_unknown(j, {"type", "mode", "phi"}, where);
    return PhaseElement{index_field(j, "mode", where), number(j, "phi", where)};
  }
  if (t == "loss") {
    reject_unknown(j, {"type", "mode", "L"}, where);
    const double l = number(j, "L", where);
    if (!(l >= 0.0 && l <= 1.0)) fail(where, "L outside [0,1]");
    return LossElement{index_field(j, "mode", where), LossSpec(l)};
  }
  if (t == "noisy_pa") {
    reject_unknown(j, {"type", "modes", "rho", "kappa", "epsilon2"}, where);
    NoisyPaParams p{number(j, "rho", where), number(j, "kappa", where),
                    number_or(j, "epsilon2", 1.0, where)};
    try {
      p.validate();
    } catch (const Error& err) {
      fail(where, err.what());
    }
    return NoisyPaElement{mode_pair(j, where), p};
  }
  fail(where, fmt::format("unknown element type \"{}\"", t));
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t k = 0; k < end; ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json to_json(const ModePrep& prep) {
  if (const auto* c = std::get_if<Coherent>(&prep)) {
    return {{"type", "coherent"}, {"alpha", {c->alpha.real(), c->alpha.imag()}}};
  }
  if (const auto* t = std::get_if<Thermal>(&prep)) {
    return {{"type", "thermal"}, {"variance", t->variance}};
  }
  return {{"type", "vacuum"}};
}

json to_json(const Element& element) {
  json j;
  j["type"] = element_tag(element);
  if (const auto* e = std::get_if<PaElement>(&element)) {
    j["modes"] = {e->modes.a, e->modes.b};
    j["g"] = e->gain.g();
  } else if (const auto* e = std::get_if<SqueezerElement>(&element)) {
    j["mode"] = e->mode;
    j["g"] = e->gain.g();
  } else if (const auto* e = std::get_if<BsElement>(&element)) {
    j["modes"] = {e->modes.a, e->modes.b};
    j["T"] = e->transmission;
    j["convention"] = e->convention == BsConvention::kMziMinus ? "mzi_minus" : "first_plus";
  } else if (const auto* e = std::get_if<PhaseElement>(&element)) {
    j["mode"] = e->mode;
    j["phi"] = e->phi;
  } else if (const auto* e = std::get_if<LossElement>(&element)) {
    j["mode"] = e->mode;
    j["L"] = e->loss.value();
  } else if (const auto* e = std::get_if<NoisyPaElement>(&element)) {
    j["modes"] = {e->modes.a, e->modes.b};
    j["rho"] = e->params.rho;
    j["kappa"] = e->params.kappa;
    j["epsilon2"] = e->params.epsilon2;
  }
  return j;
}

}  // namespace

CircuitSpec parse_circuit(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw Error(ErrorKind::kParse,
                fmt::format("syntax error at line {}, column {}: {}", line, col, e.what()));
  }

  const Where top{"in circuit document"};
  require_object(doc, top);
  reject_unknown(doc, {"schema", "n_modes", "inputs", "elements", "detect", "signal_element"},
                 top);
  const json& schema = required(doc, "schema", top);
  if (schema != kCircuitSchema) {
    fail(top, fmt::format("\"schema\" must be \"{}\"", kCircuitSchema));
  }

  CircuitSpec out;
  out.n_modes = index_field(doc, "n_modes", top);
  if (out.n_modes == 0) fail(top, "\"n_modes\" must be positive");

  if (doc.contains("inputs")) {
    const json& inputs = doc["inputs"];
    if (!inputs.is_array()) fail(top, "\"inputs\" must be an array");
    for (std::size_t k = 0; k < inputs.size(); ++k) out.inputs.push_back(parse_input(inputs[k], k));
  } else {
    out.inputs.assign(out.n_modes, Vacuum{});
  }

  if (doc.contains("elements")) {
    const json& elements = doc["elements"];
    if (!elements.is_array()) fail(top, "\"elements\" must be an array");
    for (std::size_t i = 0; i < elements.size(); ++i) {
      out.elements.push_back(parse_element(elements[i], i));
    }
  }

  const Where det{"in detect"};
  const json& detect = required(doc, "detect", top);
  require_object(detect, det);
  reject_unknown(detect, {"mode", "theta"}, det);
  out.detect.mode = index_field(detect, "mode", det);
  out.detect.theta = number_or(detect, "theta", kPi / 2.0, det);

  if (doc.contains("signal_element")) {
    out.signal_element = index(doc["signal_element"], "signal_element", top);
  }

  out.validate();
  return out;
}

std::string serialize_circuit(const CircuitSpec& circuit) {
  json doc;
  doc["schema"] = kCircuitSchema;
  doc["n_modes"] = circuit.n_modes;
  doc["inputs"] = json::array();
  for (const ModePrep& p : circuit.inputs) doc["inputs"].push_back(to_json(p));
  doc["elements"] = json::array();
  for (const Element& e : circuit.elements) doc["elements"].push_back(to_json(e));
  doc["detect"] = {{"mode", circuit.detect.mode}, {"theta", circuit.detect.theta}};
  if (circuit.signal_element) doc["signal_element"] = *circuit.signal_element;
  return doc.dump(2);
}

}  // namespace gicirc
