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

#include <string>

#include "gicirc/error.hpp"
#include "gicirc/interferometers.hpp"
#include "gtest/gtest.h"

namespace gicirc {
namespace {

std::string doc_with_elements(const std::string& elements) {
  return R"({"schema": "gicirc/1", "n_modes": 1, "elements": [)" + elements +
         R"(], "detect": {"mode": 0}})";
}

Error parse_error_of(const std::string& text) {
  try {
    parse_circuit(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return Error(ErrorKind::kUsage, "");
}

TEST(ParseCircuit, LossOutOfRangeNamesElement) {
  const Error e = parse_error_of(doc_with_elements(R"({"type":"loss","mode":0,"L":1.5})"));
  EXPECT_EQ(e.kind(), ErrorKind::kSemantic);
  EXPECT_STREQ(e.what(), "L outside [0,1] at element 0");
}

TEST(ParseCircuit, MinimalDocumentIsVacuum) {
  const CircuitSpec c = parse_circuit(doc_with_elements(""));
  EXPECT_EQ(c.n_modes, 1u);
  ASSERT_EQ(c.inputs.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<Vacuum>(c.inputs[0]));
  EXPECT_TRUE(c.elements.empty());
  EXPECT_DOUBLE_EQ(c.detect.theta, kPi / 2.0);
  EXPECT_NEAR(detect(c).variance, 1.0, 1e-15);
}

TEST(ParseCircuit, DefaultsAreApplied) {
  const CircuitSpec c = parse_circuit(
      R"({"schema":"gicirc/1","n_modes":2,"elements":[{"type":"bs","modes":[0,1]}],
          "detect":{"mode":1}})");
  const auto& bs = std::get<BsElement>(c.elements[0]);
  EXPECT_EQ(bs.transmission, 0.5);
  EXPECT_EQ(bs.convention, BsConvention::kMziMinus);
  // Defaults are echoed on serialization.
  const std::string out = serialize_circuit(c);
  EXPECT_NE(out.find("\"T\": 0.5"), std::string::npos);
  EXPECT_NE(out.find("\"theta\": 1.5707963267948966"), std::string::npos);
}

TEST(ParseCircuit, SyntaxErrorReportsLineAndColumn) {
  const Error e = parse_error_of("{\n  \"schema\": \"gicirc/1\",\n  \"n_modes\": ,\n}");
  EXPECT_EQ(e.kind(), ErrorKind::kParse);
  EXPECT_NE(std::string(e.what()).find("line 3, column 14"), std::string::npos) << e.what();
}

TEST(ParseCircuit, RejectsUnknownKeys) {
  const Error top = parse_error_of(
      R"({"schema":"gicirc/1","n_modes":1,"detect":{"mode":0},"extra":1})");
  EXPECT_EQ(top.kind(), ErrorKind::kSemantic);
  EXPECT_NE(std::string(top.what()).find("\"extra\""), std::string::npos);

  const Error elem = parse_error_of(doc_with_elements(
      R"({"type":"phase","mode":0,"phi":1.0},{"type":"phase","mode":0,"phy":1.0})"));
  EXPECT_NE(std::string(elem.what()).find("at element 1"), std::string::npos) << elem.what();
  EXPECT_NE(std::string(elem.what()).find("\"phy\""), std::string::npos);
}

TEST(ParseCircuit, SemanticErrors) {
  EXPECT_EQ(parse_error_of(R"({"n_modes":1,"detect":{"mode":0}})").kind(), ErrorKind::kSemantic);
  EXPECT_EQ(parse_error_of(R"({"schema":"gicirc/2","n_modes":1,"detect":{"mode":0}})").kind(),
            ErrorKind::kSemantic);
  EXPECT_EQ(parse_error_of(R"({"schema":"gicirc/1","n_modes":1})").kind(), ErrorKind::kSemantic);

  const Error mode = parse_error_of(doc_with_elements(R"({"type":"phase","mode":3,"phi":0})"));
  EXPECT_NE(std::string(mode.what()).find("element 0"), std::string::npos) << mode.what();

  const Error pa = parse_error_of(doc_with_elements(R"({"type":"pa","modes":[0,0],"g":1})"));
  EXPECT_NE(std::string(pa.what()).find("element 0"), std::string::npos) << pa.what();

  const Error unstable = parse_error_of(
      R"({"schema":"gicirc/1","n_modes":2,"elements":[{"type":"phase","mode":0,"phi":0},
          {"type":"noisy_pa","modes":[0,1],"rho":0,"kappa":0.6}],"detect":{"mode":0}})");
  EXPECT_NE(std::string(unstable.what()).find("at element 1"), std::string::npos);

  const Error thermal = parse_error_of(
      R"({"schema":"gicirc/1","n_modes":1,"inputs":[{"type":"thermal","variance":0.5}],
          "detect":{"mode":0}})");
  EXPECT_NE(std::string(thermal.what()).find("at input 0"), std::string::npos);

  const Error arity = parse_error_of(
      R"({"schema":"gicirc/1","n_modes":2,"inputs":[{"type":"vacuum"}],"detect":{"mode":0}})");
  EXPECT_EQ(arity.kind(), ErrorKind::kSemantic);
}

TEST(ParseCircuit, CoherentAlphaForms) {
  const CircuitSpec c = parse_circuit(
      R"({"schema":"gicirc/1","n_modes":2,
          "inputs":[{"type":"coherent","alpha":6},{"type":"coherent","alpha":[1,-2]}],
          "detect":{"mode":0}})");
  EXPECT_EQ(std::get<Coherent>(c.inputs[0]).alpha, std::complex<double>(6.0, 0.0));
  EXPECT_EQ(std::get<Coherent>(c.inputs[1]).alpha, std::complex<double>(1.0, -2.0));
}

TEST(SerializeCircuit, RoundTrips) {
  SisniParams p;
  p.g1 = gain_from_qng(4.0);
  p.g2 = gain_from_qng(6.0);
  p.L_is = LossSpec(0.16);
  p.L_ii = LossSpec(0.10);
  p.L_e = LossSpec(0.15);
  p.alpha = 6.0;
  p.noisy2 = NoisyPaParams{4e-4, 0.3, 208.0};
  CircuitSpec c = build_sisni(p).circuit;
  c.elements.push_back(BsElement{{0, 2}, 0.3, BsConvention::kFirstPlus});
  c.elements.push_back(SqueezerElement{1, PaGain::from_g(0.1)});
  c.inputs[1] = Thermal{3.5};

  const std::string once = serialize_circuit(c);
  const CircuitSpec back = parse_circuit(once);
  EXPECT_EQ(serialize_circuit(back), once);
  EXPECT_EQ(back.elements.size(), c.elements.size());
  EXPECT_EQ(back.signal_element, c.signal_element);
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    EXPECT_EQ(element_tag(back.elements[i]), element_tag(c.elements[i]));
  }
  const GaussianState a = simulate(c);
  const GaussianState b = simulate(back);
  EXPECT_EQ(a.mean(), b.mean());
  EXPECT_EQ(a.cov(), b.cov());
}

TEST(SerializeCircuit, BuilderAndParserAgree) {
  SisniParams sisni;
  sisni.g1 = gain_from_qng(4.0);
  sisni.g2 = gain_from_qng(6.0);
  sisni.L_is = LossSpec(0.16);
  sisni.L_ii = LossSpec(0.10);
  sisni.L_e = LossSpec(0.15);
  sisni.alpha = 6.0;
  SqMziParams sq = plain_mzi(6.0, 0.16, 0.15);
  sq.g = gain_from_qng(6.0);

  for (const Topology& t : {Topology{sisni}, Topology{sq}, Topology{plain_mzi(6.0, 0.2, 0.1)}}) {
    const OutputReport direct = engine_report(t, 1e-3);
    const CircuitSpec parsed = parse_circuit(serialize_circuit(build(t).circuit));
    const OutputReport via_doc = engine_report(parsed, 1e-3);
    EXPECT_NEAR(direct.mean_X2, via_doc.mean_X2, 1e-12);
    EXPECT_NEAR(direct.var_X2, via_doc.var_X2, 1e-12);
    EXPECT_NEAR(direct.snr, via_doc.snr, 1e-12);
    EXPECT_NEAR(direct.phase_variance, via_doc.phase_variance, 1e-12);
  }
}

}  // namespace
}  // namespace gicirc
