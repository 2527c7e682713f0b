// Copyright 2026 The spinglass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinglass/json_io.hpp"

#include <complex>
#include <string>

#include <json.hpp>

#include "spinglass/errors.hpp"

namespace spinglass {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
}

ordered_json spectrum_json(const Spectrum& s) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"energy", e.energy}, {"state", e.state.word}});
  }
  return {{"k", s.size()}, {"entries", std::move(entries)}};
}

std::complex<double> complex_entry(const json& v, bool complex_field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (complex_field && v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ParseError("dynamics: expected a number" +
                   std::string(complex_field ? " or [re, im] pair" : ""));
}

ordered_json vector_json(const Eigen::VectorXd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

std::string format_spectrum(const Spectrum& s) { return spectrum_json(s).dump(2); }

Spectrum parse_spectrum(std::string_view text) {
  const json j = parse_json(text);
  try {
    Spectrum s;
    for (const auto& e : j.at("entries")) {
      s.entries.push_back({e.at("energy").get<double>(),
                           PackedState{e.at("state").get<std::uint64_t>()}});
    }
    if (j.at("k").get<std::size_t>() != s.size()) {
      throw ParseError("spectrum: k does not match the entry count");
    }
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("spectrum: ") + e.what());
  }
}

std::string format_mc_result(const McResult& r) {
  const ordered_json out = {{"best_energy", r.best_energy},
                            {"best_state", r.best_state.word},
                            {"success_count", r.success_count},
                            {"samples_taken", r.samples_taken},
                            {"elapsed", r.elapsed},
                            {"sample_energies", r.sample_energies}};
  return out.dump(2);
}

std::string format_tn_result(const tn::TnResult& r) {
  ordered_json out = spectrum_json(r.spectrum);
  out["diagnostics"] = {{"p_d", r.diagnostics.p_d}, {"p_1", r.diagnostics.p_1}};
  return out.dump(2);
}

DynamicsInput parse_dynamics_input(std::string_view text) {
  const json j = parse_json(text);
  try {
    DynamicsInput in;
    const std::string field = j.at("field").get<std::string>();
    if (field == "real") {
      in.spec.field = Field::real;
    } else if (field == "complex") {
      in.spec.field = Field::complex;
    } else {
      throw ParseError("dynamics: field must be \"real\" or \"complex\"");
    }
    const bool cplx = in.spec.field == Field::complex;
    const auto l = j.at("L").get<std::size_t>();
    const auto& k = j.at("K");
    if (!k.is_array() || k.size() != l) throw ParseError("dynamics: K must have L rows");
    Eigen::MatrixXcd gen(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l));
    for (std::size_t r = 0; r < l; ++r) {
      if (!k[r].is_array() || k[r].size() != l) throw ParseError("dynamics: K must be L x L");
      for (std::size_t c = 0; c < l; ++c) {
        gen(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            complex_entry(k[r][c], cplx);
      }
    }
    const auto& psi = j.at("psi0");
    if (!psi.is_array() || psi.size() != l) throw ParseError("dynamics: psi0 must have L entries");
    in.spec.psi0.resize(static_cast<Eigen::Index>(l));
    for (std::size_t i = 0; i < l; ++i) {
      in.spec.psi0(static_cast<Eigen::Index>(i)) = complex_entry(psi[i], cplx);
    }
    in.spec.generator = gen;
    in.spec.times = integer_times(j.at("N").get<std::size_t>());
    in.code.bits = j.at("R").get<int>();
    in.code.magnitude = j.at("D").get<int>();
    in.spec.validate();
    in.code.validate();
    return in;
  } catch (const json::exception& e) {
    throw ParseError(std::string("dynamics: ") + e.what());
  }
}

std::string format_trajectory(const Trajectory& t, const FixedPointCode& code) {
  ordered_json raw = ordered_json::array();
  ordered_json normalized = ordered_json::array();
  for (const auto& v : t.raw) raw.push_back(vector_json(v));
  for (const auto& v : t.normalized) normalized.push_back(vector_json(v));
  const ordered_json out = {{"points", t.raw.size()},
                            {"R", code.bits},
                            {"D", code.magnitude},
                            {"variables", t.variables},
                            {"raw", std::move(raw)},
                            {"normalized", std::move(normalized)},
                            {"qubo_energy", t.qubo_energy},
                            {"objective", t.objective},
                            {"residual", t.residual},
                            {"elapsed", t.elapsed}};
  return out.dump(2);
}

Embedding parse_embedding(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("embedding: expected an object");
  Embedding emb;
  for (const auto& [key, chain] : j.items()) {
    std::size_t pos = 0;
    unsigned long long logical = 0;
    try {
      logical = std::stoull(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || key.empty() || key[0] == '-') {
      throw ParseError("embedding: key \"" + key + "\" is not a variable index");
    }
    if (!chain.is_array()) throw ParseError("embedding: chain of " + key + " is not a list");
    auto& out = emb[logical];
    for (const auto& q : chain) {
      if (!q.is_number_unsigned()) {
        throw ParseError("embedding: chain of " + key + " holds a non-index entry");
      }
      out.push_back(q.get<std::size_t>());
    }
  }
  return emb;
}

std::string format_embedding(const Embedding& emb) {
  ordered_json out = ordered_json::object();
  for (const auto& [logical, chain] : emb) out[std::to_string(logical)] = chain;
  return out.dump();
}

}  // namespace spinglass
