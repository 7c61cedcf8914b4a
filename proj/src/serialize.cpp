// Copyright 2026 The eqlab Authors
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

#include "eqlab/serialize.hpp"

#include <string>

namespace eqlab {

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::kParseError, what);
}

template <class Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

json vec_json(const FieldVector& v) {
  json a = json::array();
  for (auto e : v) a.push_back(e.value);
  return a;
}

json vec_json(std::span<const FieldElement> v) {
  json a = json::array();
  for (auto e : v) a.push_back(e.value);
  return a;
}

FieldElement elem_from(const json& j, const Field& f) {
  const auto x = j.get<std::uint64_t>();
  if (x >= f.modulus()) parse_fail("field element " + std::to_string(x) + " out of range");
  return FieldElement{static_cast<std::uint32_t>(x)};
}

FieldVector vec_from(const json& j, const Field& f) {
  FieldVector out;
  for (const auto& e : j) out.push_back(elem_from(e, f));
  return out;
}

json matrix_json(const FieldMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vec_json(m.row(r)));
  return rows;
}

FieldMatrix matrix_from(const json& j, const Field& f, std::size_t cols) {
  std::vector<FieldVector> rows;
  for (const auto& r : j) {
    rows.push_back(vec_from(r, f));
    if (rows.back().size() != cols) parse_fail("matrix row has wrong length");
  }
  if (rows.empty()) return FieldMatrix(0, cols);
  return FieldMatrix::from_rows(rows);
}

json scenario_json(const PresumedScenario& s) {
  json parts = json::array();
  for (const auto& p : s.partitions) {
    json labels = json::array();
    for (auto l : p.labels) labels.push_back(l);
    parts.push_back(labels);
  }
  return {{"presumed_adversaries", s.presumed_adversaries}, {"partitions", parts}};
}

}  // namespace

json to_json(const GeneratorMatrix& gm, const Field& f) {
  json j{{"p", f.modulus()},
         {"N", gm.n},
         {"K", gm.k},
         {"kind", std::string(to_string(gm.kind))},
         {"rows", matrix_json(gm.g)}};
  if (gm.rs_points) j["rs_points"] = vec_json(*gm.rs_points);
  return j;
}

GeneratorMatrix code_from_json(const json& j, Field& field_out) {
  return guarded([&] {
    field_out = Field::create(j.at("p").get<std::uint64_t>());
    GeneratorMatrix gm;
    gm.n = j.at("N").get<std::size_t>();
    gm.k = j.at("K").get<std::size_t>();
    gm.kind = code_kind_from_string(j.at("kind").get<std::string>());
    gm.g = matrix_from(j.at("rows"), field_out, gm.k);
    if (j.contains("rs_points")) gm.rs_points = vec_from(j.at("rs_points"), field_out);
    validate(field_out, gm);
    return gm;
  });
}

json to_json(const SourceBehavior& b) {
  json rows = json::array();
  for (std::size_t k = 0; k < b.sources(); ++k) rows.push_back(vec_json(b.row(k)));
  return {{"adversary_set", b.adversary_set()}, {"rows", rows}};
}

SourceBehavior behavior_from_json(const json& j, const Field& f) {
  return guarded([&] {
    const auto& rows = j.at("rows");
    const std::size_t k = rows.size();
    const std::size_t n = k == 0 ? 0 : rows.at(0).size();
    SourceBehavior b(k, n, j.at("adversary_set").get<std::vector<std::size_t>>());
    for (std::size_t s = 0; s < k; ++s) {
      const FieldVector row = vec_from(rows.at(s), f);
      if (row.size() != n) parse_fail("behavior rows have unequal length");
      for (std::size_t e = 0; e < n; ++e) b.at(s, e) = row[e];
    }
    return b;
  });
}

json to_json(const Transcript& t) {
  return {{"node_set", t.nodes}, {"values", vec_json(t.values)}};
}

Transcript transcript_from_json(const json& j, const Field& f) {
  return guarded([&] {
    Transcript t;
    t.nodes = j.at("node_set").get<std::vector<std::size_t>>();
    t.values = vec_from(j.at("values"), f);
    if (t.nodes.size() != t.values.size()) {
      throw Error(ErrorCode::kTranscriptMismatch, "node_set and values differ in length");
    }
    return t;
  });
}

json to_json(const FeasibleSolution& s) {
  json honest = json::array();
  for (const auto& v : s.honest_values) {
    honest.push_back(v ? json(v->value) : json(nullptr));
  }
  json versions = json::array();
  for (const auto& v : s.adversary_versions) versions.push_back(vec_json(v));
  return {{"scenario", scenario_json(s.scenario)},
          {"honest_values", honest},
          {"adversary_versions", versions}};
}

json to_json(const DecodeResult& r) {
  json est = json::array();
  for (const auto& e : r.estimates) est.push_back(e ? json(e->value) : json(nullptr));
  json j{{"estimates", est},
         {"feasible_count", r.feasible_count},
         {"scenarios_solved", r.scenarios_solved},
         {"ambiguous_coordinates", r.ambiguous_coordinates}};
  if (r.ambiguity) {
    j["ambiguity"] = {{"coordinate", r.ambiguity->coordinate},
                      {"first", to_json(r.ambiguity->first)},
                      {"second", to_json(r.ambiguity->second)}};
  }
  if (!r.solutions.empty()) {
    json sols = json::array();
    for (const auto& s : r.solutions) sols.push_back(to_json(s));
    j["solutions"] = sols;
  }
  return j;
}

json to_json(const AttackInstance& a) {
  json versions = json::array();
  for (auto [x, z] : a.config.versions) versions.push_back({x, z});
  return {{"T", a.nodes},
          {"adversaries", a.adversaries},
          {"setup1", to_json(a.setup1)},
          {"setup2", to_json(a.setup2)},
          {"delta", vec_json(a.delta)},
          {"w", matrix_json(a.w)},
          {"groups",
           {{"sizes", a.config.group_sizes},
            {"members", a.config.groups},
            {"versions", versions}}}};
}

AttackInstance attack_from_json(const json& j, const Field& f) {
  return guarded([&] {
    AttackInstance a;
    a.nodes = j.at("T").get<std::vector<std::size_t>>();
    a.adversaries = j.at("adversaries").get<std::vector<std::size_t>>();
    a.setup1 = behavior_from_json(j.at("setup1"), f);
    a.setup2 = behavior_from_json(j.at("setup2"), f);
    a.delta = vec_from(j.at("delta"), f);
    a.w = matrix_from(j.at("w"), f, a.adversaries.size());
    const auto& g = j.at("groups");
    a.config.group_sizes = g.at("sizes").get<std::vector<std::size_t>>();
    a.config.groups = g.at("members").get<std::vector<std::vector<std::size_t>>>();
    for (const auto& p : g.at("versions")) {
      a.config.versions.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
    }
    return a;
  });
}

json to_json(const CellResult& r) {
  return {{"N", r.cell.n},
          {"K", r.cell.k},
          {"beta", r.cell.beta},
          {"v", r.cell.v},
          {"kind", std::string(to_string(r.kind))},
          {"t", r.t},
          {"experiment", std::string(to_string(r.experiment))},
          {"trials", r.trials},
          {"honest_correct", r.honest_correct},
          {"ambiguous", r.ambiguous},
          {"undetermined", r.undetermined},
          {"failures", r.failures},
          {"scenario_solves", r.scenario_solves},
          {"wall_ms", r.wall_ms},
          {"row_seed", r.row_seed},
          {"note", r.note}};
}

CellResult cell_result_from_json(const json& j) {
  return guarded([&] {
    CellResult r;
    r.cell = {j.at("N").get<std::size_t>(), j.at("K").get<std::size_t>(),
              j.at("beta").get<std::size_t>(), j.at("v").get<std::size_t>()};
    r.kind = code_kind_from_string(j.at("kind").get<std::string>());
    r.t = j.at("t").get<std::size_t>();
    const auto exp = j.at("experiment").get<std::string>();
    if (exp == "achievability") {
      r.experiment = ExperimentKind::kAchievability;
    } else if (exp == "converse") {
      r.experiment = ExperimentKind::kConverse;
    } else {
      parse_fail("unknown experiment '" + exp + "'");
    }
    r.trials = j.at("trials").get<std::size_t>();
    r.honest_correct = j.at("honest_correct").get<std::size_t>();
    r.ambiguous = j.at("ambiguous").get<std::size_t>();
    r.undetermined = j.at("undetermined").get<std::size_t>();
    r.failures = j.at("failures").get<std::size_t>();
    r.scenario_solves = j.at("scenario_solves").get<std::uint64_t>();
    r.wall_ms = j.at("wall_ms").get<std::uint64_t>();
    r.row_seed = j.at("row_seed").get<std::uint64_t>();
    r.note = j.value("note", std::string{});
    return r;
  });
}

json to_json(const ExperimentSpec& s) {
  json cells = json::array();
  for (const auto& c : s.cells) {
    cells.push_back({{"N", c.n}, {"K", c.k}, {"beta", c.beta}, {"v", c.v}});
  }
  json kinds = json::array();
  for (auto k : s.kinds) kinds.push_back(std::string(to_string(k)));
  const char* range = s.t_range == TRange::kRelative ? "relative" : "absolute";
  return {{"cells", cells},
          {"t", {{range, s.t_values}}},
          {"kinds", kinds},
          {"trials", s.trials},
          {"seed", s.seed},
          {"budget", s.budget},
          {"prime", s.prime},
          {"achievability", s.achievability},
          {"converse", s.converse},
          {"strict_every", s.strict_every},
          {"record_wall_time", s.record_wall_time}};
}

ExperimentSpec experiment_spec_from_json(const json& j) {
  return guarded([&] {
    ExperimentSpec s;
    for (const auto& c : j.at("cells")) {
      s.cells.push_back({c.at("N").get<std::size_t>(), c.at("K").get<std::size_t>(),
                         c.at("beta").get<std::size_t>(), c.at("v").get<std::size_t>()});
    }
    if (j.contains("t")) {
      const auto& t = j.at("t");
      if (t.contains("relative")) {
        s.t_range = TRange::kRelative;
        s.t_values = t.at("relative").get<std::vector<long>>();
      } else if (t.contains("absolute")) {
        s.t_range = TRange::kAbsolute;
        s.t_values = t.at("absolute").get<std::vector<long>>();
      } else {
        parse_fail("\"t\" needs a \"relative\" or \"absolute\" list");
      }
    }
    if (j.contains("kinds")) {
      s.kinds.clear();
      for (const auto& k : j.at("kinds")) s.kinds.push_back(code_kind_from_string(k.get<std::string>()));
    }
    s.trials = j.value("trials", s.trials);
    s.seed = j.value("seed", s.seed);
    s.budget = j.value("budget", s.budget);
    s.prime = j.value("prime", s.prime);
    s.achievability = j.value("achievability", s.achievability);
    s.converse = j.value("converse", s.converse);
    s.strict_every = j.value("strict_every", s.strict_every);
    s.record_wall_time = j.value("record_wall_time", s.record_wall_time);
    s.validate();
    return s;
  });
}

}  // namespace eqlab
