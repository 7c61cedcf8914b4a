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

#pragma once

#include <json.hpp>

#include "eqlab/adversary.hpp"
#include "eqlab/codebook.hpp"
#include "eqlab/decoder.hpp"
#include "eqlab/experiments.hpp"
#include "eqlab/system.hpp"

namespace eqlab {

using json = nlohmann::json;

// JSON shapes:
//   GeneratorMatrix  {p, N, K, kind, rows, rs_points?}
//   SourceBehavior   {adversary_set, rows}              rows is K x N
//   Transcript       {node_set, values}
//   DecodeResult     {estimates, feasible_count, scenarios_solved,
//                     ambiguous_coordinates, ambiguity?}
//   AttackInstance   {T, adversaries, setup1, setup2, delta, w, groups}
//   ExperimentSpec   {cells:[{N,K,beta,v}], t:{relative|absolute:[...]},
//                     kinds, trials, seed, budget, prime, achievability,
//                     converse, strict_every, record_wall_time}
// Field elements are plain integers in [0, p).

json to_json(const GeneratorMatrix& gm, const Field& f);
/// Parses and validates a code; the field is rebuilt from "p".
GeneratorMatrix code_from_json(const json& j, Field& field_out);

json to_json(const SourceBehavior& b);
SourceBehavior behavior_from_json(const json& j, const Field& f);

json to_json(const Transcript& t);
Transcript transcript_from_json(const json& j, const Field& f);

json to_json(const FeasibleSolution& s);
json to_json(const DecodeResult& r);

json to_json(const AttackInstance& a);
AttackInstance attack_from_json(const json& j, const Field& f);

json to_json(const CellResult& r);
CellResult cell_result_from_json(const json& j);

json to_json(const ExperimentSpec& s);
ExperimentSpec experiment_spec_from_json(const json& j);

}  // namespace eqlab
