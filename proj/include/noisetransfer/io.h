// Copyright 2026 The noisetransfer Authors
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

#ifndef NOISETRANSFER_IO_H
#define NOISETRANSFER_IO_H

#include <json.hpp>
#include <string>
#include <vector>

#include "noisetransfer/circuits.h"
#include "noisetransfer/montecarlo.h"
#include "noisetransfer/oracle.h"

namespace nt {

using Json = nlohmann::json;

Json to_json(const StateModel& state);
Json to_json(const DomainPartition& partition);
Json to_json(const DomainStats& stats);
Json to_json(const DensityGrid& grid);
/// {"terms": {name: coefficient, ...}, "constant": c}; names in canonical order.
Json to_json(const OperatorExpr& expr);
OperatorExpr expr_from_json(const Json& j);
Json to_json(const NoiseBindings& bindings);
Json to_json(const ErrorLadder& ladder);
Json to_json(const LogicalErrorReport& report);
Json to_json(const LossConfig& loss);
Json to_json(const Gains& gains);
Json to_json(const CircuitReport& report);
Json to_json(const TrialOutcome& outcome);
Json to_json(const Comparison& comparison);
Json to_json(const TransferCheck& check);
Json to_json(const SweepPoint& point);

/// Rows "n,mean,prob" followed by "# V=..." and "# clipped_fraction=..." footers.
std::string stats_csv(const DomainStats& stats);
/// Rows "x,density".
std::string grid_csv(const DensityGrid& grid);
/// Rows "param,V_q,V_p,clipped_fraction".
std::string sweep_csv(const std::vector<SweepPoint>& points);
/// Rows "n,prob".
std::string ladder_csv(const ErrorLadder& ladder);
/// Rows "class,count,rate,std_error,predicted,z".
std::string outcome_csv(const TrialOutcome& outcome, const Comparison& comparison);

/// 64-bit FNV-1a of the compact dump of `config` (keys sorted), as 16 hex digits.
std::string config_hash(const Json& config);

/// Writes to a temporary file in the target directory and renames it into place.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace nt

#endif
