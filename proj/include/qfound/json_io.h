// Copyright 2026 The qfound Authors
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

#ifndef QFOUND_JSON_IO_H
#define QFOUND_JSON_IO_H

#include <string>

#include "json.hpp"
#include "qfound/bohm.h"
#include "qfound/entangle.h"
#include "qfound/hilbert.h"
#include "qfound/measure.h"
#include "qfound/nogo.h"

namespace qfound {

using json = nlohmann::json;

/// {"dim": N, "re": [...], "im": [...]}, row-major.
json matrix_to_json(const ComplexMatrix &m);
/// Throws ParseError on malformed input.
ComplexMatrix matrix_from_json(const json &j);

/// {"re": [...], "im": [...]}
json vector_to_json(const StateVector &v);
StateVector vector_from_json(const json &j);

/// {"dim", "coeffs", "basis_alice", "basis_bob"}
json state_to_json(const EntangledState &s);
EntangledState state_from_json(const json &j);

/// {"rays": [[x, y, z], ...]}; structure is recomputed on load.
json rayset_to_json(const RaySet &rs);
RaySet rayset_from_json(const json &j);

/// {"unsat": true, "nodes", "max_depth", "exhausted_branches"}
json certificate_to_json(const UnsatCertificate &cert);

json coloring_to_json(const Coloring &c);

/// {"procedure", "z0", "raw_sign", "outcome"}
json trajectory_manifest(const Trajectory &tr);

/// {"n", "up_freq", "seed"} plus the procedure and up count.
json ensemble_to_json(const EnsembleReport &r);

/// {"trials", "match_count", "marginals": {"alice": {...}, "bob": {...}}}
json epr_summary_to_json(const EprSummary &s);

json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}  // namespace qfound

#endif
