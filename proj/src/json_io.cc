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

#include "qfound/json_io.h"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "qfound/error.h"

namespace qfound {

namespace {

std::string key_of(double x) {
    std::ostringstream out;
    out << std::setprecision(17) << x;
    return out.str();
}

[[noreturn]] void parse_fail(const std::string &what) {
    throw Error(ErrorCode::ParseError, what);
}

std::vector<double> number_array(const json &j, const char *field) {
    if (!j.contains(field) || !j.at(field).is_array()) {
        parse_fail(std::string("missing array field '") + field + "'");
    }
    std::vector<double> out;
    for (const auto &x : j.at(field)) {
        if (!x.is_number()) {
            parse_fail(std::string("non-numeric entry in '") + field + "'");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

json matrix_to_json(const ComplexMatrix &m) {
    json re = json::array(), im = json::array();
    for (const auto &x : m.entries()) {
        re.push_back(x.real());
        im.push_back(x.imag());
    }
    return {{"dim", m.dim()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const json &j) {
    if (!j.is_object() || !j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<long long>() <= 0) {
        parse_fail("matrix needs a positive integer 'dim'");
    }
    size_t dim = j.at("dim").get<size_t>();
    auto re = number_array(j, "re");
    std::vector<double> im = j.contains("im") ? number_array(j, "im") : std::vector<double>(re.size(), 0.0);
    if (re.size() != dim * dim || im.size() != dim * dim) {
        parse_fail("matrix of dim " + std::to_string(dim) + " needs " + std::to_string(dim * dim) + " entries");
    }
    std::vector<Complex> entries;
    for (size_t k = 0; k < re.size(); ++k) {
        entries.emplace_back(re[k], im[k]);
    }
    return ComplexMatrix(dim, std::move(entries));
}

json vector_to_json(const StateVector &v) {
    json re = json::array(), im = json::array();
    for (const auto &x : v.amplitudes()) {
        re.push_back(x.real());
        im.push_back(x.imag());
    }
    return {{"re", re}, {"im", im}};
}

StateVector vector_from_json(const json &j) {
    if (!j.is_object()) {
        parse_fail("vector must be an object with 're' and 'im'");
    }
    auto re = number_array(j, "re");
    std::vector<double> im = j.contains("im") ? number_array(j, "im") : std::vector<double>(re.size(), 0.0);
    if (re.size() != im.size()) {
        parse_fail("'re' and 'im' differ in length");
    }
    std::vector<Complex> amps;
    for (size_t k = 0; k < re.size(); ++k) {
        amps.emplace_back(re[k], im[k]);
    }
    return StateVector(std::move(amps));
}

json state_to_json(const EntangledState &s) {
    json alice = json::array(), bob = json::array();
    for (const auto &v : s.basis_alice()) {
        alice.push_back(vector_to_json(v));
    }
    for (const auto &v : s.basis_bob()) {
        bob.push_back(vector_to_json(v));
    }
    return {{"dim", s.dim()}, {"coeffs", s.coeffs()}, {"basis_alice", alice}, {"basis_bob", bob}};
}

EntangledState state_from_json(const json &j) {
    if (!j.is_object() || !j.contains("basis_alice") || !j.contains("basis_bob") || !j.at("basis_alice").is_array() ||
        !j.at("basis_bob").is_array()) {
        parse_fail("entangled state needs 'basis_alice' and 'basis_bob' arrays");
    }
    std::vector<StateVector> alice, bob;
    for (const auto &v : j.at("basis_alice")) {
        alice.push_back(vector_from_json(v));
    }
    for (const auto &v : j.at("basis_bob")) {
        bob.push_back(vector_from_json(v));
    }
    auto coeffs = number_array(j, "coeffs");
    if (j.contains("dim") && (!j.at("dim").is_number_integer() || j.at("dim").get<size_t>() != coeffs.size())) {
        parse_fail("'dim' does not match the number of coefficients");
    }
    return EntangledState(std::move(alice), std::move(bob), std::move(coeffs));
}

json rayset_to_json(const RaySet &rs) {
    json rays = json::array();
    for (const auto &r : rs.rays()) {
        rays.push_back({r.direction[0], r.direction[1], r.direction[2]});
    }
    return {{"rays", rays}};
}

RaySet rayset_from_json(const json &j) {
    if (!j.is_object() || !j.contains("rays") || !j.at("rays").is_array()) {
        parse_fail("ray set needs a 'rays' array");
    }
    std::vector<Vec3> dirs;
    for (const auto &r : j.at("rays")) {
        if (!r.is_array() || r.size() != 3) {
            parse_fail("each ray must be [x, y, z]");
        }
        Vec3 v;
        for (size_t k = 0; k < 3; ++k) {
            if (!r[k].is_number()) {
                parse_fail("ray components must be numbers");
            }
            v[k] = r[k].get<double>();
        }
        dirs.push_back(v);
    }
    return RaySet::from_directions(dirs);
}

json certificate_to_json(const UnsatCertificate &cert) {
    return {{"unsat", true},
            {"nodes", cert.stats.nodes},
            {"max_depth", cert.stats.max_depth},
            {"exhausted_branches", cert.stats.exhausted_branches}};
}

json coloring_to_json(const Coloring &c) {
    json out = json::array();
    for (Color x : c.assignment) {
        out.push_back(static_cast<int>(x));
    }
    return out;
}

json trajectory_manifest(const Trajectory &tr) {
    return {{"procedure", procedure_name(tr.procedure)},
            {"z0", tr.initial_z},
            {"raw_sign", tr.raw_sign},
            {"outcome", tr.calibrated_outcome}};
}

json ensemble_to_json(const EnsembleReport &r) {
    return {{"n", r.n},
            {"up_freq", r.up_freq},
            {"seed", r.seed},
            {"up_count", r.up_count},
            {"procedure", procedure_name(r.procedure)}};
}

json epr_summary_to_json(const EprSummary &s) {
    json alice = json::object(), bob = json::object();
    for (auto [value, freq] : s.alice_marginals) {
        alice[key_of(value)] = freq;
    }
    for (auto [value, freq] : s.bob_marginals) {
        bob[key_of(value)] = freq;
    }
    return {{"trials", s.trials}, {"match_count", s.match_count}, {"marginals", {{"alice", alice}, {"bob", bob}}}};
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        parse_fail("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        parse_fail("'" + path + "': " + e.what());
    }
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::InvalidParameter, "cannot write '" + path + "'");
    }
    out << text;
}

}  // namespace qfound
