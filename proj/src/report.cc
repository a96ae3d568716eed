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

#include <algorithm>
#include <array>
#include <cmath>

#include "qfound/cli.h"
#include "qfound/entangle.h"
#include "qfound/measure.h"
#include "qfound/nogo.h"
#include "qfound/sampling.h"

namespace qfound::cli {

namespace {

// || (P (x) 1 - 1 (x) O) Psi ||, with P supplied by the caller.
double residual_with(const EntangledState &state, const ComplexMatrix &partner, const ComplexMatrix &o) {
    auto psi = state.amplitudes();
    return (apply_on_first(partner, psi) - apply_on_second(o, psi)).norm();
}

json singlet_premise(const ReportConfig &config) {
    auto state = singlet();
    auto o = pauli_z();
    EprExperiment exp(state, o, "sigma_z", "singlet");
    if (config.inject_faulty_partner) {
        exp.override_partner(o);
    }
    double residual = residual_with(state, exp.partner(), o);
    uint64_t half = std::max<uint64_t>(1, config.trials / 2);
    auto records = run_epr_ensemble(exp, Order::AliceFirst, half, config.seed);
    auto more = run_epr_ensemble(exp, Order::BobFirst, half, config.seed + half);
    records.insert(records.end(), more.begin(), more.end());
    auto summary = summarize(records);
    double match_rate = static_cast<double>(summary.match_count) / static_cast<double>(summary.trials);
    bool ok = residual <= config.tol && match_rate == 1.0;
    return {{"name", "singlet_sigma_z"},
            {"description", "Alice's partner outcome equals Bob's sigma_z outcome on the singlet"},
            {"residual", residual},
            {"trials", summary.trials},
            {"match_rate", match_rate},
            {"faulty_partner_injected", config.inject_faulty_partner},
            {"ok", ok}};
}

json random_sweep_premise(const ReportConfig &config) {
    Rng rng(config.seed);
    double worst = 0;
    uint64_t count = 0;
    for (size_t dim = 2; dim <= 5; ++dim) {
        for (int k = 0; k < 20; ++k) {
            auto state = make_max_entangled(random_basis(dim, rng), random_basis(dim, rng));
            worst = std::max(worst, check_perfect_correlation(state, random_hermitian(dim, rng)));
            ++count;
        }
    }
    return {{"name", "random_hermitian_sweep"},
            {"description", "every Hermitian O has a perfectly correlated partner, dimensions 2 to 5"},
            {"observables", count},
            {"max_residual", worst},
            {"ok", worst <= config.tol}};
}

json ks_premise(const ReportConfig &config) {
    Rng rng(config.seed + 1);
    auto state = make_max_entangled(random_basis(3, rng), random_basis(3, rng));
    auto rays = peres_rays();
    double worst = 0;
    uint64_t count = 0;
    for (const auto &t : rays.triples()) {
        const auto &r = rays.rays();
        auto squares = spin1_squares({r[t[0]].direction, r[t[1]].direction, r[t[2]].direction});
        for (const auto &s : squares) {
            worst = std::max(worst, check_perfect_correlation(state, s));
            ++count;
        }
    }
    return {{"name", "spin1_squares"},
            {"description", "squared spin-1 components along every Peres triple, spin-1 pair in a random maximally "
                            "entangled state"},
            {"observables", count},
            {"max_residual", worst},
            {"ok", worst <= config.tol}};
}

json mermin_premise(const ReportConfig &config, const EntangledState &pair) {
    auto sq = mermin_square();
    double worst = 0;
    for (const auto &row : sq.cells) {
        for (const auto &cell : row) {
            worst = std::max(worst, check_perfect_correlation(pair, cell));
        }
    }
    return {{"name", "mermin_observables"},
            {"description", "the nine two-qubit observables on a product of two singlets"},
            {"observables", 9},
            {"max_residual", worst},
            {"ok", worst <= config.tol}};
}

json ks_impossibility() {
    auto result = search_coloring(peres_rays());
    const auto *cert = std::get_if<UnsatCertificate>(&result);
    json out = {{"name", "kochen_specker_peres33"}, {"rays", 33}};
    if (cert) {
        out["result"] = "UNSAT";
        out["nodes"] = cert->stats.nodes;
    } else {
        out["result"] = "SAT";
        out["nodes"] = std::get<ColoringFound>(result).stats.nodes;
    }
    out["ok"] = cert != nullptr;
    return out;
}

json mermin_impossibility() {
    auto rep = refute_product_valuemap(mermin_square());
    double worst = 0;
    for (int k = 0; k < 3; ++k) {
        worst = std::max({worst, rep.check.row_product_error[k], rep.check.col_product_error[k]});
    }
    bool ok = rep.satisfying == 0 && rep.parity_product == -1 && worst <= kDefaultTol &&
              rep.check.max_commutator <= kDefaultTol;
    return {{"name", "mermin_square"},
            {"assignments_checked", rep.assignments_checked},
            {"satisfying", rep.satisfying},
            {"parity_product", rep.parity_product},
            {"max_product_error", worst},
            {"ok", ok}};
}

// Each row and column of the square is measured as one context. Locality plus
// perfect correlations would let Alice's outcomes define a value for every
// cell; the pipeline records where that inferred map breaks.
json mermin_pipeline(const ReportConfig &config, const EntangledState &pair) {
    auto sq = mermin_square();
    std::vector<std::string> all_labels;
    for (const auto &row : sq.labels) {
        all_labels.insert(all_labels.end(), row.begin(), row.end());
    }

    std::vector<EPRTrialRecord> records;
    bool products_ok = true;
    for (int c = 0; c < 6; ++c) {
        std::vector<ComplexMatrix> ops;
        std::vector<std::string> labels;
        for (int k = 0; k < 3; ++k) {
            int i = c < 3 ? c : k;
            int j = c < 3 ? k : c - 3;
            ops.push_back(sq.cells[i][j]);
            labels.push_back(sq.labels[i][j]);
        }
        int target = c < 3 ? sq.row_signs[c] : sq.col_signs[c - 3];
        auto trial = run_context_trial(pair, ops, labels, config.seed + static_cast<uint64_t>(c), "two_singlets");
        double product = 1;
        for (const auto &rec : trial) {
            product *= rec.bob_value;
        }
        products_ok = products_ok && std::abs(product - target) <= kClusterTol;
        records.insert(records.end(), trial.begin(), trial.end());
    }

    auto vm = valuemap_from_trials(records, all_labels);
    std::vector<std::string> conflicted;
    for (const auto &[label, values] : vm.conflicts) {
        conflicted.push_back(label);
    }
    bool ok = vm.correlation_failures.empty() && products_ok && vm.missing.empty() && !conflicted.empty();
    return {{"name", "mermin_context_pipeline"},
            {"contexts", 6},
            {"records", records.size()},
            {"correlation_failures", vm.correlation_failures},
            {"context_products_hold", products_ok},
            {"conflicting_observables", conflicted},
            {"ok", ok}};
}

bool all_ok(const json &items) {
    return std::all_of(items.begin(), items.end(), [](const json &j) { return j.at("ok").get<bool>(); });
}

}  // namespace

CommandResult cmd_nonlocality_report(const ReportConfig &config) {
    auto pair = product_of_entangled(singlet(), singlet());

    json premises = json::array();
    premises.push_back(singlet_premise(config));
    premises.push_back(random_sweep_premise(config));
    premises.push_back(ks_premise(config));
    premises.push_back(mermin_premise(config, pair));

    json impossibility = json::array();
    impossibility.push_back(ks_impossibility());
    impossibility.push_back(mermin_impossibility());
    impossibility.push_back(mermin_pipeline(config, pair));

    bool premises_ok = all_ok(premises);
    bool impossible_ok = all_ok(impossibility);
    bool ok = premises_ok && impossible_ok;

    std::string statement;
    if (ok) {
        statement =
            "Perfect correlations hold for every tested observable, so locality would force Bob's results to be "
            "fixed in advance by a non-contextual value map. No such map exists. The locality assumption is false.";
    } else {
        statement = "At least one check failed; no conclusion is drawn.";
    }

    CommandResult r;
    r.report["seed"] = config.seed;
    r.report["tol"] = config.tol;
    r.report["premises"] = premises;
    r.report["value_map_impossibility"] = impossibility;
    r.report["conclusion"] = {{"premises_verified", premises_ok},
                              {"value_map_nonexistence_verified", impossible_ok},
                              {"locality_untenable", ok},
                              {"statement", statement}};
    r.report["ok"] = ok;
    r.exit_code = ok ? kExitOk : kExitContract;
    return r;
}

}  // namespace qfound::cli
