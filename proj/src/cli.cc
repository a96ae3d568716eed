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

#include "qfound/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "qfound/entangle.h"
#include "qfound/error.h"
#include "qfound/measure.h"
#include "qfound/nogo.h"
#include "qfound/sampling.h"

namespace qfound::cli {

namespace {

std::string num_key(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

json spectrum_json(const ComplexMatrix &m) {
    json out = json::array();
    for (const auto &c : spectral_clusters(m)) {
        out.push_back({{"value", c.value}, {"multiplicity", c.vectors.size()}});
    }
    return out;
}

std::vector<double> sorted_eigenvalues(const ComplexMatrix &m) {
    std::vector<double> out;
    for (const auto &p : eigendecompose(m)) {
        out.push_back(p.value);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void write_samples_csv(const std::string &path, const Trajectory &tr) {
    std::ostringstream s;
    s << std::setprecision(17) << "t,z\n";
    for (const auto &sample : tr.samples) {
        s << sample.t << ',' << sample.z << '\n';
    }
    write_text_file(path, s.str());
}

void check_params(const PacketParams &p) {
    if (!(p.sigma > 0) || !(p.speed > 0) || !(p.t_end > 0) || !(p.dt > 0)) {
        throw Error(ErrorCode::InvalidParameter, "sigma, speed, t_end and dt must be positive");
    }
}

EntangledState random_max_entangled(size_t dim, Rng &rng) {
    auto alice = random_basis(dim, rng);
    auto bob = random_basis(dim, rng);
    return make_max_entangled(std::move(alice), std::move(bob));
}

}  // namespace

CommandResult cmd_epr(const EprConfig &config) {
    if (config.trials < 1) {
        throw Error(ErrorCode::InvalidParameter, "--trials must be at least 1");
    }
    Rng rng(config.seed);
    std::optional<EntangledState> state;
    ComplexMatrix o;
    std::string tag;
    if (config.observable == "sigma_z") {
        if (config.dim != 2) {
            throw Error(ErrorCode::InvalidParameter, "sigma_z needs --dim 2");
        }
        state = singlet();
        o = pauli_z();
        tag = "singlet";
    } else if (config.observable == "random") {
        if (config.dim < 2) {
            throw Error(ErrorCode::InvalidParameter, "--dim must be at least 2");
        }
        state = random_max_entangled(config.dim, rng);
        o = random_hermitian(config.dim, rng);
        tag = "random" + std::to_string(config.dim);
    } else {
        throw Error(ErrorCode::InvalidParameter, "unknown observable '" + config.observable + "'");
    }

    EprExperiment exp(*state, o, config.observable, tag);
    auto alice_first = run_epr_ensemble(exp, Order::AliceFirst, config.trials, config.seed);
    auto bob_first = run_epr_ensemble(exp, Order::BobFirst, config.trials, config.seed + config.trials);
    std::vector<EPRTrialRecord> all = alice_first;
    all.insert(all.end(), bob_first.begin(), bob_first.end());
    auto total = summarize(all);

    double match_rate = static_cast<double>(total.match_count) / static_cast<double>(total.trials);
    double n = static_cast<double>(total.trials);
    bool marginals_ok = true;
    json born = json::object();
    for (const auto &b : born_distribution(state->amplitudes(), o, Slot::Bob)) {
        double bound = 5.0 * std::sqrt(b.probability * (1.0 - b.probability) / n) + 1e-12;
        born[num_key(b.eigenvalue)] = {{"probability", b.probability}, {"bound", bound}};
        for (const auto *m : {&total.alice_marginals, &total.bob_marginals}) {
            auto it = m->find(b.eigenvalue);
            double freq = it == m->end() ? 0.0 : it->second;
            marginals_ok = marginals_ok && std::abs(freq - b.probability) <= bound;
        }
    }

    CommandResult r;
    r.report["observable"] = config.observable;
    r.report["dim"] = config.dim;
    r.report["seed"] = config.seed;
    r.report["trials_per_order"] = config.trials;
    r.report["summary"] = epr_summary_to_json(total);
    r.report["match_rate"] = match_rate;
    r.report["born"] = born;
    r.report["by_order"] = {{"alice_first", epr_summary_to_json(summarize(alice_first))},
                            {"bob_first", epr_summary_to_json(summarize(bob_first))}};
    auto chi = chi_square_homogeneity(joint_counts(alice_first), joint_counts(bob_first));
    r.report["order_independence"] = {{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}};
    r.report["contracts"] = {{"match_rate_is_one", match_rate == 1.0}, {"marginals_within_bound", marginals_ok}};
    bool ok = match_rate == 1.0 && marginals_ok;
    r.report["ok"] = ok;
    r.exit_code = ok ? kExitOk : kExitContract;

    if (config.csv_path) {
        std::ostringstream s;
        write_trials_csv(s, all);
        write_text_file(*config.csv_path, s.str());
    }
    return r;
}

CommandResult cmd_partner(const PartnerConfig &config) {
    Rng rng(config.seed);
    ComplexMatrix o;
    std::optional<EntangledState> state;
    std::string source;
    if (config.operator_path) {
        o = matrix_from_json(read_json_file(*config.operator_path));
        source = *config.operator_path;
    } else if (config.fixture == "remark1") {
        o = pauli_z();
        state = singlet();
        source = "remark1";
    } else if (config.fixture == "identity" || config.fixture == "random") {
        if (config.dim < 2) {
            throw Error(ErrorCode::InvalidParameter, "--dim must be at least 2");
        }
        state = random_max_entangled(config.dim, rng);
        o = config.fixture == "identity" ? ComplexMatrix::identity(config.dim) : random_hermitian(config.dim, rng);
        source = config.fixture;
    } else {
        throw Error(ErrorCode::InvalidParameter, "unknown fixture '" + config.fixture + "'");
    }
    if (!o.is_hermitian()) {
        throw Error(ErrorCode::NotHermitian, "operator is not Hermitian");
    }
    if (config.state_path) {
        state = state_from_json(read_json_file(*config.state_path));
    } else if (!state) {
        state = o.dim() == 2 ? singlet() : make_max_entangled(standard_basis(o.dim()), standard_basis(o.dim()));
    }
    if (state->dim() != o.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "operator and state dimensions differ");
    }

    auto partner = partner_operator(*state, o);
    double residual = check_perfect_correlation(*state, o);
    auto ev_o = sorted_eigenvalues(o);
    auto ev_p = sorted_eigenvalues(partner);
    double spectral_gap = 0;
    for (size_t k = 0; k < ev_o.size(); ++k) {
        spectral_gap = std::max(spectral_gap, std::abs(ev_o[k] - ev_p[k]));
    }

    CommandResult r;
    r.report["source"] = source;
    r.report["state"] = state_to_json(*state);
    r.report["operator"] = matrix_to_json(o);
    r.report["partner"] = matrix_to_json(partner);
    r.report["spectrum_operator"] = spectrum_json(o);
    r.report["spectrum_partner"] = spectrum_json(partner);
    r.report["spectral_difference"] = spectral_gap;
    r.report["diff_to_operator"] = max_abs_diff(partner, o);
    r.report["diff_to_minus_operator"] = max_abs_diff(partner, -1.0 * o);
    r.report["residual"] = residual;
    r.report["tol"] = config.tol;
    bool ok = residual <= config.tol && spectral_gap <= config.tol;
    r.report["ok"] = ok;
    r.exit_code = ok ? kExitOk : kExitContract;
    return r;
}

CommandResult cmd_ks(const KsConfig &config) {
    std::optional<RaySet> rs;
    if (config.set == "peres33") {
        rs = peres_rays();
    } else if (config.set == "coordinate-triad") {
        rs = coordinate_triad();
    } else {
        rs = rayset_from_json(read_json_file(config.set));
    }
    validate(*rs);
    auto result = search_coloring(*rs);

    CommandResult r;
    r.report["set"] = config.set;
    r.report["rays"] = rs->size();
    r.report["triples"] = rs->triples().size();
    r.report["orthogonal_pairs"] = rs->pairs().size();
    bool ok = true;
    if (const auto *found = std::get_if<ColoringFound>(&result)) {
        auto violations = coloring_violations(*rs, found->coloring);
        ok = violations.empty() && found->coloring.complete();
        r.report["result"] = "SAT";
        r.report["coloring"] = coloring_to_json(found->coloring);
        r.report["violations"] = violations;
        r.report["nodes"] = found->stats.nodes;
        r.report["max_depth"] = found->stats.max_depth;
    } else {
        const auto &cert = std::get<UnsatCertificate>(result);
        r.report["result"] = "UNSAT";
        r.report["certificate"] = certificate_to_json(cert);
        r.report["nodes"] = cert.stats.nodes;
        r.report["max_depth"] = cert.stats.max_depth;
    }
    r.report["ok"] = ok;
    r.exit_code = ok ? kExitOk : kExitContract;
    return r;
}

CommandResult cmd_mermin(const MerminConfig &config) {
    auto sq = mermin_square();
    auto rep = refute_product_valuemap(sq, config.tol);

    CommandResult r;
    json products = json::array();
    double worst = 0;
    for (int k = 0; k < 3; ++k) {
        const auto &l = sq.labels;
        products.push_back({{"context", "row" + std::to_string(k + 1)},
                            {"cells", {l[k][0], l[k][1], l[k][2]}},
                            {"target", sq.row_signs[k]},
                            {"error", rep.check.row_product_error[k]}});
        worst = std::max(worst, rep.check.row_product_error[k]);
    }
    for (int k = 0; k < 3; ++k) {
        const auto &l = sq.labels;
        products.push_back({{"context", "col" + std::to_string(k + 1)},
                            {"cells", {l[0][k], l[1][k], l[2][k]}},
                            {"target", sq.col_signs[k]},
                            {"error", rep.check.col_product_error[k]}});
        worst = std::max(worst, rep.check.col_product_error[k]);
    }
    r.report["products"] = products;
    r.report["max_commutator"] = rep.check.max_commutator;
    r.report["max_square_error"] = rep.check.max_square_error;
    r.report["assignments_checked"] = rep.assignments_checked;
    r.report["satisfying"] = rep.satisfying;
    r.report["parity_product"] = rep.parity_product;
    r.report["tol"] = config.tol;
    bool ok = rep.satisfying == 0 && rep.parity_product == -1 && worst <= config.tol &&
              rep.check.max_commutator <= config.tol && rep.check.max_square_error <= config.tol;
    r.report["ok"] = ok;
    r.exit_code = ok ? kExitOk : kExitContract;
    return r;
}

CommandResult cmd_bohm(const BohmConfig &config) {
    check_params(config.params);
    const auto &p = config.params;
    CommandResult r;
    r.report["mode"] = config.mode;
    r.report["params"] = {{"sigma", p.sigma}, {"speed", p.speed}, {"t_end", p.t_end}, {"dt", p.dt}};
    bool ok = true;

    if (config.mode == "traj") {
        auto state = SpinorPacketState::symmetric(p, config.procedure);
        auto tr = integrate_trajectory(state, config.z0, p.t_end, p.dt, config.record_every);
        ok = tr.min_signed_z > 0;
        r.report["trajectory"] = trajectory_manifest(tr);
        r.report["final_z"] = tr.final_z;
        r.report["min_signed_z"] = tr.min_signed_z;
        r.report["degenerate_steps"] = tr.degenerate_steps;
        if (config.csv_path) {
            write_samples_csv(*config.csv_path, tr);
        }
    } else if (config.mode == "context") {
        auto demo = contextuality_demo(config.z0, p, config.record_every);
        int product = demo.outcome_standard * demo.outcome_reversed;
        ok = product == -1;
        r.report["standard"] = trajectory_manifest(demo.standard);
        r.report["reversed"] = trajectory_manifest(demo.reversed);
        r.report["outcome_standard"] = demo.outcome_standard;
        r.report["outcome_reversed"] = demo.outcome_reversed;
        r.report["product"] = product;
        if (config.csv_path) {
            write_samples_csv(*config.csv_path + "_standard.csv", demo.standard);
            write_samples_csv(*config.csv_path + "_reversed.csv", demo.reversed);
        }
    } else if (config.mode == "ensemble") {
        auto rep = born_ensemble(p, config.procedure, config.n, config.seed);
        double bound = 5.0 * std::sqrt(0.25 / static_cast<double>(config.n));
        ok = std::abs(rep.up_freq - 0.5) <= bound;
        r.report["ensemble"] = ensemble_to_json(rep);
        r.report["bound"] = bound;
        if (config.csv_path) {
            std::ostringstream s;
            s << std::setprecision(17) << "z0,raw_sign\n";
            for (size_t k = 0; k < rep.initial_z.size(); ++k) {
                s << rep.initial_z[k] << ',' << rep.raw_signs[k] << '\n';
            }
            write_text_file(*config.csv_path, s.str());
        }
    } else if (config.mode == "pair") {
        LocalInputs b{config.zb0.value_or(0.5 * p.sigma), Procedure::Standard, p};
        auto pair = two_particle_demo(config.z0, config.procedure, p, b);
        ok = pair.b_outcome == -pair.a_outcome;
        r.report["a"] = trajectory_manifest(pair.a);
        r.report["b"] = trajectory_manifest(pair.b);
        r.report["a_outcome"] = pair.a_outcome;
        r.report["b_outcome"] = pair.b_outcome;
        r.report["b_inputs"] = {{"z0", pair.b_inputs.z0}, {"procedure", procedure_name(pair.b_inputs.procedure)}};
        r.report["b_probability"] = pair.b_probability;
        r.report["b_spinor"] = vector_to_json(pair.b_spinor);
        if (config.csv_path) {
            write_samples_csv(*config.csv_path + "_a.csv", pair.a);
            write_samples_csv(*config.csv_path + "_b.csv", pair.b);
        }
    } else {
        throw Error(ErrorCode::InvalidParameter, "unknown bohm mode '" + config.mode + "'");
    }
    r.report["ok"] = ok;
    r.exit_code = ok ? kExitOk : kExitContract;
    return r;
}

namespace {

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

void collect_params(const CLI::App *app, RunConfig &rc) {
    for (const auto *opt : app->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") {
            continue;
        }
        std::string name = opt->get_name();
        while (!name.empty() && name.front() == '-') {
            name.erase(name.begin());
        }
        const auto &res = opt->results();
        rc.params[name] = res.empty() ? "true" : res.back();
    }
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum foundations toolkit: perfect correlations, no-go theorems, Bohmian spin."};
    app.name("qfound");
    app.require_subcommand(1);

    uint64_t seed = 0;
    std::optional<std::string> out_path;
    bool reproducible = false;
    auto common = [&](CLI::App *sub) {
        sub->add_option("--seed", seed, "RNG seed")->capture_default_str();
        sub->add_option("--out", out_path, "Also write the JSON report to this path");
        sub->add_flag("--reproducible", reproducible, "Omit the generated_at timestamp");
    };

    EprConfig epr;
    auto *epr_cmd = app.add_subcommand("epr", "EPR trials on a maximally entangled state");
    common(epr_cmd);
    epr_cmd->add_option("--trials", epr.trials, "Trials per measurement order")->capture_default_str();
    epr_cmd->add_option("--dim", epr.dim, "Hilbert space dimension")->capture_default_str();
    epr_cmd->add_option("--observable", epr.observable, "sigma_z or random")->capture_default_str();
    epr_cmd->add_option("--csv", epr.csv_path, "Write per-trial CSV");

    PartnerConfig partner;
    auto *partner_cmd = app.add_subcommand("partner", "Partner operator and perfect-correlation residual");
    common(partner_cmd);
    partner_cmd->add_option("--fixture", partner.fixture, "remark1, identity or random")->capture_default_str();
    partner_cmd->add_option("--operator", partner.operator_path, "Operator JSON file");
    partner_cmd->add_option("--state", partner.state_path, "Entangled state JSON file");
    partner_cmd->add_option("--dim", partner.dim, "Dimension for generated fixtures")->capture_default_str();
    partner_cmd->add_option("--tol", partner.tol, "Residual tolerance")->capture_default_str();

    KsConfig ks;
    auto *ks_cmd = app.add_subcommand("ks", "Kochen-Specker coloring search");
    common(ks_cmd);
    ks_cmd->add_option("--set", ks.set, "peres33, coordinate-triad or a ray-set JSON path")->capture_default_str();

    MerminConfig mermin;
    auto *mermin_cmd = app.add_subcommand("mermin", "Mermin square refutation");
    common(mermin_cmd);
    mermin_cmd->add_option("--tol", mermin.tol, "Operator identity tolerance")->capture_default_str();

    BohmConfig bohm;
    std::string proc_name = "standard";
    auto *bohm_cmd = app.add_subcommand("bohm", "Bohmian idealized spin measurement");
    bohm_cmd->require_subcommand(1);
    for (const char *mode : {"traj", "context", "ensemble", "pair"}) {
        auto *sub = bohm_cmd->add_subcommand(mode);
        common(sub);
        sub->add_option("--z0", bohm.z0, "Initial position")->capture_default_str();
        sub->add_option("--proc", proc_name, "standard or reversed")->capture_default_str();
        sub->add_option("--sigma", bohm.params.sigma)->capture_default_str();
        sub->add_option("--speed", bohm.params.speed)->capture_default_str();
        sub->add_option("--t-end", bohm.params.t_end)->capture_default_str();
        sub->add_option("--dt", bohm.params.dt)->capture_default_str();
        sub->add_option("--record-every", bohm.record_every)->capture_default_str();
        sub->add_option("--csv", bohm.csv_path, "CSV output path (prefix for multi-file modes)");
        if (std::string(mode) == "ensemble") {
            sub->add_option("--n", bohm.n, "Number of trajectories")->capture_default_str();
        }
        if (std::string(mode) == "pair") {
            sub->add_option("--zb0", bohm.zb0, "Initial position of particle B");
        }
    }

    ReportConfig report;
    auto *report_cmd = app.add_subcommand("report", "Chain all checks into the nonlocality argument");
    common(report_cmd);
    report_cmd->add_option("--trials", report.trials, "EPR trials for the singlet premise")->capture_default_str();
    report_cmd->add_option("--tol", report.tol, "Perfect-correlation tolerance")->capture_default_str();
    report_cmd->add_flag("--inject-fault", report.inject_faulty_partner)->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    RunConfig rc;
    rc.output_path = out_path;
    rc.reproducible = reproducible;
    CommandResult result;
    try {
        if (epr_cmd->parsed()) {
            rc.command = "epr";
            epr.seed = seed;
            collect_params(epr_cmd, rc);
            result = cmd_epr(epr);
        } else if (partner_cmd->parsed()) {
            rc.command = "partner";
            partner.seed = seed;
            collect_params(partner_cmd, rc);
            result = cmd_partner(partner);
        } else if (ks_cmd->parsed()) {
            rc.command = "ks";
            collect_params(ks_cmd, rc);
            result = cmd_ks(ks);
        } else if (mermin_cmd->parsed()) {
            rc.command = "mermin";
            collect_params(mermin_cmd, rc);
            result = cmd_mermin(mermin);
        } else if (bohm_cmd->parsed()) {
            const CLI::App *sub = bohm_cmd->get_subcommands().front();
            bohm.mode = sub->get_name();
            bohm.seed = seed;
            bohm.procedure = parse_procedure(proc_name);
            rc.command = "bohm " + bohm.mode;
            collect_params(sub, rc);
            result = cmd_bohm(bohm);
        } else {
            rc.command = "report";
            report.seed = seed;
            collect_params(report_cmd, rc);
            result = cmd_nonlocality_report(report);
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    result.report["command"] = rc.command;
    result.report["config"] = rc.params;
    if (!rc.reproducible) {
        result.report["generated_at"] = utc_timestamp();
    }
    std::string text = result.report.dump(2) + "\n";
    out << text;
    if (rc.output_path) {
        try {
            write_text_file(*rc.output_path, text);
        } catch (const Error &e) {
            err << "error: " << e.what() << '\n';
            return kExitUsage;
        }
    }
    return result.exit_code;
}

}  // namespace qfound::cli
