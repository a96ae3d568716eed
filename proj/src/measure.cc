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

#include "qfound/measure.h"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "qfound/error.h"

namespace qfound {

namespace {

StateVector project(const ComplexMatrix &projector, Slot slot, const StateVector &state) {
    return slot == Slot::Alice ? apply_on_first(projector, state) : apply_on_second(projector, state);
}

void validate(const StateVector &state, const ComplexMatrix &o, double tol) {
    if (state.dim() != o.dim() * o.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "state is not on C^N (x) C^N for this operator");
    }
    if (!o.is_hermitian(tol)) {
        throw Error(ErrorCode::NotHermitian, "hermiticity error " + std::to_string(o.hermiticity_error()));
    }
    if (!state.is_normalized(tol)) {
        throw Error(ErrorCode::NotNormalized, "state norm " + std::to_string(state.norm()));
    }
}

std::string format_value(double x) {
    std::ostringstream out;
    out << std::setprecision(17) << x;
    return out.str();
}

}  // namespace

std::string_view order_name(Order order) {
    return order == Order::AliceFirst ? "alice_first" : "bob_first";
}

std::vector<BornOutcome> born_distribution(const StateVector &state, const ComplexMatrix &o, Slot slot, double tol) {
    validate(state, o, tol);
    std::vector<BornOutcome> out;
    for (const auto &cluster : spectral_clusters(o, tol)) {
        double p = project(cluster.projector, slot, state).norm();
        out.push_back({cluster.value, p * p});
    }
    return out;
}

StateVector collapse(const StateVector &state, const ComplexMatrix &o, Slot slot, double eigenvalue, double tol) {
    validate(state, o, tol);
    for (const auto &cluster : spectral_clusters(o, tol)) {
        if (std::abs(cluster.value - eigenvalue) > kClusterTol) {
            continue;
        }
        StateVector projected = project(cluster.projector, slot, state);
        double norm = projected.norm();
        if (norm * norm <= tol * tol) {
            throw Error(ErrorCode::ZeroProbabilityOutcome, "outcome " + format_value(eigenvalue) + " has probability 0");
        }
        return projected.normalized();
    }
    throw Error(ErrorCode::EigenvalueNotInSpectrum, format_value(eigenvalue) + " is not an eigenvalue");
}

MeasurementOutcome measure(const StateVector &state, const ComplexMatrix &o, Slot slot, Rng &rng, double tol) {
    validate(state, o, tol);
    auto clusters = spectral_clusters(o, tol);
    std::vector<StateVector> branches;
    std::vector<double> probs;
    for (const auto &cluster : clusters) {
        branches.push_back(project(cluster.projector, slot, state));
        double n = branches.back().norm();
        probs.push_back(n * n);
    }
    double u = rng.uniform();
    double cumulative = 0;
    size_t pick = probs.size();
    for (size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] <= 0) {
            continue;
        }
        pick = k;
        cumulative += probs[k];
        if (u < cumulative) {
            break;
        }
    }
    return {clusters[pick].value, branches[pick].normalized(), probs[pick]};
}

EprExperiment::EprExperiment(const EntangledState &state, const ComplexMatrix &o, std::string observable_id,
                             std::string state_tag, double tol)
    : psi_(state.amplitudes()), o_(o), partner_(partner_operator(state, o, tol)), id_(std::move(observable_id)),
      state_tag_(std::move(state_tag)), tol_(tol) {
    for (auto &cluster : spectral_clusters(o_, tol_)) {
        spectrum_.push_back(cluster.value);
        bob_.values.push_back(cluster.value);
        bob_.projectors.push_back(std::move(cluster.projector));
    }
    override_partner(partner_);
}

void EprExperiment::override_partner(ComplexMatrix partner) {
    partner_ = std::move(partner);
    alice_ = Side{};
    for (auto &cluster : spectral_clusters(partner_, tol_)) {
        double value = cluster.value;
        for (double s : spectrum_) {
            if (std::abs(s - value) <= kClusterTol) {
                value = s;
                break;
            }
        }
        alice_.values.push_back(value);
        alice_.projectors.push_back(std::move(cluster.projector));
    }
}

double EprExperiment::sample(const Side &side, Slot slot, StateVector &state, Rng &rng) const {
    std::vector<StateVector> branches;
    std::vector<double> probs;
    for (const auto &p : side.projectors) {
        branches.push_back(project(p, slot, state));
        double n = branches.back().norm();
        probs.push_back(n * n);
    }
    double u = rng.uniform();
    double cumulative = 0;
    size_t pick = 0;
    for (size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] <= 0) {
            continue;
        }
        pick = k;
        cumulative += probs[k];
        if (u < cumulative) {
            break;
        }
    }
    state = branches[pick].normalized();
    return side.values[pick];
}

EPRTrialRecord EprExperiment::run(Order order, uint64_t seed) const {
    Rng rng(seed);
    StateVector state = psi_;
    EPRTrialRecord record{id_, 0.0, 0.0, order, seed, state_tag_};
    if (order == Order::AliceFirst) {
        record.alice_value = sample(alice_, Slot::Alice, state, rng);
        record.bob_value = sample(bob_, Slot::Bob, state, rng);
    } else {
        record.bob_value = sample(bob_, Slot::Bob, state, rng);
        record.alice_value = sample(alice_, Slot::Alice, state, rng);
    }
    return record;
}

EPRTrialRecord run_epr_trial(const EntangledState &state, const ComplexMatrix &o, Order order, uint64_t rng_seed,
                             double tol) {
    return EprExperiment(state, o, "O", "", tol).run(order, rng_seed);
}

std::vector<EPRTrialRecord> run_epr_ensemble(const EprExperiment &experiment, Order order, uint64_t trials,
                                             uint64_t base_seed) {
    std::vector<EPRTrialRecord> out;
    out.reserve(trials);
    for (uint64_t i = 0; i < trials; ++i) {
        out.push_back(experiment.run(order, base_seed + i));
    }
    return out;
}

EprSummary summarize(const std::vector<EPRTrialRecord> &records) {
    EprSummary summary;
    summary.trials = records.size();
    std::map<double, uint64_t> alice, bob;
    for (const auto &r : records) {
        if (r.alice_value == r.bob_value) {
            ++summary.match_count;
        }
        ++alice[r.alice_value];
        ++bob[r.bob_value];
    }
    double n = static_cast<double>(std::max<uint64_t>(summary.trials, 1));
    for (auto [value, count] : alice) {
        summary.alice_marginals[value] = static_cast<double>(count) / n;
    }
    for (auto [value, count] : bob) {
        summary.bob_marginals[value] = static_cast<double>(count) / n;
    }
    return summary;
}

void write_trials_csv(std::ostream &out, const std::vector<EPRTrialRecord> &records) {
    out << "seed,observable,order,alice,bob\n";
    for (const auto &r : records) {
        out << r.rng_seed << ',' << r.observable_id << ',' << order_name(r.order) << ',' << format_value(r.alice_value)
            << ',' << format_value(r.bob_value) << '\n';
    }
}

std::vector<EPRTrialRecord> run_context_trial(const EntangledState &state,
                                              const std::vector<ComplexMatrix> &observables,
                                              const std::vector<std::string> &labels, uint64_t seed,
                                              const std::string &state_tag, double tol) {
    if (observables.size() != labels.size()) {
        throw Error(ErrorCode::DimensionMismatch, "one label per observable is required");
    }
    for (size_t i = 0; i < observables.size(); ++i) {
        for (size_t j = i + 1; j < observables.size(); ++j) {
            if (commutator(observables[i], observables[j]).max_abs() > tol) {
                throw Error(ErrorCode::InvalidParameter, labels[i] + " and " + labels[j] + " do not commute");
            }
        }
    }
    Rng rng(seed);
    StateVector psi = state.amplitudes();
    std::vector<EPRTrialRecord> records;
    for (size_t i = 0; i < observables.size(); ++i) {
        ComplexMatrix partner = partner_operator(state, observables[i], tol);
        auto outcome = measure(psi, partner, Slot::Alice, rng, tol);
        psi = outcome.post_state;
        double value = outcome.eigenvalue;
        for (const auto &cluster : spectral_clusters(observables[i], tol)) {
            if (std::abs(cluster.value - value) <= kClusterTol) {
                value = cluster.value;
                break;
            }
        }
        records.push_back({labels[i], value, 0.0, Order::AliceFirst, seed, state_tag});
    }
    for (size_t i = 0; i < observables.size(); ++i) {
        auto outcome = measure(psi, observables[i], Slot::Bob, rng, tol);
        psi = outcome.post_state;
        records[i].bob_value = outcome.eigenvalue;
    }
    return records;
}

ChiSquareResult chi_square_homogeneity(const std::map<std::string, uint64_t> &a,
                                       const std::map<std::string, uint64_t> &b) {
    std::set<std::string> categories;
    double total_a = 0, total_b = 0;
    for (auto &[k, v] : a) {
        categories.insert(k);
        total_a += static_cast<double>(v);
    }
    for (auto &[k, v] : b) {
        categories.insert(k);
        total_b += static_cast<double>(v);
    }
    double total = total_a + total_b;
    double stat = 0;
    int used = 0;
    for (const auto &k : categories) {
        double oa = a.contains(k) ? static_cast<double>(a.at(k)) : 0.0;
        double ob = b.contains(k) ? static_cast<double>(b.at(k)) : 0.0;
        double col = oa + ob;
        if (col == 0) {
            continue;
        }
        ++used;
        double ea = total_a * col / total, eb = total_b * col / total;
        if (ea > 0) {
            stat += (oa - ea) * (oa - ea) / ea;
        }
        if (eb > 0) {
            stat += (ob - eb) * (ob - eb) / eb;
        }
    }
    int dof = std::max(used - 1, 0);
    double p = dof == 0 ? 1.0 : boost::math::gamma_q(dof / 2.0, stat / 2.0);
    return {stat, dof, p};
}

std::map<std::string, uint64_t> joint_counts(const std::vector<EPRTrialRecord> &records) {
    std::map<std::string, uint64_t> counts;
    for (const auto &r : records) {
        ++counts[format_value(r.alice_value) + "|" + format_value(r.bob_value)];
    }
    return counts;
}

}  // namespace qfound
