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

#ifndef QFOUND_MEASURE_H
#define QFOUND_MEASURE_H

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qfound/entangle.h"
#include "qfound/hilbert.h"
#include "qfound/rng.h"

namespace qfound {

/// Tensor slot an observable acts on. Alice holds the left factor (system 2,
/// psi basis), Bob the right one (system 1, phi basis).
enum class Slot { Alice, Bob };

enum class Order { AliceFirst, BobFirst };

std::string_view order_name(Order order);

struct BornOutcome {
    double eigenvalue;
    double probability;
};

struct MeasurementOutcome {
    double eigenvalue;
    StateVector post_state;
    double probability;
};

/// One entry per eigenvalue cluster of `o`, ascending. Probabilities sum to 1.
std::vector<BornOutcome> born_distribution(const StateVector &state, const ComplexMatrix &o, Slot slot,
                                           double tol = kDefaultTol);

/// Normalized (P_lambda (x) 1) state, or (1 (x) P_lambda) state for Slot::Bob.
/// Throws EigenvalueNotInSpectrum or ZeroProbabilityOutcome.
StateVector collapse(const StateVector &state, const ComplexMatrix &o, Slot slot, double eigenvalue,
                     double tol = kDefaultTol);

/// Samples an outcome by the Born rule and collapses onto it.
MeasurementOutcome measure(const StateVector &state, const ComplexMatrix &o, Slot slot, Rng &rng,
                           double tol = kDefaultTol);

struct EPRTrialRecord {
    std::string observable_id;
    double alice_value;
    double bob_value;
    Order order;
    uint64_t rng_seed;
    /// Identifies the entangled state the trial ran on; not part of the CSV.
    std::string state_tag;
};

/// Bob measures O, Alice measures the partner Otilde.
///
/// The partner's eigenvalues are snapped onto O's spectrum (they agree within
/// kClusterTol), so a matching trial records bit-identical values.
class EprExperiment {
   public:
    EprExperiment(const EntangledState &state, const ComplexMatrix &o, std::string observable_id = "O",
                  std::string state_tag = "", double tol = kDefaultTol);

    EPRTrialRecord run(Order order, uint64_t seed) const;

    const ComplexMatrix &observable() const noexcept {
        return o_;
    }
    const ComplexMatrix &partner() const noexcept {
        return partner_;
    }
    const std::string &observable_id() const noexcept {
        return id_;
    }
    /// O's cluster eigenvalues, ascending.
    const std::vector<double> &spectrum() const noexcept {
        return spectrum_;
    }

    /// Test hook: replaces the partner operator (e.g. with a faulty one).
    void override_partner(ComplexMatrix partner);

   private:
    struct Side {
        std::vector<double> values;
        std::vector<ComplexMatrix> projectors;
    };
    double sample(const Side &side, Slot slot, StateVector &state, Rng &rng) const;

    StateVector psi_;
    ComplexMatrix o_;
    ComplexMatrix partner_;
    std::string id_;
    std::string state_tag_;
    double tol_;
    std::vector<double> spectrum_;
    Side bob_;
    Side alice_;
};

EPRTrialRecord run_epr_trial(const EntangledState &state, const ComplexMatrix &o, Order order, uint64_t rng_seed,
                             double tol = kDefaultTol);

/// Trial i uses seed base_seed + i.
std::vector<EPRTrialRecord> run_epr_ensemble(const EprExperiment &experiment, Order order, uint64_t trials,
                                             uint64_t base_seed);

struct EprSummary {
    uint64_t trials = 0;
    uint64_t match_count = 0;
    /// eigenvalue -> relative frequency, per side.
    std::map<double, double> alice_marginals;
    std::map<double, double> bob_marginals;
};

EprSummary summarize(const std::vector<EPRTrialRecord> &records);

/// CSV with header `seed,observable,order,alice,bob`.
void write_trials_csv(std::ostream &out, const std::vector<EPRTrialRecord> &records);

/// Alice measures the partners of a commuting family of O's one after the
/// other, then Bob measures the O's. One record per observable; all records
/// share `seed`.
std::vector<EPRTrialRecord> run_context_trial(const EntangledState &state,
                                              const std::vector<ComplexMatrix> &observables,
                                              const std::vector<std::string> &labels, uint64_t seed,
                                              const std::string &state_tag = "", double tol = kDefaultTol);

struct ChiSquareResult {
    double statistic;
    int dof;
    double p_value;
};

/// Homogeneity test of two categorical samples given as category -> count.
ChiSquareResult chi_square_homogeneity(const std::map<std::string, uint64_t> &a,
                                       const std::map<std::string, uint64_t> &b);

/// Joint (alice, bob) category counts of a trial list.
std::map<std::string, uint64_t> joint_counts(const std::vector<EPRTrialRecord> &records);

}  // namespace qfound

#endif
