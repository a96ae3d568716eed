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

#ifndef QFOUND_BOHM_H
#define QFOUND_BOHM_H

#include <cstdint>
#include <string_view>
#include <vector>

#include "qfound/hilbert.h"

namespace qfound {

/// STANDARD: the spin-up packet moves toward +z and an upward exit reads
/// sigma_z = +1. REVERSED: field gradient flipped, spin-up moves toward -z and
/// an upward exit reads sigma_z = -1.
enum class Procedure { Standard, Reversed };

std::string_view procedure_name(Procedure p);
Procedure parse_procedure(std::string_view name);

/// Numerical parameters, dimensionless units.
struct PacketParams {
    double sigma = 1.0;
    double speed = 1.0;
    double t_end = 6.0;
    double dt = 1e-3;
};

/// Idealized Stern-Gerlach state Psi(z) (a|up> + b|down>) whose two spinor
/// components ride rigidly translating Gaussian envelopes. At t = 0 both
/// envelopes are centred on z = 0, so the spatial profile is even in z.
struct SpinorPacketState {
    double sigma = 1.0;
    double speed = 1.0;
    Procedure procedure = Procedure::Standard;
    /// |a|^2 and |b|^2; the symmetric measurement state has both 1/2.
    double up_weight = 0.5;
    double down_weight = 0.5;

    static SpinorPacketState symmetric(const PacketParams &params, Procedure procedure);

    double up_center(double t) const;
    double down_center(double t) const;
    /// |a|^2 |G(z - up_center)|^2 with G the Gaussian of width sigma.
    double up_density(double z, double t) const;
    double down_density(double z, double t) const;
};

struct Velocity {
    double value;
    /// Both densities underflowed; value is then 0.
    bool degenerate;
};

/// Guiding velocity (j_up + j_down) / (rho_up + rho_down). For the symmetric
/// state v(0,t) = 0 and v(-z,t) = -v(z,t).
Velocity velocity_field(const SpinorPacketState &state, double z, double t);

struct TrajectorySample {
    double t;
    double z;
};

struct Trajectory {
    double initial_z;
    std::vector<TrajectorySample> samples;
    Procedure procedure;
    int raw_sign;
    int calibrated_outcome;
    double final_z;
    /// min over every integration step of z(t) * sign(z0).
    double min_signed_z;
    /// Number of steps where velocity_field reported a degenerate density.
    uint64_t degenerate_steps;
};

/// Classical RK4 on dz/dt = velocity_field. The step is t_end / ceil(t_end /
/// dt). `record_every` = k keeps every k-th step plus both endpoints; 0 keeps
/// only the endpoints.
///
/// Requires z0 != 0 (StartOnNode), dt <= sigma / (100 speed) (StepTooLarge)
/// and speed * t_end >= 5 sigma (InvalidParameter). For the symmetric state
/// the particle never crosses z = 0.
Trajectory integrate_trajectory(const SpinorPacketState &state, double z0, double t_end, double dt,
                                uint64_t record_every = 1);

struct ContextualityResult {
    int outcome_standard;
    int outcome_reversed;
    Trajectory standard;
    Trajectory reversed;
};

/// Both procedures from the same initial position.
ContextualityResult contextuality_demo(double z0, const PacketParams &params, uint64_t record_every = 0);

struct EnsembleReport {
    uint64_t n;
    uint64_t up_count;
    double up_freq;
    uint64_t seed;
    Procedure procedure;
    /// z0 draws per trial, in order.
    std::vector<double> initial_z;
    std::vector<int> raw_signs;
};

/// z0 ~ |Psi_0|^2 = N(0, sigma^2), redrawn on the measure-zero value 0.
/// "Up" means calibrated outcome +1.
EnsembleReport born_ensemble(const PacketParams &params, Procedure procedure, uint64_t n_trials, uint64_t seed);

/// Everything particle B's measurement depends on locally.
struct LocalInputs {
    double z0;
    Procedure procedure;
    PacketParams params;
};

struct PairResult {
    int a_outcome;
    int b_outcome;
    Trajectory a;
    Trajectory b;
    LocalInputs b_inputs;
    /// B's spinor after A's outcome collapses the singlet.
    StateVector b_spinor;
    /// Born probability of b_outcome given b_spinor.
    double b_probability;
};

/// A and B share the singlet (|ud> - |du>)/sqrt2. A's outcome comes from a
/// trajectory in the symmetric state. The singlet is then collapsed on A's
/// result and B, sitting at `b_inputs.z0`, is measured with the collapsed
/// spinor.
PairResult two_particle_demo(double za0, Procedure procedure_at_a, const PacketParams &params,
                             const LocalInputs &b_inputs);
PairResult two_particle_demo(double za0, Procedure procedure_at_a, const PacketParams &params);

}  // namespace qfound

#endif
