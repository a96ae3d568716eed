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

#include "qfound/bohm.h"

#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>

#include "qfound/error.h"
#include "qfound/measure.h"
#include "qfound/rng.h"

namespace qfound {

namespace {

const double kLogDblMin = std::log(DBL_MIN);
const double kInf = std::numeric_limits<double>::infinity();

double log_density(double weight, double z, double center, double sigma) {
    if (weight <= 0) {
        return -std::numeric_limits<double>::infinity();
    }
    double u = (z - center) / sigma;
    return std::log(weight) - 0.5 * u * u - std::log(std::sqrt(2.0 * std::numbers::pi) * sigma);
}

int sign_of(double z) {
    return z > 0 ? 1 : -1;
}

void check_params(const SpinorPacketState &state) {
    if (!(state.sigma > 0) || !(state.speed > 0)) {
        throw Error(ErrorCode::InvalidParameter, "sigma and speed must be positive");
    }
    if (state.up_weight < 0 || state.down_weight < 0 || state.up_weight + state.down_weight <= 0) {
        throw Error(ErrorCode::InvalidParameter, "spinor weights must be non-negative and not both zero");
    }
}

}  // namespace

std::string_view procedure_name(Procedure p) {
    return p == Procedure::Standard ? "standard" : "reversed";
}

Procedure parse_procedure(std::string_view name) {
    if (name == "standard") {
        return Procedure::Standard;
    }
    if (name == "reversed") {
        return Procedure::Reversed;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown procedure '" + std::string(name) + "'");
}

SpinorPacketState SpinorPacketState::symmetric(const PacketParams &params, Procedure procedure) {
    return SpinorPacketState{params.sigma, params.speed, procedure, 0.5, 0.5};
}

double SpinorPacketState::up_center(double t) const {
    return procedure == Procedure::Standard ? speed * t : -speed * t;
}

double SpinorPacketState::down_center(double t) const {
    return -up_center(t);
}

double SpinorPacketState::up_density(double z, double t) const {
    return std::exp(log_density(up_weight, z, up_center(t), sigma));
}

double SpinorPacketState::down_density(double z, double t) const {
    return std::exp(log_density(down_weight, z, down_center(t), sigma));
}

namespace {

// Time-independent pieces of the two log-densities.
struct FieldConstants {
    double log_up;
    double log_down;
    double log_ratio;
    double up_velocity;
    double inv_sigma;

    explicit FieldConstants(const SpinorPacketState &state) {
        inv_sigma = 1.0 / state.sigma;
        double log_norm = std::log(std::sqrt(2.0 * std::numbers::pi) * state.sigma);
        log_up = state.up_weight > 0 ? std::log(state.up_weight) - log_norm : -kInf;
        log_down = state.down_weight > 0 ? std::log(state.down_weight) - log_norm : -kInf;
        log_ratio = log_up - log_down;
        up_velocity = state.procedure == Procedure::Standard ? state.speed : -state.speed;
    }
};

Velocity field_at(const SpinorPacketState &state, const FieldConstants &k, double z, double t) {
    double up_c = state.up_center(t);
    double down_c = state.down_center(t);
    double b = (z - up_c) * k.inv_sigma;
    double a = (z - down_c) * k.inv_sigma;
    double l_up = k.log_up - 0.5 * b * b;
    double l_down = k.log_down - 0.5 * a * a;
    if (l_up < kLogDblMin && l_down < kLogDblMin) {
        return {0.0, true};
    }
    // (rho_up - rho_down) / (rho_up + rho_down) = tanh((l_up - l_down) / 2)
    double diff = std::isinf(k.log_ratio) ? k.log_ratio : k.log_ratio + 0.5 * (a * a - b * b);
    return {k.up_velocity * std::tanh(0.5 * diff), false};
}

}  // namespace

Velocity velocity_field(const SpinorPacketState &state, double z, double t) {
    if (t < 0) {
        throw Error(ErrorCode::InvalidParameter, "time must be non-negative");
    }
    return field_at(state, FieldConstants(state), z, t);
}

Trajectory integrate_trajectory(const SpinorPacketState &state, double z0, double t_end, double dt,
                                uint64_t record_every) {
    check_params(state);
    if (z0 == 0) {
        throw Error(ErrorCode::StartOnNode, "z0 = 0 lies on the nodal line");
    }
    if (!(dt > 0) || dt > state.sigma / (100.0 * state.speed) * (1 + 1e-12)) {
        throw Error(ErrorCode::StepTooLarge, "dt must be in (0, sigma / (100 speed)]");
    }
    if (state.speed * t_end < 5.0 * state.sigma) {
        throw Error(ErrorCode::InvalidParameter, "t_end too short for the packets to separate (need speed*t_end >= 5 sigma)");
    }
    const uint64_t steps = static_cast<uint64_t>(std::ceil(t_end / dt - 1e-9));
    const double h = t_end / static_cast<double>(steps);
    const int start_sign = sign_of(z0);

    Trajectory tr{z0, {}, state.procedure, 0, 0, z0, z0 * start_sign, 0};
    if (record_every > 0) {
        tr.samples.reserve(steps / record_every + 2);
    }
    tr.samples.push_back({0.0, z0});

    double z = z0;
    const FieldConstants constants(state);
    auto v = [&](double zz, double tt) {
        Velocity vel = field_at(state, constants, zz, tt);
        tr.degenerate_steps += vel.degenerate;
        return vel.value;
    };
    for (uint64_t k = 0; k < steps; ++k) {
        double t = static_cast<double>(k) * h;
        double k1 = v(z, t);
        double k2 = v(z + 0.5 * h * k1, t + 0.5 * h);
        double k3 = v(z + 0.5 * h * k2, t + 0.5 * h);
        double k4 = v(z + h * k3, t + h);
        z += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        tr.min_signed_z = std::min(tr.min_signed_z, z * start_sign);
        bool last = k + 1 == steps;
        if (last || (record_every > 0 && (k + 1) % record_every == 0)) {
            tr.samples.push_back({last ? t_end : static_cast<double>(k + 1) * h, z});
        }
    }
    tr.final_z = z;
    tr.raw_sign = sign_of(z);
    tr.calibrated_outcome = state.procedure == Procedure::Standard ? tr.raw_sign : -tr.raw_sign;
    return tr;
}

ContextualityResult contextuality_demo(double z0, const PacketParams &params, uint64_t record_every) {
    auto standard = integrate_trajectory(SpinorPacketState::symmetric(params, Procedure::Standard), z0, params.t_end,
                                         params.dt, record_every);
    auto reversed = integrate_trajectory(SpinorPacketState::symmetric(params, Procedure::Reversed), z0, params.t_end,
                                         params.dt, record_every);
    return {standard.calibrated_outcome, reversed.calibrated_outcome, std::move(standard), std::move(reversed)};
}

EnsembleReport born_ensemble(const PacketParams &params, Procedure procedure, uint64_t n_trials, uint64_t seed) {
    if (n_trials < 1) {
        throw Error(ErrorCode::InvalidParameter, "n_trials must be at least 1");
    }
    Rng rng(seed);
    auto state = SpinorPacketState::symmetric(params, procedure);
    EnsembleReport report{n_trials, 0, 0.0, seed, procedure, {}, {}};
    report.initial_z.reserve(n_trials);
    report.raw_signs.reserve(n_trials);
    for (uint64_t i = 0; i < n_trials; ++i) {
        double z0 = 0;
        while (z0 == 0) {
            z0 = params.sigma * rng.normal();
        }
        auto tr = integrate_trajectory(state, z0, params.t_end, params.dt, 0);
        report.initial_z.push_back(z0);
        report.raw_signs.push_back(tr.raw_sign);
        report.up_count += tr.calibrated_outcome == 1;
    }
    report.up_freq = static_cast<double>(report.up_count) / static_cast<double>(n_trials);
    return report;
}

PairResult two_particle_demo(double za0, Procedure procedure_at_a, const PacketParams &params,
                             const LocalInputs &b_inputs) {
    auto a = integrate_trajectory(SpinorPacketState::symmetric(params, procedure_at_a), za0, params.t_end, params.dt);

    const double h = 1.0 / std::numbers::sqrt2;
    // (|up,down> - |down,up>)/sqrt2, Alice's particle A in the left slot.
    StateVector singlet{0.0, h, -h, 0.0};
    ComplexMatrix sigma_z{{1, 0}, {0, -1}};
    StateVector post = collapse(singlet, sigma_z, Slot::Alice, static_cast<double>(a.calibrated_outcome));

    // post is |a> (x) |b>; read B's spinor off the dominant Alice row.
    size_t row = std::norm(post[0]) + std::norm(post[1]) >= std::norm(post[2]) + std::norm(post[3]) ? 0 : 1;
    StateVector b_spinor = StateVector{post[2 * row], post[2 * row + 1]}.normalized();

    SpinorPacketState b_state{b_inputs.params.sigma, b_inputs.params.speed, b_inputs.procedure, std::norm(b_spinor[0]),
                              std::norm(b_spinor[1])};
    auto b = integrate_trajectory(b_state, b_inputs.z0, b_inputs.params.t_end, b_inputs.params.dt);

    double b_prob = 0;
    for (const auto &o : born_distribution(post, sigma_z, Slot::Bob)) {
        if (std::abs(o.eigenvalue - static_cast<double>(b.calibrated_outcome)) <= kClusterTol) {
            b_prob = o.probability;
        }
    }
    return {a.calibrated_outcome, b.calibrated_outcome, std::move(a), std::move(b), b_inputs, std::move(b_spinor), b_prob};
}

PairResult two_particle_demo(double za0, Procedure procedure_at_a, const PacketParams &params) {
    return two_particle_demo(za0, procedure_at_a, params, LocalInputs{0.5 * params.sigma, Procedure::Standard, params});
}

}  // namespace qfound
