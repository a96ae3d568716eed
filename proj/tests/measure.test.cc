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

#include <sstream>

#include "gtest/gtest.h"

#include "oracle.test.h"
#include "qfound/nogo.h"
#include "qfound/sampling.h"

using namespace qfound;
using namespace qfound_test;

namespace {

const double kH = 1.0 / std::numbers::sqrt2;
const ComplexMatrix kSz{{1, 0}, {0, -1}};

}  // namespace

TEST(measure, born_singlet_both_sides) {
    auto psi = singlet().amplitudes();
    for (Slot slot : {Slot::Alice, Slot::Bob}) {
        auto d = born_distribution(psi, kSz, slot);
        ASSERT_EQ(d.size(), 2u);
        ASSERT_EQ(d[0].eigenvalue, -1.0);
        ASSERT_NEAR(d[0].probability, 0.5, 1e-15);
        ASSERT_NEAR(d[1].probability, 0.5, 1e-15);
    }
}

TEST(measure, born_eigenstate_is_certain) {
    StateVector a{kH, kH};
    StateVector down{0.0, 1.0};
    auto d = born_distribution(kron(a, down), kSz, Slot::Bob);
    ASSERT_NEAR(d[0].probability, 1.0, 1e-15);
    ASSERT_NEAR(d[1].probability, 0.0, 1e-15);
}

TEST(measure, born_schmidt_coefficients) {
    Rng rng(1);
    auto alice = random_basis(3, rng), bob = random_basis(3, rng);
    EntangledState s(alice, bob, {0.6, 0.0, 0.8});
    std::array<double, 3> d{-1, 2, 5};
    auto o = ComplexMatrix::from_columns(bob) * ComplexMatrix::diagonal(d) * ComplexMatrix::from_columns(bob).adjoint();
    auto dist = born_distribution(s.amplitudes(), o, Slot::Bob);
    ASSERT_EQ(dist.size(), 3u);
    ASSERT_NEAR(dist[0].probability, 0.36, 1e-12);
    ASSERT_NEAR(dist[1].probability, 0.0, 1e-12);
    ASSERT_NEAR(dist[2].probability, 0.64, 1e-12);
}

TEST(measure, born_max_entangled_uniform) {
    Rng rng(2);
    auto s = make_max_entangled(random_basis(4, rng), random_basis(4, rng));
    auto o = random_hermitian(4, rng);
    double total = 0;
    for (Slot slot : {Slot::Alice, Slot::Bob}) {
        for (const auto &b : born_distribution(s.amplitudes(), o, slot)) {
            ASSERT_NEAR(b.probability, 0.25, 1e-10);
            total += b.probability;
        }
    }
    ASSERT_NEAR(total, 2.0, 1e-10);
}

TEST(measure, born_rejects_bad_input) {
    ComplexMatrix skew{{0, 1}, {-1, 0}};
    auto psi = singlet().amplitudes();
    ASSERT_EQ(thrown_code([&] { born_distribution(psi, skew, Slot::Bob); }), ErrorCode::NotHermitian);
    ASSERT_EQ(thrown_code([&] { born_distribution(StateVector{1.0, 1.0, 0.0, 0.0}, kSz, Slot::Bob); }),
              ErrorCode::NotNormalized);
}

TEST(measure, collapse_singlet) {
    auto post = collapse(singlet().amplitudes(), kSz, Slot::Alice, 1.0);
    ASSERT_TRUE(equal_up_to_phase(post, StateVector{0.0, 1.0, 0.0, 0.0}));
    post = collapse(singlet().amplitudes(), kSz, Slot::Bob, 1.0);
    ASSERT_TRUE(equal_up_to_phase(post, StateVector{0.0, 0.0, 1.0, 0.0}));
}

TEST(measure, collapse_eigenstate_unchanged) {
    StateVector psi{0.0, 1.0, 0.0, 0.0};
    ASSERT_LE((collapse(psi, kSz, Slot::Alice, 1.0) - psi).norm(), 1e-15);
}

TEST(measure, collapse_partner_outcome) {
    Rng rng(3);
    auto alice = random_basis(3, rng), bob = random_basis(3, rng);
    auto s = make_max_entangled(alice, bob);
    std::array<double, 3> d{-1, 0.5, 4};
    auto o = ComplexMatrix::from_columns(bob) * ComplexMatrix::diagonal(d) * ComplexMatrix::from_columns(bob).adjoint();
    auto p = partner_operator(s, o);
    for (size_t l = 0; l < 3; ++l) {
        auto post = collapse(s.amplitudes(), p, Slot::Alice, d[l]);
        ASSERT_TRUE(equal_up_to_phase(post, naive_kron(alice[l], bob[l]), 1e-9));
    }
}

TEST(measure, collapse_errors) {
    auto psi = singlet().amplitudes();
    ASSERT_EQ(thrown_code([&] { collapse(psi, kSz, Slot::Alice, 0.5); }), ErrorCode::EigenvalueNotInSpectrum);
    StateVector up_up{1.0, 0.0, 0.0, 0.0};
    ASSERT_EQ(thrown_code([&] { collapse(up_up, kSz, Slot::Alice, -1.0); }), ErrorCode::ZeroProbabilityOutcome);
}

TEST(measure, measure_is_deterministic_given_seed) {
    Rng a(99), b(99);
    auto psi = singlet().amplitudes();
    for (int k = 0; k < 20; ++k) {
        auto x = measure(psi, kSz, Slot::Bob, a);
        auto y = measure(psi, kSz, Slot::Bob, b);
        ASSERT_EQ(x.eigenvalue, y.eigenvalue);
        ASSERT_EQ(x.post_state, y.post_state);
        ASSERT_NEAR(x.probability, 0.5, 1e-15);
    }
}

TEST(measure, epr_singlet_anticorrelated_spins) {
    EprExperiment exp(singlet(), kSz, "sigma_z", "singlet");
    ASSERT_LE(max_abs_diff(exp.partner(), -1.0 * kSz), 1e-14);
    for (Order order : {Order::AliceFirst, Order::BobFirst}) {
        for (uint64_t seed = 0; seed < 2000; ++seed) {
            auto r = exp.run(order, seed);
            ASSERT_EQ(r.alice_value, r.bob_value);
            // Alice's raw sigma_z reading is the negative of her partner value.
            ASSERT_EQ(-r.alice_value, -r.bob_value);
            ASSERT_EQ(r.rng_seed, seed);
            ASSERT_EQ(r.state_tag, "singlet");
        }
    }
}

TEST(measure, epr_identity_reads_one) {
    auto r = run_epr_trial(singlet(), ComplexMatrix::identity(2), Order::BobFirst, 5);
    ASSERT_EQ(r.alice_value, 1.0);
    ASSERT_EQ(r.bob_value, 1.0);
}

TEST(measure, epr_trial_is_deterministic) {
    auto a = run_epr_trial(singlet(), kSz, Order::AliceFirst, 1234);
    auto b = run_epr_trial(singlet(), kSz, Order::AliceFirst, 1234);
    ASSERT_EQ(a.alice_value, b.alice_value);
    ASSERT_EQ(a.bob_value, b.bob_value);
}

TEST(measure, epr_random_qutrit_marginals) {
    Rng rng(4);
    auto s = make_max_entangled(random_basis(3, rng), random_basis(3, rng));
    auto o = random_hermitian(3, rng);
    EprExperiment exp(s, o);
    const uint64_t T = 6000;
    for (Order order : {Order::AliceFirst, Order::BobFirst}) {
        auto records = run_epr_ensemble(exp, order, T, 7);
        for (size_t k = 0; k < records.size(); ++k) {
            ASSERT_EQ(records[k].alice_value, records[k].bob_value);
            ASSERT_EQ(records[k].rng_seed, 7 + k);
        }
        auto sum = summarize(records);
        ASSERT_EQ(sum.match_count, T);
        ASSERT_EQ(sum.bob_marginals.size(), 3u);
        double bound = 5 * std::sqrt((1.0 / 3) * (2.0 / 3) / T);
        for (auto [value, freq] : sum.bob_marginals) {
            ASSERT_NEAR(freq, 1.0 / 3, bound);
        }
    }
}

TEST(measure, epr_sweep_over_random_observables) {
    Rng rng(5);
    for (size_t n : {2, 3, 4}) {
        for (int k = 0; k < 5; ++k) {
            auto s = make_max_entangled(random_basis(n, rng), random_basis(n, rng));
            EprExperiment exp(s, random_hermitian(n, rng));
            for (uint64_t seed = 0; seed < 50; ++seed) {
                auto r = exp.run(seed % 2 ? Order::AliceFirst : Order::BobFirst, seed);
                ASSERT_EQ(r.alice_value, r.bob_value);
            }
        }
    }
}

TEST(measure, epr_degenerate_observable) {
    Rng rng(6);
    auto s = make_max_entangled(random_basis(3, rng), random_basis(3, rng));
    auto u = random_unitary(3, rng);
    std::array<double, 3> d{1, 1, -1};
    EprExperiment exp(s, u * ComplexMatrix::diagonal(d) * u.adjoint());
    ASSERT_EQ(exp.spectrum().size(), 2u);
    auto sum = summarize(run_epr_ensemble(exp, Order::BobFirst, 3000, 0));
    ASSERT_EQ(sum.match_count, 3000u);
    // Keys are the computed eigenvalues, so look the +1 outcome up by sign.
    double up = 0;
    for (auto [v, f] : sum.bob_marginals) {
        up += v > 0 ? f : 0;
    }
    ASSERT_EQ(sum.bob_marginals.size(), 2u);
    ASSERT_NEAR(up, 2.0 / 3, 5 * std::sqrt(2.0 / 9 / 3000));
}

TEST(measure, override_partner_breaks_matching) {
    EprExperiment exp(singlet(), kSz);
    exp.override_partner(kSz);
    auto sum = summarize(run_epr_ensemble(exp, Order::AliceFirst, 200, 0));
    ASSERT_EQ(sum.match_count, 0u);
}

TEST(measure, order_independence_chi_square) {
    EprExperiment exp(singlet(), kSz);
    auto a = run_epr_ensemble(exp, Order::AliceFirst, 20000, 0);
    auto b = run_epr_ensemble(exp, Order::BobFirst, 20000, 20000);
    auto chi = chi_square_homogeneity(joint_counts(a), joint_counts(b));
    ASSERT_EQ(chi.dof, 1);
    ASSERT_GT(chi.p_value, 0.001);
}

TEST(measure, chi_square_against_hand_computation) {
    std::map<std::string, uint64_t> a{{"x", 30}, {"y", 70}}, b{{"x", 50}, {"y", 50}};
    auto chi = chi_square_homogeneity(a, b);
    // Expected counts are 40 and 60 in both rows.
    double expected = (100.0 / 40 + 100.0 / 60) * 2;
    ASSERT_NEAR(chi.statistic, expected, 1e-12);
    ASSERT_EQ(chi.dof, 1);
    // Survival function of chi-square with one degree of freedom is erfc(sqrt(x/2)).
    ASSERT_NEAR(chi.p_value, std::erfc(std::sqrt(expected / 2)), 1e-12);
}

TEST(measure, csv_format) {
    std::vector<EPRTrialRecord> records{{"sigma_z", -1.0, -1.0, Order::AliceFirst, 3, ""},
                                        {"sigma_z", 0.1, 0.1, Order::BobFirst, 4, ""}};
    std::ostringstream out;
    write_trials_csv(out, records);
    ASSERT_EQ(out.str(),
              "seed,observable,order,alice,bob\n"
              "3,sigma_z,alice_first,-1,-1\n"
              "4,sigma_z,bob_first,0.10000000000000001,0.10000000000000001\n");
}

TEST(measure, context_trial_on_mermin_rows) {
    auto pair = product_of_entangled(singlet(), singlet());
    auto sq = mermin_square();
    for (uint64_t seed = 0; seed < 30; ++seed) {
        for (int r = 0; r < 3; ++r) {
            std::vector<ComplexMatrix> ops(sq.cells[r].begin(), sq.cells[r].end());
            std::vector<std::string> labels(sq.labels[r].begin(), sq.labels[r].end());
            auto recs = run_context_trial(pair, ops, labels, seed, "pair");
            double product = 1;
            for (const auto &rec : recs) {
                ASSERT_EQ(rec.alice_value, rec.bob_value);
                product *= rec.bob_value;
            }
            ASSERT_NEAR(product, sq.row_signs[r], 1e-9);
        }
    }
}

TEST(measure, context_trial_requires_commuting_family) {
    ComplexMatrix sx{{0, 1}, {1, 0}};
    ASSERT_EQ(thrown_code([&] { run_context_trial(singlet(), {kSz, sx}, {"z", "x"}, 0); }),
              ErrorCode::InvalidParameter);
}
