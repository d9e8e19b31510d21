// Copyright 2026 The qfi-witness Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "qfiw/qfiw.h"

namespace {

using std::numbers::pi;

TEST(CApi, StatusNamesAndVersion) {
    EXPECT_STREQ(qfiw_status_name(QFIW_OK), "ok");
    EXPECT_STREQ(qfiw_status_name(QFIW_ERR_DOMAIN), "domain error");
    EXPECT_GT(std::strlen(qfiw_version()), 0u);
}

TEST(CApi, CoherentStateRoundTrip) {
    qfiw_state *c = nullptr;
    ASSERT_EQ(qfiw_state_coherent_x(2, &c), QFIW_OK);
    EXPECT_EQ(qfiw_state_spins(c), 2);
    std::vector<double> re(3), im(3);
    ASSERT_EQ(qfiw_state_amplitudes(c, re.data(), im.data(), 3), QFIW_OK);
    EXPECT_NEAR(re[1], 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(qfiw_state_amplitudes(c, re.data(), im.data(), 2), QFIW_ERR_DIMENSION);
    double qfi = 0.0;
    ASSERT_EQ(qfiw_state_qfi(c, {QFIW_GENERATOR_SZ, 0.0}, &qfi), QFIW_OK);
    EXPECT_NEAR(qfi, 2.0, 1e-12);
    std::vector<double> w(3);
    ASSERT_EQ(qfiw_state_projective_weights(c, pi / 2, w.data(), 3), QFIW_OK);
    EXPECT_NEAR(w[0], 0.25, 1e-14);
    qfiw_state_free(c);
}

TEST(CApi, EvolveAndFidelity) {
    qfiw_state *c = nullptr, *e = nullptr;
    ASSERT_EQ(qfiw_state_coherent_x(50, &c), QFIW_OK);
    ASSERT_EQ(qfiw_state_evolve(c, {QFIW_GENERATOR_SZ, 0.0}, 0.05, &e), QFIW_OK);
    double f = 0.0;
    ASSERT_EQ(qfiw_state_fidelity(c, e, &f), QFIW_OK);
    EXPECT_NEAR(f, std::pow(std::cos(0.025), 50), 1e-12);
    EXPECT_EQ(qfiw_state_evolve(c, {QFIW_GENERATOR_SZ, 0.0}, NAN, &e), QFIW_ERR_INVALID_ARGUMENT);
    qfiw_state_free(c);
    qfiw_state_free(e);
}

TEST(CApi, ErrorsReported) {
    qfiw_state *s = nullptr;
    EXPECT_EQ(qfiw_state_coherent_x(0, &s), QFIW_ERR_INVALID_ARGUMENT);
    EXPECT_GT(std::strlen(qfiw_last_error()), 0u);
    EXPECT_EQ(qfiw_state_coherent_x(3, nullptr), QFIW_ERR_NULL_ARGUMENT);
    const double re[2] = {1.0, 1.0};
    EXPECT_EQ(qfiw_state_from_amplitudes(1, re, nullptr, 2, &s), QFIW_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(qfiw_state_from_amplitudes(2, re, nullptr, 2, &s), QFIW_ERR_DIMENSION);
    double out = 0.0;
    EXPECT_EQ(qfiw_bures_distance(2.0, &out), QFIW_ERR_DOMAIN);
    EXPECT_EQ(qfiw_min_time_for_error(0.0, 1.0, &out), QFIW_ERR_DOMAIN);
    EXPECT_EQ(qfiw_heisenberg_spread(10, 0.5, 0.1, &out, &out, &out), QFIW_ERR_DOMAIN);
    qfiw_state_free(nullptr);
    qfiw_table_free(nullptr);
}

TEST(CApi, ScalarBounds) {
    double out = 0.0;
    int valid = 0;
    ASSERT_EQ(qfiw_min_time_for_error(0.01, 1e4, &out), QFIW_OK);
    EXPECT_NEAR(out, 2 * std::acos(0.99) / 100, 1e-15);
    ASSERT_EQ(qfiw_fidelity_bound(100.0, 1.0, &out, &valid), QFIW_OK);
    EXPECT_EQ(valid, 0);
    EXPECT_EQ(out, -1.0);
    ASSERT_EQ(qfiw_qfi_lower_bound(0.0, 0.5, &out), QFIW_OK);
    EXPECT_NEAR(out, 4 * pi * pi, 1e-12);
    ASSERT_EQ(qfiw_photonic_bound(0.0, 0.0, 0.0, 1e-4, &out), QFIW_OK);
    EXPECT_NEAR(out, 2.0, 1e-6);
    ASSERT_EQ(qfiw_dephased_fidelity_floor(100.0, 10.0, &out), QFIW_OK);
    EXPECT_NEAR(out, 0.9692332341446388, 1e-14);
}

TEST(CApi, RunProtocol) {
    qfiw_protocol_config cfg;
    qfiw_protocol_config_init(&cfg);
    cfg.n_spins = 100;
    cfg.mu_auto = 0;
    cfg.mu = 0.0;
    cfg.t = 1e-3;
    cfg.axis_optimize = 0;
    cfg.axis = pi / 2;
    qfiw_bound_result r;
    ASSERT_EQ(qfiw_run_protocol(&cfg, &r), QFIW_OK);
    EXPECT_NEAR(r.bound / 100, 1.0, 1e-3);
    EXPECT_EQ(r.entanglement_witnessed, 0);
    cfg.delta = -1.0;
    EXPECT_EQ(qfiw_run_protocol(&cfg, &r), QFIW_ERR_INVALID_ARGUMENT);
}

TEST(CApi, SweepTables) {
    const int n[] = {20};
    const double t[] = {1e-2};
    const double mu[] = {NAN};
    const double delta[] = {0.0, 1.0};
    const qfiw_w_kind w[] = {QFIW_W_IDENTITY, QFIW_W_ADJOINT};
    qfiw_table *table = nullptr;
    ASSERT_EQ(qfiw_sweep_delta(n, t, mu, 1, delta, 2, w, 2, 1, &table), QFIW_OK);
    ASSERT_EQ(qfiw_table_rows(table), 4u);
    ASSERT_EQ(qfiw_table_columns(table), 9u);
    EXPECT_STREQ(qfiw_table_column_name(table, 0), "n");
    EXPECT_STREQ(qfiw_table_column_name(table, 8), "qfi_over_n");
    double v = 0.0;
    ASSERT_EQ(qfiw_table_value(table, 1, 2, &v), QFIW_OK);
    EXPECT_EQ(v, QFIW_W_ADJOINT);
    EXPECT_EQ(qfiw_table_value(table, 9, 0, &v), QFIW_ERR_OUT_OF_RANGE);
    EXPECT_EQ(qfiw_table_column_name(table, 99), nullptr);
    qfiw_table_free(table);

    const double mus[] = {0.05, 0.0};
    ASSERT_EQ(qfiw_sweep_mu(10, 1.0, 1e-2, mus, 2, 1, &table), QFIW_OK);
    ASSERT_EQ(qfiw_table_rows(table), 2u);
    ASSERT_EQ(qfiw_table_value(table, 0, 0, &v), QFIW_OK);
    EXPECT_EQ(v, 0.0);
    qfiw_table_free(table);
}

TEST(CApi, Nsit) {
    qfiw_nsit_config cfg;
    qfiw_nsit_config_init(&cfg);
    cfg.n_spins = 20;
    cfg.delta = std::sqrt(20.0);
    qfiw_nsit_result r;
    ASSERT_EQ(qfiw_nsit_evaluate(&cfg, &r), QFIW_OK);
    EXPECT_EQ(r.floor_respected, 1);
    EXPECT_NEAR(r.k_eff, 1.0 / (2 * std::sqrt(20.0)), 1e-15);
    cfg.delta = 0.0;
    EXPECT_EQ(qfiw_nsit_evaluate(&cfg, &r), QFIW_ERR_INVALID_ARGUMENT);
}

}  // namespace
