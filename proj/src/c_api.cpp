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

#include "qfiw/qfiw.h"

#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "measurement.hpp"
#include "nsit.hpp"
#include "photonic.hpp"
#include "protocol.hpp"
#include "spin_core.hpp"

struct qfiw_state {
    qfiw::DickeState state;
};

struct qfiw_table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

namespace {

thread_local std::string g_last_error;

qfiw_status fail(qfiw_status status, const char *message) {
    g_last_error = message;
    return status;
}

// Maps the exception currently in flight onto a status code.
qfiw_status translate_exception() {
    try {
        throw;
    } catch (const std::domain_error &e) {
        return fail(QFIW_ERR_DOMAIN, e.what());
    } catch (const std::out_of_range &e) {
        return fail(QFIW_ERR_OUT_OF_RANGE, e.what());
    } catch (const qfiw::DimensionError &e) {
        return fail(QFIW_ERR_DIMENSION, e.what());
    } catch (const std::invalid_argument &e) {
        return fail(QFIW_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc &) {
        return fail(QFIW_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(QFIW_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QFIW_ERR_INTERNAL, "unknown error");
    }
}

template <typename F>
qfiw_status guarded(F &&body) {
    try {
        body();
        return QFIW_OK;
    } catch (...) {
        return translate_exception();
    }
}

qfiw::Generator to_generator(qfiw_generator g) {
    switch (g.kind) {
    case QFIW_GENERATOR_SZ:
        return qfiw::Generator::sz();
    case QFIW_GENERATOR_SALPHA:
        return qfiw::Generator::s_alpha(g.alpha);
    }
    throw std::invalid_argument("unknown generator kind");
}

qfiw::WChoice to_w(qfiw_w_kind kind, double mu_prime, double nu_prime) {
    switch (kind) {
    case QFIW_W_IDENTITY:
        return qfiw::WIdentity{};
    case QFIW_W_ADJOINT:
        return qfiw::WAdjoint{};
    case QFIW_W_TWIST:
        return qfiw::WTwist{mu_prime, nu_prime};
    case QFIW_W_OPTIMIZE:
        return qfiw::WOptimize{};
    }
    throw std::invalid_argument("unknown W kind");
}

qfiw_state *wrap(qfiw::DickeState s) { return new qfiw_state{std::move(s)}; }

#define QFIW_REQUIRE(ptr)                                                                                          \
    do {                                                                                                           \
        if ((ptr) == nullptr) {                                                                                    \
            return fail(QFIW_ERR_NULL_ARGUMENT, #ptr " is NULL");                                                  \
        }                                                                                                          \
    } while (0)

}  // namespace

extern "C" {

const char *qfiw_last_error(void) { return g_last_error.c_str(); }

const char *qfiw_status_name(qfiw_status status) {
    switch (status) {
    case QFIW_OK:
        return "ok";
    case QFIW_ERR_NULL_ARGUMENT:
        return "null argument";
    case QFIW_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case QFIW_ERR_DOMAIN:
        return "domain error";
    case QFIW_ERR_DIMENSION:
        return "dimension mismatch";
    case QFIW_ERR_OUT_OF_RANGE:
        return "out of range";
    case QFIW_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char *qfiw_version(void) { return QFIW_VERSION_STRING; }

qfiw_status qfiw_state_coherent_x(int n_spins, qfiw_state **out) {
    QFIW_REQUIRE(out);
    return guarded([&] { *out = wrap(qfiw::coherent_state_x(n_spins)); });
}

qfiw_status qfiw_state_from_amplitudes(int n_spins, const double *re, const double *im, size_t len,
                                       qfiw_state **out) {
    QFIW_REQUIRE(re);
    QFIW_REQUIRE(out);
    return guarded([&] {
        qfiw::Amplitudes amps(static_cast<Eigen::Index>(len));
        for (size_t k = 0; k < len; ++k) {
            amps[static_cast<Eigen::Index>(k)] = {re[k], im != nullptr ? im[k] : 0.0};
        }
        *out = wrap(qfiw::DickeState::from_amplitudes(n_spins, std::move(amps)));
    });
}

void qfiw_state_free(qfiw_state *state) { delete state; }

int qfiw_state_spins(const qfiw_state *state) { return state != nullptr ? state->state.n_spins() : 0; }

qfiw_status qfiw_state_amplitudes(const qfiw_state *state, double *re, double *im, size_t len) {
    QFIW_REQUIRE(state);
    QFIW_REQUIRE(re);
    QFIW_REQUIRE(im);
    const auto &amps = state->state.amplitudes();
    if (len != static_cast<size_t>(amps.size())) {
        return fail(QFIW_ERR_DIMENSION, "qfiw_state_amplitudes: buffer length must equal N+1");
    }
    for (size_t k = 0; k < len; ++k) {
        re[k] = amps[static_cast<Eigen::Index>(k)].real();
        im[k] = amps[static_cast<Eigen::Index>(k)].imag();
    }
    return QFIW_OK;
}

qfiw_status qfiw_state_evolve(const qfiw_state *state, qfiw_generator generator, double t, qfiw_state **out) {
    QFIW_REQUIRE(state);
    QFIW_REQUIRE(out);
    return guarded([&] { *out = wrap(qfiw::evolve(state->state, to_generator(generator), t)); });
}

qfiw_status qfiw_state_one_axis_twist(const qfiw_state *state, double mu, double nu, qfiw_state **out) {
    QFIW_REQUIRE(state);
    QFIW_REQUIRE(out);
    return guarded([&] { *out = wrap(qfiw::one_axis_twist(state->state, mu, nu)); });
}

qfiw_status qfiw_state_qfi(const qfiw_state *state, qfiw_generator generator, double *out) {
    QFIW_REQUIRE(state);
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::qfi_pure(state->state, to_generator(generator)); });
}

qfiw_status qfiw_state_fidelity(const qfiw_state *a, const qfiw_state *b, double *out) {
    QFIW_REQUIRE(a);
    QFIW_REQUIRE(b);
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::fidelity_pure(a->state, b->state); });
}

qfiw_status qfiw_state_projective_weights(const qfiw_state *state, double alpha, double *weights, size_t len) {
    QFIW_REQUIRE(state);
    QFIW_REQUIRE(weights);
    if (len != static_cast<size_t>(state->state.dim())) {
        return fail(QFIW_ERR_DIMENSION, "qfiw_state_projective_weights: buffer length must equal N+1");
    }
    return guarded([&] {
        const auto w = qfiw::projective_weights(state->state, alpha);
        std::copy(w.begin(), w.end(), weights);
    });
}

qfiw_status qfiw_optimal_nu(int n_spins, double mu, double *out) {
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::optimal_nu(n_spins, mu); });
}

qfiw_status qfiw_optimal_mu(int n_spins, double *out) {
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::optimal_mu(n_spins); });
}

qfiw_status qfiw_heisenberg_spread(int n_spins, double m, double t, double *m1, double *m2, double *spread) {
    QFIW_REQUIRE(m1);
    QFIW_REQUIRE(m2);
    QFIW_REQUIRE(spread);
    return guarded([&] {
        const auto s = qfiw::heisenberg_spread(n_spins, m, t);
        *m1 = s.m1;
        *m2 = s.m2;
        *spread = s.spread;
    });
}

qfiw_status qfiw_bures_distance(double fidelity, double *out) {
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::bures_distance(fidelity); });
}

qfiw_status qfiw_qfi_lower_bound(double coefficient, double t, double *out) {
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::qfi_lower_bound(coefficient, t); });
}

qfiw_status qfiw_fidelity_bound(double qfi, double t, double *out, int *valid) {
    QFIW_REQUIRE(out);
    QFIW_REQUIRE(valid);
    return guarded([&] {
        const auto b = qfiw::fidelity_bound(qfi, t);
        *out = b.value;
        *valid = b.valid ? 1 : 0;
    });
}

qfiw_status qfiw_min_time_for_error(double delta, double qfi, double *out) {
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::min_time_for_error(delta, qfi); });
}

void qfiw_protocol_config_init(qfiw_protocol_config *cfg) {
    if (cfg == nullptr) {
        return;
    }
    *cfg = qfiw_protocol_config{};
    cfg->mu_auto = 1;
    cfg->nu_auto = 1;
    cfg->w_kind = QFIW_W_IDENTITY;
    cfg->axis_optimize = 1;
    cfg->jobs = 1;
}

qfiw_status qfiw_run_protocol(const qfiw_protocol_config *cfg, qfiw_bound_result *out) {
    QFIW_REQUIRE(cfg);
    QFIW_REQUIRE(out);
    return guarded([&] {
        qfiw::ProtocolConfig c;
        c.n_spins = cfg->n_spins;
        if (!cfg->mu_auto) {
            c.mu = cfg->mu;
        }
        if (!cfg->nu_auto) {
            c.nu = cfg->nu;
        }
        c.t = cfg->t;
        c.resolution = cfg->delta;
        c.w = to_w(cfg->w_kind, cfg->mu_prime, cfg->nu_prime);
        if (!cfg->axis_optimize) {
            c.axis = cfg->axis;
        }
        c.jobs = cfg->jobs;
        const auto r = qfiw::run_protocol(c);
        *out = qfiw_bound_result{};
        out->b_omega = r.b_omega;
        out->bound = r.bound;
        out->qfi_exact = r.qfi_exact;
        out->mu_used = r.mu_used;
        out->nu_used = r.nu_used;
        out->axis_used = r.axis_used;
        out->has_w_params = r.w_params_used.has_value() ? 1 : 0;
        if (r.w_params_used) {
            out->mu_prime = r.w_params_used->mu_prime;
            out->nu_prime = r.w_params_used->nu_prime;
        }
        out->entanglement_witnessed = r.entanglement_witnessed ? 1 : 0;
        out->validity_ok = r.validity_ok ? 1 : 0;
    });
}

qfiw_status qfiw_sweep_delta(const int *n_spins, const double *times, const double *mus, size_t groups,
                             const double *deltas, size_t delta_count, const qfiw_w_kind *w_kinds, size_t w_count,
                             int jobs, qfiw_table **out) {
    QFIW_REQUIRE(n_spins);
    QFIW_REQUIRE(times);
    QFIW_REQUIRE(deltas);
    QFIW_REQUIRE(w_kinds);
    QFIW_REQUIRE(out);
    return guarded([&] {
        qfiw::DeltaSweepSpec spec;
        for (size_t g = 0; g < groups; ++g) {
            qfiw::DeltaSweepGroup group{n_spins[g], times[g], std::nullopt};
            if (mus != nullptr && !std::isnan(mus[g])) {
                group.mu = mus[g];
            }
            spec.groups.push_back(group);
        }
        spec.resolutions.assign(deltas, deltas + delta_count);
        for (size_t w = 0; w < w_count; ++w) {
            if (w_kinds[w] == QFIW_W_TWIST) {
                throw std::invalid_argument("qfiw_sweep_delta: twist W needs explicit parameters; use optimize");
            }
            spec.w_choices.push_back(to_w(w_kinds[w], 0.0, 0.0));
        }
        spec.jobs = jobs;
        const auto rows = qfiw::sweep_delta(spec);
        auto table = std::make_unique<qfiw_table>();
        table->columns = {"n", "delta", "w_choice", "alpha_star", "b_omega", "bound", "bound_over_n", "qfi",
                          "qfi_over_n"};
        for (const auto &r : rows) {
            double code = 0.0;
            for (size_t w = 0; w < w_count; ++w) {
                if (qfiw_w_kind_name(w_kinds[w]) == r.w_choice) {
                    code = static_cast<double>(w_kinds[w]);
                }
            }
            table->rows.push_back({static_cast<double>(r.n_spins), r.resolution, code, r.alpha_star, r.b_omega,
                                   r.bound, r.bound_over_n, r.qfi, r.qfi_over_n});
        }
        *out = table.release();
    });
}

qfiw_status qfiw_sweep_mu(int n_spins, double delta, double t, const double *mus, size_t mu_count, int jobs,
                          qfiw_table **out) {
    QFIW_REQUIRE(mus);
    QFIW_REQUIRE(out);
    return guarded([&] {
        qfiw::MuSweepSpec spec{n_spins, delta, t, std::vector<double>(mus, mus + mu_count), jobs};
        const auto rows = qfiw::sweep_mu(spec);
        auto table = std::make_unique<qfiw_table>();
        table->columns = {"mu", "nu", "bound_identity", "bound_adjoint", "bound_optimized", "qfi", "mu_prime",
                          "nu_prime"};
        for (const auto &r : rows) {
            table->rows.push_back({r.mu, r.nu, r.bound_identity, r.bound_adjoint, r.bound_optimized, r.qfi,
                                   r.mu_prime, r.nu_prime});
        }
        *out = table.release();
    });
}

void qfiw_table_free(qfiw_table *table) { delete table; }

size_t qfiw_table_rows(const qfiw_table *table) { return table != nullptr ? table->rows.size() : 0; }

size_t qfiw_table_columns(const qfiw_table *table) { return table != nullptr ? table->columns.size() : 0; }

const char *qfiw_table_column_name(const qfiw_table *table, size_t column) {
    if (table == nullptr || column >= table->columns.size()) {
        return nullptr;
    }
    return table->columns[column].c_str();
}

qfiw_status qfiw_table_value(const qfiw_table *table, size_t row, size_t column, double *out) {
    QFIW_REQUIRE(table);
    QFIW_REQUIRE(out);
    if (row >= table->rows.size() || column >= table->columns.size()) {
        return fail(QFIW_ERR_OUT_OF_RANGE, "qfiw_table_value: cell out of range");
    }
    *out = table->rows[row][column];
    return QFIW_OK;
}

const char *qfiw_w_kind_name(qfiw_w_kind kind) {
    switch (kind) {
    case QFIW_W_IDENTITY:
        return "identity";
    case QFIW_W_ADJOINT:
        return "adjoint";
    case QFIW_W_TWIST:
        return "twist";
    case QFIW_W_OPTIMIZE:
        return "optimize";
    }
    return "unknown";
}

qfiw_status qfiw_photonic_squeezed_variance(double xi, double delta, double *out) {
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::photonic::squeezed_variance(xi, delta); });
}

qfiw_status qfiw_photonic_qfi(double xi, double *out) {
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::photonic::photonic_qfi(xi); });
}

qfiw_status qfiw_photonic_back_squeeze_resolution(double delta, double xi_prime, double *out) {
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::photonic::back_squeeze_resolution(delta, xi_prime); });
}

qfiw_status qfiw_photonic_bound(double xi, double delta, double xi_prime, double t, double *out) {
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::photonic::photonic_bound(xi, delta, xi_prime, t); });
}

void qfiw_nsit_config_init(qfiw_nsit_config *cfg) {
    if (cfg == nullptr) {
        return;
    }
    *cfg = qfiw_nsit_config{};
    cfg->mu_auto = 1;
    cfg->nu_auto = 1;
    cfg->nodes = 41;
}

qfiw_status qfiw_nsit_evaluate(const qfiw_nsit_config *cfg, qfiw_nsit_result *out) {
    QFIW_REQUIRE(cfg);
    QFIW_REQUIRE(out);
    return guarded([&] {
        qfiw::nsit::NsitConfig c;
        c.n_spins = cfg->n_spins;
        if (!cfg->mu_auto) {
            c.mu = cfg->mu;
        }
        if (!cfg->nu_auto) {
            c.nu = cfg->nu;
        }
        c.resolution = cfg->delta;
        c.nodes = cfg->nodes;
        if (cfg->k_eff > 0.0) {
            c.k_eff = cfg->k_eff;
        }
        const auto r = qfiw::nsit::evaluate(c);
        *out = qfiw_nsit_result{r.mu,
                                r.nu,
                                r.b_pq,
                                r.nsit_bound,
                                r.k_eff,
                                r.averaged_fidelity,
                                r.qfi,
                                r.fidelity_floor,
                                r.floor_respected ? 1 : 0,
                                r.quadrature_drift};
    });
}

qfiw_status qfiw_dephased_fidelity_floor(double qfi, double delta, double *out) {
    QFIW_REQUIRE(out);
    return guarded([&] { *out = qfiw::nsit::dephased_fidelity_floor(qfi, delta); });
}

}  // extern "C"
