// Copyright 2026 The ncsim Authors
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

#include "ncsim/decomposer.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include <Eigen/Dense>

namespace ncsim {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kHarrisTol = 1e-10;
constexpr double kOptimalityTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr size_t kDegenerateRunLimit = 64;
constexpr size_t kRefactorInterval = 100;
constexpr uint64_t kPerturbSeed = 0x5eed;
constexpr double kPerturbMin = 1e-8;
constexpr double kPerturbMax = 1e-7;
constexpr double kPruneTol = 1e-12;

std::vector<CliffordAction> build_one_qubit_cliffords() {
    std::vector<CliffordAction> out{CliffordAction::identity(1)};
    std::deque<size_t> queue{0};
    const CliffordAction gens[] = {CliffordAction::from_gate(Gate::H), CliffordAction::from_gate(Gate::S)};
    while (!queue.empty()) {
        size_t k = queue.front();
        queue.pop_front();
        for (const auto &g : gens) {
            CliffordAction next = out[k].then(g);
            bool seen = false;
            for (const auto &c : out) {
                if (c == next) {
                    seen = true;
                    break;
                }
            }
            if (!seen) {
                out.push_back(next);
                queue.push_back(out.size() - 1);
            }
        }
    }
    return out;
}

std::vector<CliffordAction> build_two_qubit_cliffords() {
    std::vector<PauliString> paulis;
    for (uint64_t i = 0; i < 16; i++) {
        paulis.push_back(PauliString::from_index(2, i));
    }
    auto commute = [&](size_t a, size_t b) { return comm_sign(paulis[a], paulis[b]) > 0; };
    auto product_index = [&](size_t a, size_t b) { return pauli_mul(paulis[a], paulis[b]).basis_index(); };

    std::vector<CliffordAction> out;
    out.reserve(11520);
    // Unsigned images are enumerated first; the identity images come first
    // in sign order 0, so the identity is element 0.
    std::vector<std::array<size_t, 4>> frames;
    for (size_t x0 = 1; x0 < 16; x0++) {
        for (size_t z0 = 1; z0 < 16; z0++) {
            if (commute(x0, z0)) {
                continue;
            }
            size_t x0z0 = product_index(x0, z0);
            for (size_t x1 = 1; x1 < 16; x1++) {
                if (x1 == x0 || x1 == z0 || x1 == x0z0 || !commute(x1, x0) || !commute(x1, z0)) {
                    continue;
                }
                for (size_t z1 = 1; z1 < 16; z1++) {
                    if (commute(z1, x1) || !commute(z1, x0) || !commute(z1, z0)) {
                        continue;
                    }
                    frames.push_back({x0, z0, x1, z1});
                }
            }
        }
    }
    // X0 = XI has index 1, Z0 = ZI index 3, X1 = IX index 4, Z1 = IZ index 12.
    const std::array<size_t, 4> identity_frame{1, 3, 4, 12};
    for (size_t f = 0; f < frames.size(); f++) {
        if (frames[f] == identity_frame) {
            std::swap(frames[0], frames[f]);
            break;
        }
    }
    for (const auto &f : frames) {
        for (unsigned signs = 0; signs < 16; signs++) {
            std::vector<PauliString> img;
            for (size_t k = 0; k < 4; k++) {
                PauliString p = paulis[f[k]];
                if ((signs >> k) & 1) {
                    p.negate();
                }
                img.push_back(std::move(p));
            }
            out.emplace_back(std::vector<PauliString>{img[0], img[2]}, std::vector<PauliString>{img[1], img[3]});
        }
    }
    return out;
}

void check_supported(size_t n) {
    if (n != 1 && n != 2) {
        throw std::invalid_argument("stabilizer channel dictionaries exist only for 1 or 2 qubits");
    }
}

}  // namespace

const std::vector<CliffordAction> &enumerate_cliffords(size_t num_qubits) {
    check_supported(num_qubits);
    if (num_qubits == 1) {
        static const std::vector<CliffordAction> one = build_one_qubit_cliffords();
        return one;
    }
    static const std::vector<CliffordAction> two = build_two_qubit_cliffords();
    return two;
}

std::vector<PauliReset> enumerate_pauli_resets(size_t num_qubits) {
    check_supported(num_qubits);
    std::vector<PauliReset> out;
    for (uint64_t i = 1; i < pauli_basis_size(num_qubits); i++) {
        PauliString p = PauliString::from_index(num_qubits, i);
        out.push_back({p});
        p.negate();
        out.push_back({p});
    }
    return out;
}

ChannelDictionary::ChannelDictionary(size_t num_qubits)
    : num_qubits_(num_qubits), column_size_(pauli_basis_size(num_qubits) * pauli_basis_size(num_qubits)) {
    for (const auto &c : enumerate_cliffords(num_qubits)) {
        terms_.emplace_back(c);
    }
    for (const auto &r : enumerate_pauli_resets(num_qubits)) {
        terms_.emplace_back(r);
    }
    columns_.resize(terms_.size() * column_size_);
    for (size_t t = 0; t < terms_.size(); t++) {
        Ptm ptm = term_to_ptm(terms_[t]);
        std::copy(ptm.entries().begin(), ptm.entries().end(), columns_.begin() + t * column_size_);
    }
}

SimplexResult solve_simplex(const StandardFormLp &lp, double feas_tol) {
    const size_t m = lp.rows;
    const size_t n = lp.cols;
    if (lp.a.size() != m * n || lp.b.size() != m || lp.c.size() != n) {
        throw std::invalid_argument("solve_simplex: inconsistent problem dimensions");
    }
    // Sparse columns of [A | I] after flipping rows with b < 0; column n + i is
    // the artificial of row i.
    const size_t total = n + m;
    std::vector<double> b(m);
    std::vector<double> flip(m);
    for (size_t i = 0; i < m; i++) {
        flip[i] = lp.b[i] < 0 ? -1.0 : 1.0;
        b[i] = flip[i] * lp.b[i];
    }
    std::vector<size_t> col_start{0};
    std::vector<uint32_t> col_row;
    std::vector<double> col_val;
    for (size_t j = 0; j < n; j++) {
        for (size_t i = 0; i < m; i++) {
            double v = lp.a[i * n + j];
            if (v != 0.0) {
                col_row.push_back(static_cast<uint32_t>(i));
                col_val.push_back(flip[i] * v);
            }
        }
        col_start.push_back(col_row.size());
    }
    for (size_t i = 0; i < m; i++) {
        col_row.push_back(static_cast<uint32_t>(i));
        col_val.push_back(1.0);
        col_start.push_back(col_row.size());
    }

    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    RowMajor binv = RowMajor::Identity(m, m);
    std::vector<size_t> basis(m);
    std::vector<char> is_basic(total, 0);
    for (size_t i = 0; i < m; i++) {
        basis[i] = n + i;
        is_basic[n + i] = 1;
    }
    std::vector<double> rhs = b;
    Eigen::VectorXd xb = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(m));
    std::vector<double> cost(total, 0.0);
    Eigen::VectorXd y(m);
    Eigen::VectorXd alpha(m);
    std::vector<double> reduced(total, 0.0);

    auto refactor = [&]() {
        Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m, m);
        for (size_t i = 0; i < m; i++) {
            for (size_t k = col_start[basis[i]]; k < col_start[basis[i] + 1]; k++) {
                basis_matrix(col_row[k], i) = col_val[k];
            }
        }
        binv = Eigen::PartialPivLU<Eigen::MatrixXd>(basis_matrix).inverse();
        xb = binv * Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(m));
    };
    // Reduced costs c_j - y A_j for nonbasic j < limit, with y = c_B B^-1.
    auto price = [&](size_t limit) {
        y.setZero();
        for (size_t i = 0; i < m; i++) {
            double cb = cost[basis[i]];
            if (cb != 0.0) {
                y += cb * binv.row(i).transpose();
            }
        }
        for (size_t j = 0; j < limit; j++) {
            if (is_basic[j]) {
                reduced[j] = 0.0;
                continue;
            }
            double d = cost[j];
            for (size_t k = col_start[j]; k < col_start[j + 1]; k++) {
                d -= y[col_row[k]] * col_val[k];
            }
            reduced[j] = d;
        }
    };
    auto column = [&](size_t j) {
        alpha.setZero();
        for (size_t k = col_start[j]; k < col_start[j + 1]; k++) {
            alpha += col_val[k] * binv.col(col_row[k]);
        }
    };
    // Row r of B^-1 A at column j.
    auto row_entry = [&](size_t r, size_t j) {
        double v = 0;
        for (size_t k = col_start[j]; k < col_start[j + 1]; k++) {
            v += binv(r, col_row[k]) * col_val[k];
        }
        return v;
    };
    // Basis change with `alpha` holding B^-1 A_enter.
    auto pivot = [&](size_t leave, size_t enter) {
        double step = xb[leave] / alpha[leave];
        xb -= step * alpha;
        xb[leave] = step;
        binv.row(leave) /= alpha[leave];
        for (size_t i = 0; i < m; i++) {
            if (i != leave && alpha[i] != 0.0) {
                binv.row(i) -= alpha[i] * binv.row(leave);
            }
        }
        is_basic[basis[leave]] = 0;
        is_basic[enter] = 1;
        basis[leave] = enter;
    };

    SimplexResult result;
    // Dantzig pricing with a Harris ratio test. After a run of degenerate
    // pivots, Bland's rule (lowest improving index, ratio ties broken by the
    // lowest basic variable) until a pivot makes progress. Optimality is only
    // accepted right after refactoring.
    std::vector<char> skipped(total, 0);
    std::vector<size_t> skipped_list;
    auto run = [&](size_t limit) {
        size_t degenerate_run = 0;
        size_t since_refactor = 0;
        bool fresh = false;
        while (true) {
            if (since_refactor >= kRefactorInterval) {
                refactor();
                since_refactor = 0;
                fresh = true;
            }
            price(limit);
            bool bland = degenerate_run >= kDegenerateRunLimit;
            size_t enter = limit;
            double most_negative = -kOptimalityTol;
            for (size_t j = 0; j < limit; j++) {
                if (!skipped[j] && reduced[j] < most_negative) {
                    enter = j;
                    if (bland) {
                        break;
                    }
                    most_negative = reduced[j];
                }
            }
            if (enter == limit) {
                if (fresh) {
                    for (size_t j : skipped_list) {
                        skipped[j] = 0;
                    }
                    skipped_list.clear();
                    return;
                }
                since_refactor = kRefactorInterval;
                continue;
            }
            column(enter);
            size_t leave = m;
            if (bland) {
                double best = std::numeric_limits<double>::infinity();
                for (size_t i = 0; i < m; i++) {
                    if (alpha[i] <= kPivotTol) {
                        continue;
                    }
                    double ratio = std::max(xb[i], 0.0) / alpha[i];
                    if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
                        best = ratio;
                        leave = i;
                    }
                }
            } else {
                double bound = std::numeric_limits<double>::infinity();
                for (size_t i = 0; i < m; i++) {
                    if (alpha[i] > kPivotTol) {
                        bound = std::min(bound, (std::max(xb[i], 0.0) + kHarrisTol) / alpha[i]);
                    }
                }
                double largest = 0;
                for (size_t i = 0; i < m; i++) {
                    if (alpha[i] > kPivotTol && std::max(xb[i], 0.0) / alpha[i] <= bound && alpha[i] > largest) {
                        largest = alpha[i];
                        leave = i;
                    }
                }
            }
            if (leave == m) {
                // Only tiny positive entries means pricing noise; skip the
                // column until the next pivot.
                if (alpha.maxCoeff() <= 0.0) {
                    throw std::runtime_error("solve_simplex: problem is unbounded");
                }
                skipped[enter] = 1;
                skipped_list.push_back(enter);
                continue;
            }
            xb[leave] = std::max(xb[leave], 0.0);
            double step = xb[leave] / alpha[leave];
            degenerate_run = -step * reduced[enter] < kDegenerateStep ? degenerate_run + 1 : 0;
            pivot(leave, enter);
            for (size_t j : skipped_list) {
                skipped[j] = 0;
            }
            skipped_list.clear();
            result.iterations++;
            since_refactor++;
            fresh = false;
        }
    };

    // Both phases run on b + A u for a small random u > 0: still feasible
    // whenever b is, but free of the degeneracy of sparse channel targets.
    std::mt19937_64 perturb_rng(kPerturbSeed);
    std::uniform_real_distribution<double> perturb(kPerturbMin, kPerturbMax);
    for (size_t j = 0; j < n; j++) {
        double u = perturb(perturb_rng);
        for (size_t k = col_start[j]; k < col_start[j + 1]; k++) {
            rhs[col_row[k]] += u * col_val[k];
        }
    }
    refactor();

    // Phase I: minimize the sum of artificials.
    std::fill(cost.begin() + n, cost.end(), 1.0);
    run(n);
    double infeasibility = 0;
    for (size_t i = 0; i < m; i++) {
        infeasibility += cost[basis[i]] * xb[i];
    }
    if (infeasibility > feas_tol) {
        return result;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (size_t i = 0; i < m; i++) {
        if (basis[i] < n) {
            continue;
        }
        size_t best = n;
        double best_abs = kPivotTol;
        for (size_t j = 0; j < n; j++) {
            if (!is_basic[j]) {
                double v = std::abs(row_entry(i, j));
                if (v > best_abs) {
                    best_abs = v;
                    best = j;
                }
            }
        }
        if (best < n) {
            column(best);
            pivot(i, best);
        }
    }

    // Phase II on the original costs; artificials never re-enter.
    std::copy(lp.c.begin(), lp.c.end(), cost.begin());
    std::fill(cost.begin() + n, cost.end(), 0.0);
    refactor();
    run(n);
    rhs = b;
    refactor();

    // Dual simplex cleanup of the infeasibility left by removing the shift.
    price(n);
    size_t since_refactor = 0;
    while (true) {
        size_t leave = m;
        double most_negative = -feas_tol;
        for (size_t i = 0; i < m; i++) {
            if (xb[i] < most_negative) {
                most_negative = xb[i];
                leave = i;
            }
        }
        if (leave == m) {
            break;
        }
        size_t enter = n;
        double best = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < n; j++) {
            if (is_basic[j]) {
                continue;
            }
            double v = row_entry(leave, j);
            if (v < -kPivotTol) {
                double ratio = std::max(reduced[j], 0.0) / -v;
                if (ratio < best) {
                    best = ratio;
                    enter = j;
                }
            }
        }
        if (enter == n) {
            return result;
        }
        column(enter);
        pivot(leave, enter);
        result.iterations++;
        if (++since_refactor >= kRefactorInterval) {
            refactor();
            since_refactor = 0;
        }
        price(n);
    }

    for (size_t i = 0; i < m; i++) {
        if (basis[i] >= n && xb[i] > feas_tol) {
            return result;
        }
    }
    result.feasible = true;
    result.x.assign(n, 0.0);
    for (size_t i = 0; i < m; i++) {
        if (basis[i] < n) {
            result.x[basis[i]] = std::max(xb[i], 0.0);
        }
    }
    for (size_t j = 0; j < n; j++) {
        result.objective += lp.c[j] * result.x[j];
    }
    return result;
}

LpSolution solve_min_norm(const Ptm &channel, const ChannelDictionary &dict, double feas_tol) {
    if (channel.num_qubits() != dict.num_qubits()) {
        throw std::invalid_argument("channel and dictionary qubit counts differ");
    }
    const size_t terms = dict.size();
    const size_t entries = dict.column_size();
    auto target = channel.entries();

    // Rows where every dictionary column vanishes carry no unknowns.
    LpSolution sol;
    std::vector<size_t> live_rows;
    for (size_t r = 0; r < entries; r++) {
        bool any = false;
        for (size_t t = 0; t < terms && !any; t++) {
            any = dict.ptm_column(t)[r] != 0.0;
        }
        if (any) {
            live_rows.push_back(r);
        } else if (std::abs(target[r]) > feas_tol) {
            return sol;
        }
    }

    StandardFormLp lp;
    lp.rows = live_rows.size();
    lp.cols = 2 * terms;
    lp.a.assign(lp.rows * lp.cols, 0.0);
    lp.b.resize(lp.rows);
    lp.c.assign(lp.cols, 1.0);
    for (size_t i = 0; i < lp.rows; i++) {
        size_t r = live_rows[i];
        lp.b[i] = target[r];
        for (size_t t = 0; t < terms; t++) {
            double v = dict.ptm_column(t)[r];
            lp.a[i * lp.cols + t] = v;
            lp.a[i * lp.cols + terms + t] = -v;
        }
    }
    SimplexResult res = solve_simplex(lp, feas_tol);
    sol.iterations = res.iterations;
    if (!res.feasible) {
        return sol;
    }
    sol.q.resize(terms);
    for (size_t t = 0; t < terms; t++) {
        sol.q[t] = res.x[t] - res.x[terms + t];
    }
    double worst = 0;
    for (size_t r = 0; r < entries; r++) {
        double acc = 0;
        for (size_t t = 0; t < terms; t++) {
            if (sol.q[t] != 0.0) {
                acc += sol.q[t] * dict.ptm_column(t)[r];
            }
        }
        double diff = std::abs(acc - target[r]);
        if (!(diff <= worst)) {
            worst = diff;
        }
    }
    sol.residual = worst;
    sol.objective = 0;
    for (double q : sol.q) {
        sol.objective += std::abs(q);
    }
    sol.status = worst <= feas_tol ? LpSolution::Status::Optimal : LpSolution::Status::Infeasible;
    return sol;
}

StabilizerDecomposition decompose_min_norm(const Ptm &channel, const ChannelDictionary &dict, double feas_tol) {
    if (channel.num_qubits() != dict.num_qubits()) {
        throw std::invalid_argument("channel and dictionary qubit counts differ");
    }
    if (!channel.is_trace_preserving(feas_tol)) {
        throw std::invalid_argument("channel is not trace preserving");
    }
    LpSolution sol = solve_min_norm(channel, dict, feas_tol);
    if (sol.status != LpSolution::Status::Optimal) {
        throw InfeasibleError("no stabilizer decomposition found (residual " + std::to_string(sol.residual) + ")");
    }
    StabilizerDecomposition out{dict.num_qubits(), {}};
    for (size_t t = 0; t < sol.q.size(); t++) {
        if (std::abs(sol.q[t]) >= kPruneTol) {
            out.terms.push_back({sol.q[t], dict.terms()[t]});
        }
    }
    return out;
}

namespace {

// (1/4^n) sum_Q <P,Q> C o Q with C mapping p_in to +p_out.
StabilizerDecomposition clifford_basis_channel(const PauliString &p_in, const PauliString &p_out) {
    size_t n = p_in.num_qubits();
    const CliffordAction *chosen = nullptr;
    for (const auto &c : enumerate_cliffords(n)) {
        if (c.conjugate(p_in) == p_out) {
            chosen = &c;
            break;
        }
    }
    if (chosen == nullptr) {
        throw std::logic_error("no Clifford maps " + p_in.str() + " to " + p_out.str());
    }
    StabilizerDecomposition out{n, {}};
    double scale = 1.0 / static_cast<double>(pauli_basis_size(n));
    for (const auto &q : pauli_basis(n)) {
        out.terms.push_back({scale * comm_sign(p_in, q), CliffordAction::pauli(q).then(*chosen)});
    }
    return out;
}

}  // namespace

StabilizerDecomposition basis_channel_decomposition(const PauliString &p_in, const PauliString &p_out) {
    size_t n = p_in.num_qubits();
    check_supported(n);
    if (p_out.num_qubits() != n) {
        throw std::invalid_argument("basis channel Paulis have different sizes");
    }
    PauliString in = p_in.unsigned_part();
    PauliString out = p_out.unsigned_part();
    if (!in.is_identity_letters() && out.is_identity_letters()) {
        throw std::invalid_argument("no trace-preserving component maps a non-identity Pauli to the identity");
    }
    if (!in.is_identity_letters() || out.is_identity_letters()) {
        return clifford_basis_channel(in, out);
    }

    // Identity to P': R_{P'} minus its other PTM entries, each expanded by the
    // Clifford construction above.
    Ptm reset = term_to_ptm(PauliReset{out});
    StabilizerDecomposition result{n, {{1.0, PauliReset{out}}}};
    std::vector<PauliString> basis = pauli_basis(n);
    auto subtract = [&](double weight, const StabilizerDecomposition &d) {
        for (const auto &t : d.terms) {
            result.terms.push_back({-weight * t.q, t.term});
        }
    };
    subtract(1.0, clifford_basis_channel(basis[0], basis[0]));
    for (size_t a = 1; a < basis.size(); a++) {
        for (size_t b = 1; b < basis.size(); b++) {
            double v = reset(b, a);
            if (v == 0.0) {
                continue;
            }
            StabilizerDecomposition piece = clifford_basis_channel(basis[a], basis[b]);
            subtract(v, piece);
        }
    }
    return merge_terms(result, kPruneTol);
}

double verify_decomposition(const Ptm &channel, const StabilizerDecomposition &d) {
    if (channel.num_qubits() != d.num_qubits) {
        throw std::invalid_argument("channel and decomposition qubit counts differ");
    }
    return channel.max_abs_diff(decomp_to_ptm(d));
}

}  // namespace ncsim
