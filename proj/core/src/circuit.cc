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

#include "ncsim/circuit.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "ncsim/io.h"

namespace ncsim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<size_t> support(const PauliString &p) {
    std::vector<size_t> out;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        if (p.x(q) || p.z(q)) {
            out.push_back(q);
        }
    }
    return out;
}

PauliString restrict_to(const PauliString &p, const std::vector<size_t> &qubits) {
    PauliString out(qubits.size());
    for (size_t k = 0; k < qubits.size(); k++) {
        out.set_letter(k, p.letter(qubits[k]));
    }
    out.set_phase(p.phase());
    return out;
}

}  // namespace

std::vector<size_t> instruction_qubits(const Instruction &inst) {
    return std::visit(
        Overloaded{
            [](const GateOp &g) { return g.qubits; },
            [](const NoiseOp &n) { return n.qubits; },
            [](const MeasurePauliOp &m) { return support(m.observable); },
            [](const ResetPauliOp &r) { return support(r.target); },
            [](const MeasureResetOp &m) { return std::vector<size_t>{m.qubit}; },
        },
        inst);
}

bool is_measurement(const Instruction &inst) {
    return std::holds_alternative<MeasurePauliOp>(inst) || std::holds_alternative<MeasureResetOp>(inst);
}

std::string instruction_str(const Instruction &inst) {
    return std::visit(
        Overloaded{
            [](const GateOp &g) {
                std::string out(gate_name(g.gate));
                for (size_t q : g.qubits) {
                    out += " " + std::to_string(q);
                }
                return out;
            },
            [](const NoiseOp &n) {
                std::string out = "noise " + n.channel.name + "(";
                for (size_t i = 0; i < n.channel.params.size(); i++) {
                    out += (i ? "," : "") + format_double(n.channel.params[i]);
                }
                out += ")";
                for (size_t q : n.qubits) {
                    out += " " + std::to_string(q);
                }
                return out;
            },
            [](const MeasurePauliOp &m) {
                return "measure_pauli " + m.observable.str() + " -> " + std::to_string(m.cbit);
            },
            [](const ResetPauliOp &r) { return "reset_pauli " + r.target.str(); },
            [](const MeasureResetOp &m) { return "mr " + std::to_string(m.qubit) + " -> " + std::to_string(m.cbit); },
        },
        inst);
}

void Circuit::append(Instruction inst, bool new_step) {
    std::vector<size_t> qubits = instruction_qubits(inst);
    for (size_t i = 0; i < qubits.size(); i++) {
        if (qubits[i] >= num_qubits) {
            throw std::out_of_range("qubit " + std::to_string(qubits[i]) + " is not declared");
        }
        for (size_t j = 0; j < i; j++) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument("instruction repeats qubit " + std::to_string(qubits[i]));
            }
        }
    }
    if (const auto *g = std::get_if<GateOp>(&inst)) {
        if (g->qubits.size() != gate_arity(g->gate)) {
            throw std::invalid_argument("gate " + std::string(gate_name(g->gate)) + " has the wrong arity");
        }
    }
    if (const auto *n = std::get_if<NoiseOp>(&inst); n && n->qubits.empty()) {
        throw std::invalid_argument("noise instruction needs at least one qubit");
    }
    for (const PauliString *p : {std::get_if<MeasurePauliOp>(&inst) ? &std::get<MeasurePauliOp>(inst).observable
                                                                     : nullptr,
                                 std::get_if<ResetPauliOp>(&inst) ? &std::get<ResetPauliOp>(inst).target : nullptr}) {
        if (p == nullptr) {
            continue;
        }
        if (p->num_qubits() != num_qubits) {
            throw std::invalid_argument("Pauli " + p->str() + " does not match the register size");
        }
        if (!p->is_hermitian()) {
            throw std::invalid_argument("Pauli " + p->str() + " is not Hermitian");
        }
        if (p->is_identity_letters() && std::holds_alternative<ResetPauliOp>(inst)) {
            throw std::invalid_argument("cannot reset onto the identity");
        }
    }
    bool fits = !new_step && !steps.empty();
    if (fits) {
        for (const auto &other : steps.back()) {
            for (size_t q : instruction_qubits(other)) {
                if (std::find(qubits.begin(), qubits.end(), q) != qubits.end()) {
                    fits = false;
                }
            }
        }
        // Identity-support measurements still order against the step.
        if (qubits.empty()) {
            fits = false;
        }
    }
    if (!fits) {
        steps.emplace_back();
    }
    steps.back().push_back(std::move(inst));
}

size_t Circuit::num_instructions() const {
    size_t total = 0;
    for (const auto &s : steps) {
        total += s.size();
    }
    return total;
}

size_t Circuit::num_cbits() const {
    size_t count = 0;
    for (const auto &s : steps) {
        for (const auto &inst : s) {
            if (const auto *m = std::get_if<MeasurePauliOp>(&inst)) {
                count = std::max(count, m->cbit + 1);
            } else if (const auto *r = std::get_if<MeasureResetOp>(&inst)) {
                count = std::max(count, r->cbit + 1);
            }
        }
    }
    return count;
}

ParseError::ParseError(size_t line, size_t column, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    std::string_view text;
    size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            i++;
            continue;
        }
        size_t start = i;
        // A noise spec NAME(...) is one token even if it contains spaces.
        int depth = 0;
        while (i < line.size() && (depth > 0 || (line[i] != ' ' && line[i] != '\t' && line[i] != '\r'))) {
            if (line[i] == '(') {
                depth++;
            } else if (line[i] == ')') {
                depth--;
            }
            i++;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

class LineParser {
   public:
    LineParser(size_t line, std::vector<Token> tokens) : line_(line), tokens_(std::move(tokens)) {}

    [[noreturn]] void fail(const Token &t, const std::string &message) const { throw ParseError(line_, t.column, message); }
    [[noreturn]] void fail_end(const std::string &message) const {
        size_t col = tokens_.empty() ? 1 : tokens_.back().column + tokens_.back().text.size();
        throw ParseError(line_, col, message);
    }

    bool done() const { return pos_ == tokens_.size(); }
    const Token &next(const char *what) {
        if (done()) {
            fail_end(std::string("expected ") + what);
        }
        return tokens_[pos_++];
    }
    size_t integer(const char *what) {
        const Token &t = next(what);
        size_t value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
            fail(t, std::string("expected ") + what + ", got '" + std::string(t.text) + "'");
        }
        return value;
    }
    size_t qubit(size_t n) {
        const Token &t = peek();
        size_t q = integer("qubit index");
        if (q >= n) {
            fail(t, "qubit " + std::to_string(q) + " is not declared (circuit has " + std::to_string(n) + ")");
        }
        return q;
    }
    void arrow() {
        const Token &t = next("'->'");
        if (t.text != "->") {
            fail(t, "expected '->', got '" + std::string(t.text) + "'");
        }
    }
    PauliString pauli(size_t n) {
        const Token &t = next("Pauli string");
        PauliString p;
        try {
            p = PauliString::from_text(t.text);
        } catch (const std::exception &e) {
            fail(t, std::string("bad Pauli string: ") + e.what());
        }
        if (p.num_qubits() != n) {
            fail(t, "Pauli string has " + std::to_string(p.num_qubits()) + " letters, circuit has " +
                        std::to_string(n) + " qubits");
        }
        if (!p.is_hermitian()) {
            fail(t, "Pauli string must be Hermitian");
        }
        return p;
    }
    void end() {
        if (!done()) {
            fail(tokens_[pos_], "unexpected '" + std::string(tokens_[pos_].text) + "'");
        }
    }
    /// The next token, or the last one at the end of the line.
    const Token &peek() const { return tokens_[std::min(pos_, tokens_.size() - 1)]; }

   private:
    size_t line_;
    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

ChannelSpec parse_channel_spec(const Token &t, LineParser &lp) {
    std::string_view text = t.text;
    ChannelSpec spec;
    size_t open = text.find('(');
    if (open == std::string_view::npos) {
        spec.name = std::string(text);
    } else {
        if (text.back() != ')') {
            lp.fail(t, "unterminated parameter list");
        }
        spec.name = std::string(text.substr(0, open));
        std::string_view inner = text.substr(open + 1, text.size() - open - 2);
        size_t start = 0;
        while (start <= inner.size()) {
            size_t comma = inner.find(',', start);
            std::string_view piece = inner.substr(start, comma == std::string_view::npos ? inner.npos : comma - start);
            while (!piece.empty() && piece.front() == ' ') {
                piece.remove_prefix(1);
            }
            while (!piece.empty() && piece.back() == ' ') {
                piece.remove_suffix(1);
            }
            if (piece.empty()) {
                if (comma == std::string_view::npos && spec.params.empty() && inner.find_first_not_of(' ') == inner.npos) {
                    break;
                }
                lp.fail(t, "empty channel parameter");
            }
            std::string s(piece);
            size_t used = 0;
            double v = 0;
            try {
                v = std::stod(s, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != s.size()) {
                lp.fail(t, "bad channel parameter '" + s + "'");
            }
            spec.params.push_back(v);
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
    }
    if (spec.name.empty()) {
        lp.fail(t, "missing channel name");
    }
    return spec;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool declared = false;
    bool force_new_step = false;
    std::set<size_t> cbits;
    size_t line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        line_no++;
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::vector<Token> tokens = tokenize(line);
        if (tokens.empty()) {
            continue;
        }
        LineParser lp(line_no, tokens);
        const Token &head = lp.next("instruction");
        std::string_view op = head.text;
        if (!declared) {
            if (op != "qubits") {
                lp.fail(head, "the first instruction must be 'qubits N'");
            }
            const Token &nt = lp.peek();
            c.num_qubits = lp.integer("qubit count");
            if (c.num_qubits == 0) {
                lp.fail(nt, "qubit count must be positive");
            }
            lp.end();
            declared = true;
            continue;
        }
        auto add = [&](Instruction inst) {
            try {
                c.append(std::move(inst), force_new_step);
            } catch (const std::exception &e) {
                lp.fail(head, e.what());
            }
            force_new_step = false;
        };
        auto claim_cbit = [&](const Token &t, size_t cbit) {
            if (!cbits.insert(cbit).second) {
                lp.fail(t, "classical bit " + std::to_string(cbit) + " is written twice");
            }
        };
        if (op == "qubits") {
            lp.fail(head, "qubits declared twice");
        } else if (op == "barrier") {
            lp.end();
            force_new_step = true;
        } else if (auto gate = gate_from_name(op)) {
            GateOp g{*gate, {}};
            for (size_t k = 0; k < gate_arity(*gate); k++) {
                g.qubits.push_back(lp.qubit(c.num_qubits));
            }
            if (!lp.done()) {
                lp.fail(lp.peek(), "gate '" + std::string(op) + "' takes " + std::to_string(gate_arity(*gate)) +
                                       " qubit(s)");
            }
            add(std::move(g));
        } else if (op == "noise") {
            const Token &spec_token = lp.next("channel");
            NoiseOp n{parse_channel_spec(spec_token, lp), {}};
            while (!lp.done()) {
                n.qubits.push_back(lp.qubit(c.num_qubits));
            }
            if (n.qubits.empty()) {
                lp.fail_end("noise needs at least one qubit");
            }
            add(std::move(n));
        } else if (op == "measure_pauli") {
            PauliString p = lp.pauli(c.num_qubits);
            lp.arrow();
            const Token &ct = lp.peek();
            size_t cbit = lp.integer("classical bit");
            lp.end();
            claim_cbit(ct, cbit);
            add(MeasurePauliOp{std::move(p), cbit});
        } else if (op == "reset_pauli") {
            const Token &pt = lp.peek();
            PauliString p = lp.pauli(c.num_qubits);
            lp.end();
            if (p.is_identity_letters()) {
                lp.fail(pt, "cannot reset onto the identity");
            }
            add(ResetPauliOp{std::move(p)});
        } else if (op == "mr") {
            size_t q = lp.qubit(c.num_qubits);
            lp.arrow();
            const Token &ct = lp.peek();
            size_t cbit = lp.integer("classical bit");
            lp.end();
            claim_cbit(ct, cbit);
            add(MeasureResetOp{q, cbit});
        } else {
            lp.fail(head, "unknown instruction '" + std::string(op) + "'");
        }
    }
    if (!declared) {
        throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'qubits N' declaration");
    }
    return c;
}

std::string render_circuit(const Circuit &c) {
    std::ostringstream out;
    out << "qubits " << c.num_qubits << "\n";
    for (size_t s = 0; s < c.steps.size(); s++) {
        if (s) {
            out << "barrier\n";
        }
        for (const auto &inst : c.steps[s]) {
            out << instruction_str(inst) << "\n";
        }
    }
    return out.str();
}

Circuit insert_noise(const Circuit &c, const NoiseModel &model) {
    Circuit out{c.num_qubits, {}};
    for (const auto &step : c.steps) {
        out.steps.push_back(step);
        std::set<size_t> touched;
        bool has_operation = false;
        for (const auto &inst : step) {
            if (std::holds_alternative<NoiseOp>(inst)) {
                continue;
            }
            has_operation = true;
            for (size_t q : instruction_qubits(inst)) {
                touched.insert(q);
            }
        }
        if (!has_operation || touched.empty()) {
            continue;
        }
        std::vector<Instruction> noise;
        for (size_t q : touched) {
            noise.push_back(NoiseOp{model.channel, {q}});
        }
        out.steps.push_back(std::move(noise));
    }
    return out;
}

void ChannelRegistry::add(const std::string &name, StabilizerDecomposition d) { custom_[name] = std::move(d); }

StabilizerDecomposition ChannelRegistry::lookup(const ChannelSpec &spec) const {
    if (auto it = custom_.find(spec.name); it != custom_.end()) {
        if (!spec.params.empty()) {
            throw std::invalid_argument("registered channel '" + spec.name + "' takes no parameters");
        }
        return it->second;
    }
    return make_named_channel(spec);
}

std::vector<ChannelApplication> instruction_channels(
    const Instruction &inst, size_t num_qubits, const ChannelRegistry &registry) {
    std::vector<ChannelApplication> out;
    std::visit(
        Overloaded{
            [&](const GateOp &g) {
                if (g.gate == Gate::I) {
                    out.push_back({make_identity_channel(1), g.qubits});
                } else {
                    out.push_back({make_clifford_channel(CliffordAction::from_gate(g.gate)), g.qubits});
                }
            },
            [&](const NoiseOp &n) {
                StabilizerDecomposition d = registry.lookup(n.channel);
                if (d.num_qubits == 1) {
                    for (size_t q : n.qubits) {
                        out.push_back({d, {q}});
                    }
                } else if (d.num_qubits == n.qubits.size()) {
                    out.push_back({d, n.qubits});
                } else {
                    throw std::invalid_argument(
                        "channel " + n.channel.str() + " acts on " + std::to_string(d.num_qubits) +
                        " qubits but is applied to " + std::to_string(n.qubits.size()));
                }
            },
            [&](const MeasurePauliOp &m) {
                std::vector<size_t> qs = support(m.observable);
                if (!qs.empty()) {
                    out.push_back({make_pauli_dephasing(restrict_to(m.observable, qs)), qs});
                }
            },
            [&](const ResetPauliOp &r) {
                std::vector<size_t> qs = support(r.target);
                out.push_back({make_pauli_reset_channel(restrict_to(r.target, qs)), qs});
            },
            [&](const MeasureResetOp &m) {
                out.push_back({make_pauli_reset_channel(PauliString::from_text("+Z")), {m.qubit}});
            },
        },
        inst);
    for (const auto &app : out) {
        for (size_t q : app.qubits) {
            if (q >= num_qubits) {
                throw std::out_of_range("instruction acts on an undeclared qubit");
            }
        }
    }
    return out;
}

SimulationPlan compile(const Circuit &c, const ChannelRegistry &registry) {
    SimulationPlan plan;
    plan.num_qubits = c.num_qubits;
    for (const auto &step : c.steps) {
        for (const auto &inst : step) {
            for (auto &app : instruction_channels(inst, c.num_qubits, registry)) {
                plan.channels.push_back(std::move(app));
            }
        }
    }
    return plan;
}

DynamicExecutor::DynamicExecutor(const Circuit &c, const ChannelRegistry &registry)
    : num_qubits_(c.num_qubits), registry_(registry) {
    for (const auto &step : c.steps) {
        std::vector<Op> ops;
        bool measures = false;
        for (const auto &inst : step) {
            Op op{inst, {}};
            if (std::holds_alternative<NoiseOp>(inst)) {
                for (const auto &app : instruction_channels(inst, num_qubits_, registry_)) {
                    op.noise.emplace_back(app.channel, app.qubits, num_qubits_);
                }
            }
            measures = measures || is_measurement(inst);
            ops.push_back(std::move(op));
        }
        steps_.push_back(std::move(ops));
        step_measures_.push_back(measures);
    }
}

double DynamicExecutor::one_norm_product() const {
    double g = 1.0;
    for (const auto &step : steps_) {
        for (const auto &op : step) {
            for (const auto &ch : op.noise) {
                g *= ch.one_norm();
            }
        }
    }
    return g;
}

void DynamicExecutor::run_instruction(const Instruction &inst, Tableau &t, SplitMix64 &rng, DynamicResult &out) const {
    auto record = [&](size_t cbit, int outcome) {
        if (out.bits.size() <= cbit) {
            out.bits.resize(cbit + 1, 0);
        }
        out.bits[cbit] = outcome < 0 ? 1 : 0;
        out.num_measurements++;
    };
    std::visit(
        Overloaded{
            [&](const GateOp &g) { t.apply_gate(g.gate, g.qubits); },
            [&](const NoiseOp &) {
                for (const auto &app : instruction_channels(inst, num_qubits_, registry_)) {
                    SampledChannel ch(app.channel, app.qubits, num_qubits_);
                    out.weight *= ch.apply(t, rng) * ch.one_norm();
                }
            },
            [&](const MeasurePauliOp &m) { record(m.cbit, t.measure(m.observable, rng).outcome); },
            [&](const ResetPauliOp &r) { t.pauli_reset(r.target, rng); },
            [&](const MeasureResetOp &m) {
                record(m.cbit, t.measure_and_reset(PauliString::single(num_qubits_, m.qubit, 'Z'), rng).outcome);
            },
        },
        inst);
}

DynamicResult DynamicExecutor::run(Tableau &t, SplitMix64 &rng, const FeedbackHandler &handler) const {
    if (t.num_qubits() != num_qubits_) {
        throw std::invalid_argument("tableau size does not match the circuit");
    }
    DynamicResult out;
    int sign = 1;
    double magnitude = 1.0;
    for (size_t s = 0; s < steps_.size(); s++) {
        for (const auto &op : steps_[s]) {
            if (!op.noise.empty()) {
                for (const auto &ch : op.noise) {
                    sign *= ch.apply(t, rng);
                    magnitude *= ch.one_norm();
                }
            } else if (!std::holds_alternative<NoiseOp>(op.inst)) {
                run_instruction(op.inst, t, rng, out);
            }
        }
        if (handler && step_measures_[s]) {
            for (const auto &inst : handler(out)) {
                for (size_t q : instruction_qubits(inst)) {
                    if (q >= num_qubits_) {
                        throw std::invalid_argument("feedback instruction acts on an undeclared qubit");
                    }
                }
                if (const auto *g = std::get_if<GateOp>(&inst); g && g->qubits.size() != gate_arity(g->gate)) {
                    throw std::invalid_argument("feedback gate has the wrong arity");
                }
                run_instruction(inst, t, rng, out);
            }
        }
    }
    out.weight = sign * magnitude * out.weight;
    return out;
}

DynamicResult execute_dynamic(
    const Circuit &c, Tableau &t, SplitMix64 &rng, const FeedbackHandler &handler, const ChannelRegistry &registry) {
    return DynamicExecutor(c, registry).run(t, rng, handler);
}

}  // namespace ncsim
