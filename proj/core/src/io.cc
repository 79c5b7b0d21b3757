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

#include "ncsim/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ncsim {

using nlohmann::json;

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string decomposition_to_json(const StabilizerDecomposition &d) {
    std::ostringstream out;
    out << "{\n  \"n\": " << d.num_qubits << ",\n";
    out << "  \"one_norm\": " << format_double(one_norm(d)) << ",\n";
    out << "  \"negativity\": " << format_double(negativity(d)) << ",\n";
    out << "  \"terms\": [";
    for (size_t i = 0; i < d.terms.size(); i++) {
        const auto &t = d.terms[i];
        out << (i ? ",\n    " : "\n    ") << "{\"q\": " << format_double(t.q);
        if (const auto *c = std::get_if<CliffordAction>(&t.term)) {
            out << ", \"kind\": \"clifford\", \"action\": {";
            for (size_t k = 0; k < c->num_qubits(); k++) {
                out << (k ? ", " : "") << "\"X" << k << "\": \"" << c->x_image(k).str() << "\", \"Z" << k
                    << "\": \"" << c->z_image(k).str() << "\"";
            }
            out << "}}";
        } else {
            const auto &r = std::get<PauliReset>(t.term);
            out << ", \"kind\": \"pauli_reset\", \"target\": \"" << r.target.str() << "\"}";
        }
    }
    out << (d.terms.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return out.str();
}

StabilizerDecomposition decomposition_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("decomposition JSON: ") + e.what());
    }
    try {
        StabilizerDecomposition d;
        d.num_qubits = doc.at("n").get<size_t>();
        for (const auto &t : doc.at("terms")) {
            double q = t.at("q").get<double>();
            std::string kind = t.at("kind").get<std::string>();
            if (kind == "clifford") {
                std::vector<PauliString> xs, zs;
                const auto &action = t.at("action");
                for (size_t k = 0; k < d.num_qubits; k++) {
                    xs.push_back(PauliString::from_text(action.at("X" + std::to_string(k)).get<std::string>()));
                    zs.push_back(PauliString::from_text(action.at("Z" + std::to_string(k)).get<std::string>()));
                }
                d.terms.push_back({q, CliffordAction(std::move(xs), std::move(zs))});
            } else if (kind == "pauli_reset") {
                PauliString target = PauliString::from_text(t.at("target").get<std::string>());
                if (target.num_qubits() != d.num_qubits || !target.is_hermitian()) {
                    throw std::invalid_argument("bad reset target " + target.str());
                }
                d.terms.push_back({q, PauliReset{target}});
            } else {
                throw std::invalid_argument("unknown term kind '" + kind + "'");
            }
            if (term_qubits(d.terms.back().term) != d.num_qubits) {
                throw std::invalid_argument("term size does not match n");
            }
        }
        return d;
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("decomposition JSON: ") + e.what());
    }
}

std::vector<Eigen::MatrixXcd> kraus_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("Kraus JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty()) {
        throw std::invalid_argument("Kraus JSON must be a nonempty list of matrices");
    }
    std::vector<Eigen::MatrixXcd> out;
    try {
        for (const auto &m : doc) {
            const auto &re = m.at("re");
            size_t rows = re.size();
            size_t cols = rows ? re[0].size() : 0;
            Eigen::MatrixXcd mat(rows, cols);
            for (size_t i = 0; i < rows; i++) {
                if (re[i].size() != cols) {
                    throw std::invalid_argument("Kraus JSON: ragged matrix");
                }
                for (size_t j = 0; j < cols; j++) {
                    double im = m.contains("im") ? m["im"].at(i).at(j).get<double>() : 0.0;
                    mat(i, j) = {re[i][j].get<double>(), im};
                }
            }
            out.push_back(std::move(mat));
        }
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("Kraus JSON: ") + e.what());
    }
    return out;
}

std::string kraus_to_json(const std::vector<Eigen::MatrixXcd> &kraus) {
    std::ostringstream out;
    out << "[";
    for (size_t k = 0; k < kraus.size(); k++) {
        const auto &m = kraus[k];
        out << (k ? ",\n " : "\n ") << "{";
        for (int part = 0; part < 2; part++) {
            out << (part ? ", \"im\": [" : "\"re\": [");
            for (Eigen::Index i = 0; i < m.rows(); i++) {
                out << (i ? ", [" : "[");
                for (Eigen::Index j = 0; j < m.cols(); j++) {
                    out << (j ? ", " : "") << format_double(part ? m(i, j).imag() : m(i, j).real());
                }
                out << "]";
            }
            out << "]";
        }
        out << "}";
    }
    out << "\n]\n";
    return out.str();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace ncsim
