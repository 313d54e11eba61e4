/*
 * Copyright 2026 qdsim developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qdsim/state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qdsim {

TwoQubitState TwoQubitState::from_matrix(const Mat4& m) {
    const double herm = hermiticity_defect(m);
    if (!(herm < kHermitianTol)) {
        std::ostringstream os;
        os << "density matrix is not Hermitian (defect " << herm << ")";
        throw std::invalid_argument(os.str());
    }
    const double tr = m.trace().real();
    if (!(std::abs(tr - 1.0) < kTraceTol)) {
        std::ostringstream os;
        os << "density matrix trace is " << tr << ", expected 1";
        throw std::invalid_argument(os.str());
    }
    // Work on the Hermitian part so eigenvalues are exactly real.
    const Mat4 h = 0.5 * (m + m.adjoint());
    const double min_ev = hermitian_eigenvalues(h).minCoeff();
    if (min_ev < kPsdTol) {
        std::ostringstream os;
        os << "density matrix is not PSD (min eigenvalue " << min_ev << ")";
        throw std::invalid_argument(os.str());
    }
    return TwoQubitState(h);
}

TwoQubitState TwoQubitState::singlet_state() {
    return TwoQubitState(projector(singlet()));
}

TwoQubitState TwoQubitState::maximally_mixed() {
    return TwoQubitState(0.25 * Mat4::Identity());
}

std::string TwoQubitState::to_json() const {
    nlohmann::ordered_json j;
    j["basis"] = kBasisLabels;
    nlohmann::ordered_json re = nlohmann::ordered_json::array();
    nlohmann::ordered_json im = nlohmann::ordered_json::array();
    for (int i = 0; i < 4; ++i) {
        nlohmann::ordered_json row_re = nlohmann::ordered_json::array();
        nlohmann::ordered_json row_im = nlohmann::ordered_json::array();
        for (int k = 0; k < 4; ++k) {
            row_re.push_back(m_(i, k).real());
            row_im.push_back(m_(i, k).imag());
        }
        re.push_back(row_re);
        im.push_back(row_im);
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j.dump(2);
}

TwoQubitState TwoQubitState::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("state JSON parse error: ") +
                                    e.what());
    }
    if (!j.contains("re") || !j.contains("im"))
        throw std::invalid_argument("state JSON must contain re and im");
    if (j.contains("basis")) {
        const auto& b = j["basis"];
        if (b.size() != 4)
            throw std::invalid_argument("state JSON basis must have 4 labels");
        for (int i = 0; i < 4; ++i)
            if (b[i] != kBasisLabels[i])
                throw std::invalid_argument(
                    "state JSON basis must be [HH, HV, VH, VV]");
    }
    Mat4 m;
    const auto& re = j["re"];
    const auto& im = j["im"];
    if (re.size() != 4 || im.size() != 4)
        throw std::invalid_argument("state JSON re/im must be 4x4");
    for (int i = 0; i < 4; ++i) {
        if (re[i].size() != 4 || im[i].size() != 4)
            throw std::invalid_argument("state JSON re/im must be 4x4");
        for (int k = 0; k < 4; ++k)
            m(i, k) = Complex{re[i][k].get<double>(), im[i][k].get<double>()};
    }
    return from_matrix(m);
}

} // namespace qdsim
