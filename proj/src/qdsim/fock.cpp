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

#include "qdsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdsim::fock {

namespace {

// Internal wavepacket labels used by the component derivations.
constexpr std::uint8_t kPhi1 = 0;
constexpr std::uint8_t kPhi2 = 1;
constexpr std::uint8_t kGamma1 = 2;
constexpr std::uint8_t kGamma2 = 3;

bool monomial_less(const std::vector<ModeLabel>& a,
                   const std::vector<ModeLabel>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        std::less<>{});
}

} // namespace

FockExpression FockExpression::vacuum() {
    FockExpression e;
    e.add_term(Complex{1.0, 0.0}, {});
    return e;
}

FockExpression FockExpression::creation(const ModeLabel& label) {
    FockExpression e;
    e.add_term(Complex{1.0, 0.0}, {label});
    return e;
}

FockExpression FockExpression::from_terms(std::vector<Term> terms,
                                          long dropped) {
    FockExpression e;
    e.terms_ = std::move(terms);
    e.dropped_ = dropped;
    e.canonicalize();
    return e;
}

Complex FockExpression::coefficient(std::vector<ModeLabel> monomial) const {
    std::sort(monomial.begin(), monomial.end());
    for (const Term& t : terms_)
        if (t.ops == monomial) return t.amp;
    return Complex{0.0, 0.0};
}

FockExpression FockExpression::operator+(const FockExpression& other) const {
    FockExpression out;
    out.terms_ = terms_;
    out.terms_.insert(out.terms_.end(), other.terms_.begin(),
                      other.terms_.end());
    out.dropped_ = dropped_ + other.dropped_;
    out.canonicalize();
    return out;
}

FockExpression FockExpression::operator*(const FockExpression& other) const {
    FockExpression out;
    out.dropped_ = dropped_ + other.dropped_;
    out.terms_.reserve(terms_.size() * other.terms_.size());
    for (const Term& a : terms_) {
        for (const Term& b : other.terms_) {
            Term t;
            t.amp = a.amp * b.amp;
            t.ops = a.ops;
            t.ops.insert(t.ops.end(), b.ops.begin(), b.ops.end());
            out.terms_.push_back(std::move(t));
        }
    }
    out.canonicalize();
    return out;
}

FockExpression FockExpression::scaled(const Complex& factor) const {
    FockExpression out = *this;
    for (Term& t : out.terms_) t.amp *= factor;
    out.canonicalize();
    return out;
}

void FockExpression::add_term(const Complex& amp, std::vector<ModeLabel> ops) {
    terms_.push_back(Term{amp, std::move(ops)});
    canonicalize();
}

void FockExpression::canonicalize() {
    for (Term& t : terms_) std::sort(t.ops.begin(), t.ops.end());
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) {
                  return monomial_less(a.ops, b.ops);
              });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (Term& t : terms_) {
        if (!merged.empty() && merged.back().ops == t.ops)
            merged.back().amp += t.amp;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged,
                  [](const Term& t) { return std::abs(t.amp) < kPruneTol; });
    terms_ = std::move(merged);
}

OverlapTable::OverlapTable(int n_labels) : n_(n_labels) {
    if (n_labels < 1)
        throw std::invalid_argument("overlap table needs at least one label");
    entries_.assign(static_cast<std::size_t>(n_) * n_, Complex{0.0, 0.0});
    for (int i = 0; i < n_; ++i)
        entries_[static_cast<std::size_t>(i) * n_ + i] = Complex{1.0, 0.0};
}

void OverlapTable::set(int i, int j, const Complex& amp) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw std::out_of_range("overlap table label out of range");
    if (i == j)
        throw std::invalid_argument("diagonal overlaps are fixed at 1");
    if (std::abs(amp) > 1.0 + 1e-12)
        throw std::invalid_argument("overlap amplitude magnitude exceeds 1");
    entries_[static_cast<std::size_t>(i) * n_ + j] = amp;
    entries_[static_cast<std::size_t>(j) * n_ + i] = std::conj(amp);
}

Complex OverlapTable::overlap(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw std::out_of_range("unknown internal label in overlap lookup");
    return entries_[static_cast<std::size_t>(i) * n_ + j];
}

void InterferometerSpec::validate() const {
    if (std::abs(t1 * t1 + r1 * r1 - 1.0) > 1e-12)
        throw std::invalid_argument("first BS violates t^2 + r^2 = 1");
    if (std::abs(t2 * t2 + r2 * r2 - 1.0) > 1e-12)
        throw std::invalid_argument("second BS violates t^2 + r^2 = 1");
}

namespace {

// Applies a single-operator substitution op -> sum_k coeff_k * label_k to
// every term, expanding products. An empty branch list annihilates the
// whole term; the count of such drops is returned through `dropped`.
template <typename MapOp>
FockExpression transform(const FockExpression& state, MapOp&& map_op,
                         long extra_dropped = 0) {
    std::vector<Term> out_terms;
    long dropped = state.dropped_terms() + extra_dropped;
    std::vector<std::pair<Complex, ModeLabel>> branches;
    for (const Term& term : state.terms()) {
        std::vector<Term> partial{Term{term.amp, {}}};
        bool killed = false;
        for (const ModeLabel& op : term.ops) {
            branches.clear();
            map_op(op, branches);
            if (branches.empty()) {
                killed = true;
                break;
            }
            std::vector<Term> next;
            next.reserve(partial.size() * branches.size());
            for (const Term& p : partial) {
                for (const auto& [coeff, label] : branches) {
                    Term t;
                    t.amp = p.amp * coeff;
                    t.ops = p.ops;
                    t.ops.push_back(label);
                    next.push_back(std::move(t));
                }
            }
            partial = std::move(next);
        }
        if (killed) {
            ++dropped;
            continue;
        }
        out_terms.insert(out_terms.end(),
                         std::make_move_iterator(partial.begin()),
                         std::make_move_iterator(partial.end()));
    }
    return FockExpression::from_terms(std::move(out_terms), dropped);
}

} // namespace

FockExpression apply_beamsplitter(const FockExpression& state, double t,
                                  double r) {
    if (std::abs(t * t + r * r - 1.0) > 1e-12)
        throw std::invalid_argument("beam splitter violates t^2 + r^2 = 1");
    const Complex ct{t, 0.0};
    const Complex ir{0.0, r};
    return transform(
        state, [&](const ModeLabel& op,
                   std::vector<std::pair<Complex, ModeLabel>>& branches) {
            ModeLabel same = op;
            ModeLabel swapped = op;
            swapped.path = (op.path == Path::A) ? Path::B : Path::A;
            // a -> t a + i r b ; b -> i r a + t b
            branches.emplace_back(ct, same);
            branches.emplace_back(ir, swapped);
        });
}

FockExpression apply_delay(const FockExpression& state) {
    return transform(
        state, [](const ModeLabel& op,
                  std::vector<std::pair<Complex, ModeLabel>>& branches) {
            if (op.path == Path::A) {
                branches.emplace_back(Complex{1.0, 0.0}, op);
                return;
            }
            // An empty branch list drops (and counts) the whole term; a
            // photon past the last tracked bin cannot meet a partner.
            if (op.time_bin >= kMaxTimeBin) return;
            ModeLabel shifted = op;
            shifted.time_bin = static_cast<std::uint8_t>(op.time_bin + 1);
            branches.emplace_back(Complex{1.0, 0.0}, shifted);
        });
}

FockExpression apply_pol_switch(const FockExpression& state) {
    return transform(
        state, [](const ModeLabel& op,
                  std::vector<std::pair<Complex, ModeLabel>>& branches) {
            ModeLabel mapped = op;
            if (op.path == Path::A && op.pol == Pol::H) mapped.pol = Pol::V;
            branches.emplace_back(Complex{1.0, 0.0}, mapped);
        });
}

FockExpression apply_chi_phase(const FockExpression& state, double chi) {
    const Complex phase = std::polar(1.0, chi);
    return transform(
        state, [&](const ModeLabel& op,
                   std::vector<std::pair<Complex, ModeLabel>>& branches) {
            const Complex c = (op.path == Path::B && op.pol == Pol::H)
                                  ? phase
                                  : Complex{1.0, 0.0};
            branches.emplace_back(c, op);
        });
}

FockExpression evolve(const FockExpression& state,
                      const InterferometerSpec& spec) {
    spec.validate();
    FockExpression s = apply_beamsplitter(state, spec.t1, spec.r1);
    s = apply_pol_switch(s);
    s = apply_delay(s);
    s = apply_beamsplitter(s, spec.t2, spec.r2);
    // The chi retarder sits at the interferometer output, acting on
    // H-polarized photons leaving on path B.
    s = apply_chi_phase(s, spec.chi);
    return s;
}

FockExpression postselect_coincidence(const FockExpression& state) {
    FockExpression out;
    for (const Term& t : state.terms()) {
        if (t.ops.size() != 2) continue;
        const ModeLabel& first = t.ops.front();
        const ModeLabel& second = t.ops.back();
        if (first.path == second.path) continue;
        if (first.time_bin != second.time_bin) continue;
        out.add_term(t.amp, t.ops);
    }
    return out;
}

Mat4 reduce_to_polarization(const FockExpression& state,
                            const OverlapTable& overlaps) {
    struct CoincTerm {
        Complex amp;
        int basis; // 2 * (polA == V) + (polB == V)
        int id_a;
        int id_b;
        int bin;
    };
    std::vector<CoincTerm> terms;
    terms.reserve(state.terms().size());
    for (const Term& t : state.terms()) {
        if (t.ops.size() != 2 || t.ops.front().path != Path::A ||
            t.ops.back().path != Path::B ||
            t.ops.front().time_bin != t.ops.back().time_bin)
            throw std::invalid_argument(
                "reduce_to_polarization requires a post-selected expression");
        const ModeLabel& a = t.ops.front();
        const ModeLabel& b = t.ops.back();
        terms.push_back(CoincTerm{
            t.amp, 2 * (a.pol == Pol::V ? 1 : 0) + (b.pol == Pol::V ? 1 : 0),
            a.internal_id, b.internal_id, a.time_bin});
    }

    // |psi_bin><psi_bin| summed incoherently over time bins; internal
    // labels contracted through the overlap Gram products.
    Mat4 rho = Mat4::Zero();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < terms.size(); ++j) {
            if (terms[i].bin != terms[j].bin) continue;
            const Complex g =
                overlaps.overlap(terms[j].id_a, terms[i].id_a) *
                overlaps.overlap(terms[j].id_b, terms[i].id_b);
            rho(terms[i].basis, terms[j].basis) +=
                terms[i].amp * std::conj(terms[j].amp) * g;
        }
    }
    return rho;
}

namespace {

// (sqrt(1-q) + e^{i phase} sqrt(q) a^dag) |0> on path A, polarization H.
FockExpression rf_signal_photon(std::uint8_t id, std::uint8_t bin, double q,
                                double phase) {
    FockExpression e;
    const double vac = std::sqrt(std::max(0.0, 1.0 - q));
    if (vac > 0.0) e.add_term(Complex{vac, 0.0}, {});
    e.add_term(std::polar(std::sqrt(q), phase),
               {ModeLabel{Path::A, Pol::H, id, bin}});
    return e;
}

FockExpression noise_photon(std::uint8_t id, std::uint8_t bin) {
    return FockExpression::creation(ModeLabel{Path::A, Pol::H, id, bin});
}

} // namespace

Mat4 derive_component(ComponentKind kind, const ComponentParams& p) {
    if (p.v < 0.0 || p.v > 1.0 || p.v_l < 0.0 || p.v_l > 1.0)
        throw std::invalid_argument("overlaps v and v_l must lie in [0, 1]");
    if (p.q < 0.0 || p.q > 1.0)
        throw std::invalid_argument("q must lie in [0, 1]");

    OverlapTable table(4);
    table.set(kPhi1, kPhi2, Complex{std::sqrt(p.v), 0.0});
    table.set(kGamma1, kGamma2, Complex{std::sqrt(p.v_l), 0.0});

    FockExpression input;
    switch (kind) {
        case ComponentKind::Rho11:
        case ComponentKind::Rho12_3:
        case ComponentKind::Rho22_2:
            // Two consecutive signal photons survive.
            input = rf_signal_photon(kPhi1, 0, p.q, p.superposition_phase) *
                    rf_signal_photon(kPhi2, 1, p.q, p.superposition_phase);
            break;
        case ComponentKind::Rho12_1:
        case ComponentKind::Rho02:
        case ComponentKind::Rho22_1:
            // Signal plus laser photon from the same pulse.
            input = rf_signal_photon(kPhi1, 0, p.q, p.superposition_phase) *
                    noise_photon(kGamma1, 0);
            break;
        case ComponentKind::Rho12_2:
        case ComponentKind::Rho22_3:
            // Signal and laser photon from different pulses, overlap zero.
            input = rf_signal_photon(kPhi2, 1, p.q, p.superposition_phase) *
                    noise_photon(kGamma1, 0);
            break;
        case ComponentKind::Rho22_4:
            // Two laser photons, overlap v_l; no vacuum superposition.
            input = noise_photon(kGamma1, 0) * noise_photon(kGamma2, 1);
            break;
        default:
            throw std::invalid_argument("unknown component kind");
    }

    InterferometerSpec spec{p.t1, p.r1, p.t2, p.r2, p.chi};
    const FockExpression evolved = evolve(input, spec);
    const FockExpression selected = postselect_coincidence(evolved);
    return reduce_to_polarization(selected, table);
}

Mat4 oracle_rho_exp(const ComponentParams& params, double p0, double p1,
                    double p2, double eta) {
    if (p0 < 0.0 || p1 < 0.0 || p2 < 0.0 || eta < 0.0 || eta > 1.0)
        throw std::invalid_argument("invalid probabilities or transmission");

    const double eta2 = eta * eta;
    const double w11 = p1 * p1 * eta2;
    const double w12 = p1 * p2 * eta2 * (1.0 - eta);
    const double w02 = p0 * p2 * eta2;
    const double w22 = p2 * p2 * eta2 * (1.0 - eta) * (1.0 - eta);

    Mat4 rho = Mat4::Zero();
    rho += w11 * derive_component(ComponentKind::Rho11, params);
    rho += w12 * derive_component(ComponentKind::Rho12_1, params);
    rho += w12 * derive_component(ComponentKind::Rho12_2, params);
    rho += w12 * derive_component(ComponentKind::Rho12_3, params);
    rho += w02 * derive_component(ComponentKind::Rho02, params);
    rho += w22 * derive_component(ComponentKind::Rho22_1, params);
    rho += w22 * derive_component(ComponentKind::Rho22_2, params);
    rho += w22 * derive_component(ComponentKind::Rho22_3, params);
    rho += w22 * derive_component(ComponentKind::Rho22_4, params);

    const double tr = rho.trace().real();
    if (!(tr > 0.0))
        throw std::domain_error(
            "oracle mixture has zero trace; no coincidence events survive");
    return rho / tr;
}

} // namespace qdsim::fock
