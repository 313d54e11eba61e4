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

#ifndef QDSIM_FOCK_HPP
#define QDSIM_FOCK_HPP

#include <compare>
#include <cstdint>
#include <vector>

#include "qdsim/mat.hpp"

namespace qdsim::fock {

/// Interferometer path. A is the transmitted (short) arm with the
/// polarization switch, B the reflected (long) arm with the delay line.
enum class Path : std::uint8_t { A = 0, B = 1 };

enum class Pol : std::uint8_t { H = 0, V = 1 };

/// Emission times are discretized in units of the pulse separation tau:
/// photons enter at bins 0 (time t) or 1 (time t + tau); the delay line
/// shifts path-B photons up by one bin. Terms pushed past kMaxTimeBin are
/// dropped and counted, since they can never meet a partner photon.
inline constexpr std::uint8_t kMaxTimeBin = 2;

/// One creation operator: which path and polarization it populates, the
/// internal wavepacket label (index into an OverlapTable), and its time bin.
struct ModeLabel {
    Path path = Path::A;
    Pol pol = Pol::H;
    std::uint8_t internal_id = 0;
    std::uint8_t time_bin = 0;

    friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

/// One monomial of creation operators (kept sorted) with its amplitude.
struct Term {
    Complex amp;
    std::vector<ModeLabel> ops;
};

/// A linear combination of creation-operator monomials acting on the
/// vacuum. Canonical form: each monomial sorted by (path, polarization,
/// internal id, time bin), monomials sorted and merged, and terms with
/// |amplitude| below the pruning threshold removed.
class FockExpression {
public:
    static constexpr double kPruneTol = 1e-15;

    FockExpression() = default;

    /// The vacuum (single term, amplitude 1, empty monomial).
    static FockExpression vacuum();

    /// A single creation operator applied to the vacuum.
    static FockExpression creation(const ModeLabel& label);

    /// Builds an expression from raw terms; canonicalizes once.
    static FockExpression from_terms(std::vector<Term> terms,
                                     long dropped = 0);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Number of terms dropped because their time bin overflowed.
    long dropped_terms() const { return dropped_; }

    /// Coefficient of an exact monomial (zero when absent). The query is
    /// sorted internally first.
    Complex coefficient(std::vector<ModeLabel> monomial) const;

    FockExpression operator+(const FockExpression& other) const;
    FockExpression operator*(const FockExpression& other) const;
    FockExpression scaled(const Complex& factor) const;

    /// Access for building expressions term by term; canonicalizes.
    void add_term(const Complex& amp, std::vector<ModeLabel> ops);

private:
    void canonicalize();

    std::vector<Term> terms_;
    long dropped_ = 0;
};

/// Hermitian table of pairwise overlap amplitudes <phi_i | phi_j> between
/// internal wavepacket labels. Diagonal entries are fixed at 1.
class OverlapTable {
public:
    explicit OverlapTable(int n_labels);

    int size() const { return n_; }

    /// Sets <i|j> = amp and <j|i> = conj(amp). Requires i != j, |amp| <= 1.
    void set(int i, int j, const Complex& amp);

    /// <i|j>; throws std::out_of_range for unknown labels.
    Complex overlap(int i, int j) const;

private:
    int n_;
    std::vector<Complex> entries_;
};

/// Amplitude-level description of the unbalanced MZI: two beam splitters
/// (t^2 + r^2 = 1 each) and the phase chi picked up by H-polarized photons
/// leaving on path B.
struct InterferometerSpec {
    double t1 = 0.0;
    double r1 = 0.0;
    double t2 = 0.0;
    double r2 = 0.0;
    double chi = 0.0;

    void validate() const;
};

/// a -> t a + i r b,  b -> i r a + t b, applied to every operator.
FockExpression apply_beamsplitter(const FockExpression& state, double t,
                                  double r);

/// Delay line on path B: time bin advances by one. Path A is untouched.
/// Terms whose bin would exceed kMaxTimeBin are dropped and counted.
FockExpression apply_delay(const FockExpression& state);

/// Polarization switch on path A: H becomes V.
FockExpression apply_pol_switch(const FockExpression& state);

/// Every H-polarized path-B operator acquires the factor e^{i chi}.
FockExpression apply_chi_phase(const FockExpression& state, double chi);

/// Full interferometer pass: first BS, polarization switch, delay line,
/// second BS, then the output-arm chi phase.
FockExpression evolve(const FockExpression& state,
                      const InterferometerSpec& spec);

/// Keeps the two-photon terms with exactly one photon per path sharing the
/// same time bin (a zero-delay twofold coincidence).
FockExpression postselect_coincidence(const FockExpression& state);

/// Traces a post-selected expression down to a 4x4 polarization matrix:
/// internal labels are contracted through the overlap table and time bins
/// are summed incoherently. The result is unnormalized, Hermitian and PSD.
Mat4 reduce_to_polarization(const FockExpression& state,
                            const OverlapTable& overlaps);

/// The nine coincidence contributions of the noise model, named by which
/// photons were emitted and which survived to the interferometer.
enum class ComponentKind {
    Rho11,   ///< two consecutive signal photons
    Rho12_1, ///< same-pulse signal + noise pair (other signal lost)
    Rho12_2, ///< signal + noise from different pulses (overlap 0)
    Rho12_3, ///< noise photon lost, identical to Rho11
    Rho02,   ///< double emission next to an empty pulse
    Rho22_1, ///< two double pulses, one pulse fully lost
    Rho22_2, ///< two double pulses, both noise photons lost
    Rho22_3, ///< two double pulses, one signal and one noise lost
    Rho22_4  ///< two double pulses, both signals lost (overlap v_l)
};

/// Physical inputs of a component derivation.
struct ComponentParams {
    double t1 = 0.0;
    double r1 = 0.0;
    double t2 = 0.0;
    double r2 = 0.0;
    double v = 1.0;   ///< signal-signal overlap squared
    double v_l = 0.5; ///< noise-noise overlap squared
    double q = 1.0;   ///< RF excitation amplitude squared (1 for LA)
    double chi = 0.0;
    /// Phase of the RF vacuum superposition. Post-selection makes it
    /// unobservable; kept as a knob so tests can assert exactly that.
    double superposition_phase = 0.0;
};

/// Builds the surviving input state for the given component, runs it
/// through the interferometer, post-selects and reduces. Returns the
/// unnormalized 4x4 matrix including the q-power prefactor of the
/// component.
Mat4 derive_component(ComponentKind kind, const ComponentParams& params);

/// Probability-weighted sum of all nine components, normalized to unit
/// trace. Weights: p1^2 eta^2 for Rho11; p1 p2 eta^2 (1-eta) for each
/// Rho12; p0 p2 eta^2 for Rho02; p2^2 eta^2 (1-eta)^2 for each Rho22.
Mat4 oracle_rho_exp(const ComponentParams& params, double p0, double p1,
                    double p2, double eta);

} // namespace qdsim::fock

#endif
