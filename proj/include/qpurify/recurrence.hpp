#pragma once

#include <array>
#include <vector>

#include "qpurify/qtypes.hpp"

namespace qpurify {

class ProtocolNeverSucceeds : public QpurifyError {
public:
    using QpurifyError::QpurifyError;
};

/// Probability weights over the Bell basis {phi+, phi-, psi+, psi-}.
class BellDiagonal {
public:
    explicit BellDiagonal(const std::array<double, 4>& weights);
    BellDiagonal(double a, double b, double c, double d)
        : BellDiagonal(std::array<double, 4>{a, b, c, d}) {}

    static BellDiagonal werner(double fidelity);

    double operator[](size_t i) const { return w_[i]; }
    const std::array<double, 4>& weights() const { return w_; }
    double fidelity() const { return w_[0]; }

private:
    std::array<double, 4> w_;
};

/// Bell-basis diagonal of rho; the off-diagonal part is discarded (the protocol
/// makes it irrelevant).
BellDiagonal bell_diagonal_of(const DensityMatrix& rho);

/// rho -> rho/2 + (sx (x) sx) rho (sx (x) sx) / 2. Erases coherences between the
/// +1 and -1 eigenspaces of sx (x) sx, i.e. between {phi+, psi+} and {phi-, psi-}.
DensityMatrix twirl(const DensityMatrix& rho);

struct MapResult {
    BellDiagonal weights;
    double success_probability;
};

/// One purification round on the weight vectors:
///   A~ = (A A' + C C')/N,  B~ = (B B' + D D')/N,
///   C~ = (B D' + D B')/N,  D~ = (A C' + C A')/N,
/// N = (A + C)(A' + C') + (B + D)(B' + D').
MapResult recurrence_map(const BellDiagonal& x, const BellDiagonal& xp);

struct PurificationRound {
    BellDiagonal state;
    double success_probability;
    double cumulative_yield;
    bool basin_condition;  // A > B + C + D at this round
};

struct PurificationTrace {
    std::vector<PurificationRound> rounds;
    bool converged;
};

/// Identical-copy iteration x <- map(x, x) until the fidelity reaches the
/// target or max_rounds is exhausted. Each round consumes two pairs and
/// succeeds with probability N, so the cumulative yield after r rounds is
/// prod(N_k) / 2^r.
PurificationTrace iterate(const BellDiagonal& x0, int max_rounds, double target_fidelity);

struct ExactRoundResult {
    DensityMatrix kept_state;
    double success_probability;
};

/// Brute-force two-pair round on the full 16x16 state: twirl each copy, rotate
/// to the measurement frame, apply the parity projections on pairs (1,1') and
/// (2,2'), keep coinciding outcomes, measure the primed qubits in the x basis
/// with the outcome-conditioned phase correction, and undo the frame. Agreement
/// with recurrence_map is the oracle test for the weight map.
ExactRoundResult simulate_round_exact(const DensityMatrix& rho, const DensityMatrix& rho_prime);

}  // namespace qpurify
