#pragma once

#include <span>
#include <vector>

#include "coopstc/modem.hpp"
#include "coopstc/numerics.hpp"
#include "coopstc/relaying.hpp"

namespace coopstc {

/// One additive term rho * Phi_eq * H_eq of the noiseless receive model.
struct ModelTerm {
    double gain;
    CMatrix phi_eq;
    WidelyLinear h_eq;
};

struct MLProblem {
    CVector r;
    std::vector<ModelTerm> terms;
    std::vector<SymbolVector> codebook;
    double prefactor = 1.0;
};

struct Detection {
    std::size_t index = 0;  // codebook position
    SymbolVector symbols;
    double metric = 0.0;    // ||r - reconstruction||^2
};

/// Exhaustive ML search; ties resolve to the lowest codebook index. Throws
/// InvalidParameter on an empty codebook.
Detection ml_detect(const MLProblem& p);

/// Same contract as ml_detect, computed term by term with plain loops. Kept
/// separate from the production path so the two can be cross-checked.
Detection exhaustive_oracle(const MLProblem& p);

/// prefactor * sum rho Phi_eq H_eq s.
CVector reconstruct_signal(const MLProblem& p, std::span<const cplx> s);

/// Full-matrix problem for a system model (relay terms plus the direct link).
MLProblem make_ml_problem(const SystemModel& model, const CodeSet& codes, std::span<const double> gains,
                          CVector r, std::vector<SymbolVector> codebook);

/// Precomputed noiseless images of every codebook entry under a fixed
/// effective map. This is the Monte Carlo hot path.
class CandidateImages {
public:
    CandidateImages(const WidelyLinear& effective, std::span<const SymbolVector> codebook);

    Detection detect(std::span<const cplx> r) const;
    std::size_t detect_index(std::span<const cplx> r) const;
    const CVector& image(std::size_t index) const { return images_[index]; }
    std::size_t size() const { return images_.size(); }

private:
    std::vector<CVector> images_;
    std::span<const SymbolVector> codebook_;
};

}  // namespace coopstc
