#pragma once

#include <stdexcept>
#include <string>

namespace tqroots {

/// Base of every numerical failure raised by the solver stages.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    /// True when re-running the whole pipeline at higher precision may help.
    virtual bool escalatable() const { return false; }
};

class PrecisionSensitiveError : public SolverError {
public:
    using SolverError::SolverError;
    bool escalatable() const override { return true; }
};

// homogeneous_bethe
class InvalidChainLength : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class NonConvergence : public PrecisionSensitiveError {
    using PrecisionSensitiveError::PrecisionSensitiveError;
};
class DegenerateRoots : public SolverError {
    using SolverError::SolverError;
};

// transfer_matrix
class NearRootDivision : public SolverError {
    using SolverError::SolverError;
};
class SymmetryViolation : public PrecisionSensitiveError {
    using PrecisionSensitiveError::PrecisionSensitiveError;
};

// inhomogeneous_qsolver
class PrecisionExhausted : public PrecisionSensitiveError {
    using PrecisionSensitiveError::PrecisionSensitiveError;
};
class SingularClosure : public SolverError {
    using SolverError::SolverError;
};

// root_finder
class IllConditionedInterpolation : public PrecisionSensitiveError {
    using PrecisionSensitiveError::PrecisionSensitiveError;
};
class RootCertificationFailure : public PrecisionSensitiveError {
    using PrecisionSensitiveError::PrecisionSensitiveError;
};
class MultiplicityCollision : public SolverError {
    using SolverError::SolverError;
};

// root_analysis
class AmbiguousClassification : public PrecisionSensitiveError {
    using PrecisionSensitiveError::PrecisionSensitiveError;
};
class CountMismatch : public SolverError {
    using SolverError::SolverError;
};

}  // namespace tqroots
