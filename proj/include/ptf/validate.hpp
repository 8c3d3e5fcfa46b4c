#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptf/model.hpp"
#include "ptf/sector.hpp"

namespace ptf {

struct PropertySample {
    double r;
    double phi;
    double k;
};

/// Reproducible draws with r in [0, 1.5], phi in [0, 2 pi), k in (0, pi).
std::vector<PropertySample> property_samples(std::uint64_t seed, std::size_t count);

/// Residuals of one biorthogonal eigensystem against its sector Hamiltonian.
struct EigensystemResiduals {
    double biorthonormality = 0;  // max |L R - I|
    double completeness = 0;      // max |R L - I|
    double reconstruction = 0;    // max |R diag(values) L - h_k|
    double symmetry = 0;          // eigenvalue pairing relations between levels
};

EigensystemResiduals eigensystem_residuals(const BiorthogonalEigensystem& es, const ComplexMatrix& h);

struct FieldPair {
    double eta1, xi1, eta2, xi2;
};

/// Nearby field pairs for the N = 4 dense factorization check, chosen away from the
/// temperatures where a PT-broken sector makes the square-root branch resonant.
const std::vector<FieldPair>& factorization_pairs();

using EigensystemProvider = std::function<BiorthogonalEigensystem(double k, const CouplingParams& p)>;

struct CheckResult {
    std::string name;
    double residual = 0;
    double tolerance = 0;
    bool passed = false;
    std::string detail;
};

struct ValidationOptions {
    std::uint64_t seed = 20240611;
    std::size_t samples = 200;
    std::optional<double> tolerance;  // replaces every check tolerance when set
    EigensystemProvider provider;     // defaults to sector_eigensystem
    std::vector<std::string> groups;  // subset of validation_groups(); empty runs all
};

/// Names of the check groups in execution order.
const std::vector<std::string>& validation_groups();

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

ValidationReport run_validation(const ValidationOptions& opts = {});

}  // namespace ptf
