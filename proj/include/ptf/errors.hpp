#pragma once

#include <stdexcept>
#include <string>

namespace ptf {

// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PTF_DEFINE_ERROR(Name)                  \
    class Name : public Error {                 \
    public:                                     \
        using Error::Error;                     \
    };

PTF_DEFINE_ERROR(InvalidArgument)
PTF_DEFINE_ERROR(OddN)
PTF_DEFINE_ERROR(SizeCap)
PTF_DEFINE_ERROR(NonFinite)
PTF_DEFINE_ERROR(NoConvergence)
PTF_DEFINE_ERROR(DefectiveMatrix)
PTF_DEFINE_ERROR(SingularDenominator)
PTF_DEFINE_ERROR(SingularGram)
PTF_DEFINE_ERROR(InsufficientData)
PTF_DEFINE_ERROR(DegenerateWindow)
PTF_DEFINE_ERROR(RankDeficient)
PTF_DEFINE_ERROR(FlatScan)

#undef PTF_DEFINE_ERROR

// Sector failure inside a multi-sector evaluation; carries the offending momentum.
class SectorError : public Error {
public:
    SectorError(double k, const std::string& what)
        : Error("sector k=" + std::to_string(k) + ": " + what), k_(k) {}
    double k() const noexcept { return k_; }

private:
    double k_;
};

}  // namespace ptf
