#pragma once

#include <stdexcept>
#include <string>

namespace hm {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define HM_DEFINE_ERROR(Name)                       \
    struct Name : Error {                           \
        using Error::Error;                         \
    }

HM_DEFINE_ERROR(CompositionDomainError);   // inner series has |g(0)| >= 1
HM_DEFINE_ERROR(ZeroConstantTermError);    // reciprocal of a series vanishing at 0
HM_DEFINE_ERROR(NonvanishingAtZeroError);  // division by z of f with f(0) != 0
HM_DEFINE_ERROR(DegenerateMapError);       // LFT with ad - bc = 0
HM_DEFINE_ERROR(IdentityMapError);
HM_DEFINE_ERROR(NotSelfMapError);
HM_DEFINE_ERROR(NotInDiskError);
HM_DEFINE_ERROR(PoleError);
HM_DEFINE_ERROR(ConstantSymbolError);
HM_DEFINE_ERROR(DegreeTooSmallError);
HM_DEFINE_ERROR(InvalidArgumentError);

#undef HM_DEFINE_ERROR

/// Malformed textual input; `field` names the offending part of the spec.
struct SpecParseError : Error {
    SpecParseError(std::string field, const std::string& what)
        : Error(field + ": " + what), field(std::move(field)) {}
    std::string field;
};

}  // namespace hm
