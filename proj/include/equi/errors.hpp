#pragma once

#include <stdexcept>
#include <string>

namespace equi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define EQUI_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                   \
    public:                                                       \
        explicit Name(const std::string &what) : Error(what) {}   \
    }

EQUI_DEFINE_ERROR(InvertNonUnit);
EQUI_DEFINE_ERROR(SelfReference);
EQUI_DEFINE_ERROR(ZeroPoint);
EQUI_DEFINE_ERROR(PrecisionLoss);
EQUI_DEFINE_ERROR(BadConstantTerm);
EQUI_DEFINE_ERROR(PresentationMismatch);
EQUI_DEFINE_ERROR(DegreeMismatch);
EQUI_DEFINE_ERROR(DivergentBound);
EQUI_DEFINE_ERROR(UnrepresentableBound);
EQUI_DEFINE_ERROR(NotGrouplike);
EQUI_DEFINE_ERROR(NotPolePure);
EQUI_DEFINE_ERROR(NotFlat);
EQUI_DEFINE_ERROR(NotRegular);
EQUI_DEFINE_ERROR(NotEquisingular);
EQUI_DEFINE_ERROR(NotFiltrationCompatible);
EQUI_DEFINE_ERROR(NotDegreeCompatible);
EQUI_DEFINE_ERROR(ParseError);

#undef EQUI_DEFINE_ERROR

}  // namespace equi
