#pragma once

#include <stdexcept>
#include <string>

namespace lhl {

// Every failure carries a stable kind string; the CLI maps kinds to exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define LHL_DEFINE_ERROR(Name)                                                   \
    struct Name : Error {                                                        \
        explicit Name(const std::string& what) : Error(#Name, what) {}           \
    }

LHL_DEFINE_ERROR(VariableMismatch);
LHL_DEFINE_ERROR(DenominatorVanishes);
LHL_DEFINE_ERROR(ZeroPolynomial);
LHL_DEFINE_ERROR(InexactDivision);
LHL_DEFINE_ERROR(ParseError);
LHL_DEFINE_ERROR(InfiniteGroup);
LHL_DEFINE_ERROR(UnsupportedType);
LHL_DEFINE_ERROR(NonReducedWord);
LHL_DEFINE_ERROR(InternalRankMismatch);
LHL_DEFINE_ERROR(CriteriaDisagree);
LHL_DEFINE_ERROR(DegenerateMatrix);
LHL_DEFINE_ERROR(ParityViolation);
LHL_DEFINE_ERROR(HLRequired);
LHL_DEFINE_ERROR(NotP1Sheaf);
LHL_DEFINE_ERROR(HRHypothesisFails);
LHL_DEFINE_ERROR(PositivityViolated);
LHL_DEFINE_ERROR(DimensionBound);
LHL_DEFINE_ERROR(SingularSpecialization);
LHL_DEFINE_ERROR(PreconditionFailed);

#undef LHL_DEFINE_ERROR

}  // namespace lhl
