#pragma once

#include <stdexcept>
#include <string>

namespace substrate {

// Base class for every library error. Callers that only need "did it work"
// can catch this; tests discriminate on the concrete type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SUBSTRATE_ERROR(Name)                                        \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& what) : Error(what) {}      \
    }

SUBSTRATE_ERROR(ParseError);
SUBSTRATE_ERROR(ValidationError);
SUBSTRATE_ERROR(UnknownState);
SUBSTRATE_ERROR(UnknownInput);
SUBSTRATE_ERROR(UnknownSystem);
SUBSTRATE_ERROR(UnknownProvenance);
SUBSTRATE_ERROR(AlphabetMismatch);
SUBSTRATE_ERROR(AliasConflict);
SUBSTRATE_ERROR(HorizonTooLarge);
SUBSTRATE_ERROR(BudgetExceeded);
SUBSTRATE_ERROR(DimensionMismatch);
SUBSTRATE_ERROR(NonFiniteValue);
SUBSTRATE_ERROR(InvalidPermutation);
SUBSTRATE_ERROR(InvalidInputSymbol);
SUBSTRATE_ERROR(BoundsExceeded);
SUBSTRATE_ERROR(NotHalted);
SUBSTRATE_ERROR(StepCountMismatch);
SUBSTRATE_ERROR(WrongSystemFamily);
SUBSTRATE_ERROR(EmptyRestriction);
SUBSTRATE_ERROR(UnmappedReport);
SUBSTRATE_ERROR(ObsFailure);

#undef SUBSTRATE_ERROR

} // namespace substrate
