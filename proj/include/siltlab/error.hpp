#pragma once

#include <stdexcept>
#include <string>

namespace siltlab {

struct SiltError : std::runtime_error {
    explicit SiltError(const std::string& what) : std::runtime_error(what) {}
};

#define SILTLAB_ERROR(Name)                                                \
    struct Name : SiltError {                                              \
        explicit Name(const std::string& what) : SiltError(what) {}        \
    }

SILTLAB_ERROR(DegreeCapExceeded);
SILTLAB_ERROR(NonAdmissible);
SILTLAB_ERROR(MalformedRelation);
SILTLAB_ERROR(NotSplitError);
SILTLAB_ERROR(LiftFailure);
SILTLAB_ERROR(NotPresilting);
SILTLAB_ERROR(VerificationFailed);
SILTLAB_ERROR(MutationFailed);
SILTLAB_ERROR(NotComplete);
SILTLAB_ERROR(LabelNotFound);
SILTLAB_ERROR(TowerDiverged);
SILTLAB_ERROR(CapTooLarge);
SILTLAB_ERROR(DepthExceeded);
SILTLAB_ERROR(ParseError);
SILTLAB_ERROR(SemanticError);
SILTLAB_ERROR(UnknownCorpusEntry);

#undef SILTLAB_ERROR

} // namespace siltlab
