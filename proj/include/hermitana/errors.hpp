// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_ERRORS_HPP
#define HERMITANA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hermitana {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define HERMITANA_DEFINE_ERROR(Name, Base)                                     \
    class Name : public Base {                                                 \
    public:                                                                    \
        explicit Name(const std::string& what) : Base(what) {}                 \
    }

HERMITANA_DEFINE_ERROR(NotHermitian, Error);
HERMITANA_DEFINE_ERROR(NotPositiveDefinite, Error);
HERMITANA_DEFINE_ERROR(DimensionMismatch, Error);
HERMITANA_DEFINE_ERROR(Overflow, Error);
HERMITANA_DEFINE_ERROR(OutOfDomain, Error);
// A finite-difference stencil that would leave the domain is an
// out-of-domain condition with a more specific cause.
HERMITANA_DEFINE_ERROR(StepTooLarge, OutOfDomain);
HERMITANA_DEFINE_ERROR(MetricInvalid, Error);
HERMITANA_DEFINE_ERROR(DegenerateSpectrum, Error);
HERMITANA_DEFINE_ERROR(DegenerateBand, Error);
HERMITANA_DEFINE_ERROR(NonDiagonalizable, Error);
HERMITANA_DEFINE_ERROR(NotUnitary, Error);
HERMITANA_DEFINE_ERROR(PathNotClosed, Error);
HERMITANA_DEFINE_ERROR(SingularFrame, Error);
HERMITANA_DEFINE_ERROR(BandCrossingOnLoop, Error);
HERMITANA_DEFINE_ERROR(StepUnstable, Error);
HERMITANA_DEFINE_ERROR(ConfigInvalid, Error);

#undef HERMITANA_DEFINE_ERROR

} // namespace hermitana

#endif
