#pragma once

#include <stdexcept>
#include <string>

namespace npc {

/// Base class for all numerical failures reported by this library.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : NumericalError { using NumericalError::NumericalError; };
struct NoConvergence : NumericalError { using NumericalError::NumericalError; };
struct NonFinite : NumericalError { using NumericalError::NumericalError; };

struct DegenerateDomain : NumericalError { using NumericalError::NumericalError; };
struct NonConvex : NumericalError { using NumericalError::NumericalError; };

struct CoincidentPoints : NumericalError { using NumericalError::NumericalError; };
struct OffBoundary : NumericalError { using NumericalError::NumericalError; };
struct SampleMismatch : NumericalError { using NumericalError::NumericalError; };
struct NotInterior : NumericalError { using NumericalError::NumericalError; };

struct DegenerateInput : NumericalError { using NumericalError::NumericalError; };
struct DimensionTooLarge : NumericalError { using NumericalError::NumericalError; };
struct NonPositiveAxis : NumericalError { using NumericalError::NumericalError; };
struct ZeroPolynomial : NumericalError { using NumericalError::NumericalError; };
struct EmptyInterior : NumericalError { using NumericalError::NumericalError; };
struct UnknownSuite : NumericalError { using NumericalError::NumericalError; };

} // namespace npc
