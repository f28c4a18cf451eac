#pragma once

#include <stdexcept>
#include <string>

namespace tdos {

struct CycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownCapability : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IllegalTransition : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalScheduleError : std::logic_error {
    using std::logic_error::logic_error;
};
struct LengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IntervalOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct TooFewInstances : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NoEligibleNode : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoImageAvailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoSecondaryCluster : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tdos
