#pragma once

#include "osn/timeutil.hpp"

#include <optional>
#include <string>

namespace osn {

/// One post or retweet event: who posted which message, and when.
/// retweet_of is set when the event shares an existing message; it must
/// differ from message_id.
struct EventRecord {
    std::string user_id;
    std::string message_id;
    UtcSeconds timestamp{};
    std::optional<std::string> retweet_of;

    bool operator==(const EventRecord&) const = default;
};

/// One sample of a message's cumulative retweet count at a given age.
/// count is integral in the file format; it is held as a double so fitting
/// code and synthetic unrounded series share one representation.
struct RetweetObservation {
    std::string message_id;
    double age_hours = 0.0;
    double count = 0.0;

    bool operator==(const RetweetObservation&) const = default;
};

} // namespace osn
