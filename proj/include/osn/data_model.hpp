#pragma once

#include "osn/gmm.hpp"
#include "osn/loggrowth.hpp"
#include "osn/records.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace osn {

/// Persisted fit collection. user_fits is keyed by user id, then by the
/// pattern the fit was computed under ("daily", "weekly", "monthly:YYYY-MM").
struct ModelStore {
    int format_version = 1;
    UtcSeconds created_at{};
    std::map<std::string, std::map<std::string, GmmFit>> user_fits;
    std::map<std::string, LogGrowthFit> message_fits;

    bool operator==(const ModelStore&) const = default;
};

/// Ground-truth curve for synthetic retweet series.
struct GrowthTruth {
    double a = 0.0;
    double c = 1.0;
    double d = 0.0;
};

/// Recipe for deterministic synthetic data. Identical specs produce
/// byte-identical outputs.
struct SynthSpec {
    GmmFit gmm_truth;
    std::int64_t n_events = 0;
    GrowthTruth growth_truth;
    double noise_sd = 0.0;
    std::uint64_t seed = 0;

    void validate() const; // throws DataError on invalid fields
};

// --- line-oriented ingestion -------------------------------------------

/// Parses one events.jsonl line: {"user_id","message_id","timestamp",
/// "retweet_of"?}. Unknown keys are ignored. Throws ParseError.
EventRecord parse_event_line(std::string_view line);
std::string event_to_json_line(const EventRecord& event);

/// Parses one observations.jsonl line: {"message_id","age_hours","count"}.
RetweetObservation parse_observation_line(std::string_view line);
std::string observation_to_json_line(const RetweetObservation& obs);

/// Reads events.jsonl; blank lines are skipped, errors carry the 1-based
/// line number.
std::vector<EventRecord> load_events(std::istream& in);
std::vector<EventRecord> load_events_file(const std::filesystem::path& path);
void save_events(std::ostream& out, std::span<const EventRecord> events);

/// Reads observations.jsonl grouped by message id. Each group is sorted by
/// age; a count that decreases within the sorted series is a DataError
/// naming the message and the offending age.
std::map<std::string, std::vector<RetweetObservation>> load_observations(std::istream& in);
std::map<std::string, std::vector<RetweetObservation>>
load_observations_file(const std::filesystem::path& path);
void save_observations(std::ostream& out, std::span<const RetweetObservation> series);

// --- model store persistence -------------------------------------------

void save_store(const ModelStore& store, const std::filesystem::path& path);
ModelStore load_store(const std::filesystem::path& path);

nlohmann::json store_to_json(const ModelStore& store);
ModelStore store_from_json(const nlohmann::json& j);
nlohmann::json gmm_fit_to_json(const GmmFit& fit);
GmmFit gmm_fit_from_json(const nlohmann::json& j);
nlohmann::json growth_fit_to_json(const LogGrowthFit& fit);
LogGrowthFit growth_fit_from_json(const nlohmann::json& j);

SynthSpec synth_spec_from_json(const nlohmann::json& j);

// --- synthetic-data oracle ----------------------------------------------

/// Draws n_events posts on a fixed 7-day span starting 2013-05-13 (UTC).
/// Time-of-day comes from the truth mixture: pick a component by weight,
/// draw a normal, and redraw the whole pair whenever the value falls
/// outside [0,24) -- the sampling density is the truncated mixture.
std::vector<EventRecord> generate_synthetic_events(const SynthSpec& spec);

/// Unrounded curve samples value(t) = a*ln(t+c) + d + noise, in age order.
/// The deterministic noiseless variant (noise_sd = 0) is the fitting oracle.
std::vector<double> generate_growth_values(const GrowthTruth& truth,
                                           std::span<const double> ages, double noise_sd,
                                           std::uint64_t seed);

/// Observation series count_i = round(max(0, value_i)), ages must be sorted
/// and non-negative; truth.c must be positive.
std::vector<RetweetObservation> generate_synthetic_growth(const SynthSpec& spec,
                                                          std::span<const double> ages);

} // namespace osn
