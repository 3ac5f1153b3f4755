#include "osn/data_model.hpp"

#include "osn/errors.hpp"
#include "osn/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace osn {

using nlohmann::json;

namespace {

json parse_json_line(std::string_view line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
        throw ParseError("malformed JSON");
    if (!j.is_object())
        throw ParseError("expected a JSON object");
    return j;
}

std::string require_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing key \"") + key + "\"");
    if (!it->is_string())
        throw ParseError(std::string("key \"") + key + "\" must be a string");
    return it->get<std::string>();
}

double require_number(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing key \"") + key + "\"");
    if (!it->is_number())
        throw ParseError(std::string("key \"") + key + "\" must be a number");
    return it->get<double>();
}

[[noreturn]] void rethrow_with_line(const std::exception& e, size_t line_no) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
}

json count_to_json(double count) {
    // Counts are integral in the file schema; keep them integral on disk.
    if (count >= 0.0 && count == std::floor(count) && count <= 9.007199254740992e15)
        return static_cast<std::int64_t>(count);
    return count;
}

} // namespace

void SynthSpec::validate() const {
    gmm_truth.validate();
    if (n_events < 0)
        throw DataError("synth spec: n_events must be non-negative");
    if (!(growth_truth.c > 0.0))
        throw DataError("synth spec: growth c must be positive");
    if (noise_sd < 0.0)
        throw DataError("synth spec: noise_sd must be non-negative");
}

// --- line-oriented ingestion -------------------------------------------

EventRecord parse_event_line(std::string_view line) {
    const json j = parse_json_line(line);

    EventRecord ev;
    ev.user_id = require_string(j, "user_id");
    ev.message_id = require_string(j, "message_id");
    ev.timestamp = parse_rfc3339(require_string(j, "timestamp"));
    if (auto it = j.find("retweet_of"); it != j.end() && !it->is_null()) {
        if (!it->is_string())
            throw ParseError("key \"retweet_of\" must be a string");
        ev.retweet_of = it->get<std::string>();
    }

    if (ev.user_id.empty())
        throw ParseError("empty user_id");
    if (ev.message_id.empty())
        throw ParseError("empty message_id");
    if (ev.retweet_of && *ev.retweet_of == ev.message_id)
        throw ParseError("retweet_of equals message_id");
    return ev;
}

std::string event_to_json_line(const EventRecord& event) {
    json j;
    j["user_id"] = event.user_id;
    j["message_id"] = event.message_id;
    j["timestamp"] = format_rfc3339(event.timestamp);
    if (event.retweet_of) j["retweet_of"] = *event.retweet_of;
    return j.dump();
}

RetweetObservation parse_observation_line(std::string_view line) {
    const json j = parse_json_line(line);

    RetweetObservation obs;
    obs.message_id = require_string(j, "message_id");
    obs.age_hours = require_number(j, "age_hours");
    obs.count = require_number(j, "count");

    if (obs.message_id.empty())
        throw ParseError("empty message_id");
    if (obs.age_hours < 0.0)
        throw ParseError("age_hours must be non-negative");
    if (obs.count < 0.0 || obs.count != std::floor(obs.count))
        throw ParseError("count must be a non-negative integer");
    return obs;
}

std::string observation_to_json_line(const RetweetObservation& obs) {
    json j;
    j["message_id"] = obs.message_id;
    j["age_hours"] = obs.age_hours;
    j["count"] = count_to_json(obs.count);
    return j.dump();
}

std::vector<EventRecord> load_events(std::istream& in) {
    std::vector<EventRecord> events;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            events.push_back(parse_event_line(line));
        } catch (const ParseError& e) {
            rethrow_with_line(e, line_no);
        }
    }
    return events;
}

std::vector<EventRecord> load_events_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open events file: " + path.string());
    return load_events(in);
}

void save_events(std::ostream& out, std::span<const EventRecord> events) {
    for (const auto& ev : events) out << event_to_json_line(ev) << '\n';
}

std::map<std::string, std::vector<RetweetObservation>> load_observations(std::istream& in) {
    std::map<std::string, std::vector<RetweetObservation>> groups;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            RetweetObservation obs = parse_observation_line(line);
            groups[obs.message_id].push_back(std::move(obs));
        } catch (const ParseError& e) {
            rethrow_with_line(e, line_no);
        }
    }

    for (auto& [id, series] : groups) {
        std::stable_sort(series.begin(), series.end(),
                         [](const auto& a, const auto& b) { return a.age_hours < b.age_hours; });
        for (size_t i = 1; i < series.size(); ++i) {
            if (series[i].count < series[i - 1].count) {
                std::ostringstream msg;
                msg << "retweet count for message \"" << id << "\" decreases at age "
                    << series[i].age_hours;
                throw DataError(msg.str());
            }
        }
    }
    return groups;
}

std::map<std::string, std::vector<RetweetObservation>>
load_observations_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open observations file: " + path.string());
    return load_observations(in);
}

void save_observations(std::ostream& out, std::span<const RetweetObservation> series) {
    for (const auto& obs : series) out << observation_to_json_line(obs) << '\n';
}

// --- model store persistence -------------------------------------------

json gmm_fit_to_json(const GmmFit& fit) {
    json j;
    j["w1"] = fit.w1;
    j["mu1"] = fit.mu1;
    j["sigma1"] = fit.sigma1;
    j["w2"] = fit.w2;
    j["mu2"] = fit.mu2;
    j["sigma2"] = fit.sigma2;
    j["n_events"] = fit.n_events;
    j["log_likelihood"] = fit.log_likelihood;
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    return j;
}

GmmFit gmm_fit_from_json(const json& j) {
    GmmFit fit;
    fit.w1 = require_number(j, "w1");
    fit.mu1 = require_number(j, "mu1");
    fit.sigma1 = require_number(j, "sigma1");
    fit.w2 = require_number(j, "w2");
    fit.mu2 = require_number(j, "mu2");
    fit.sigma2 = require_number(j, "sigma2");
    fit.n_events = static_cast<std::int64_t>(require_number(j, "n_events"));
    if (auto it = j.find("log_likelihood"); it != j.end()) fit.log_likelihood = it->get<double>();
    if (auto it = j.find("iterations"); it != j.end()) fit.iterations = it->get<int>();
    if (auto it = j.find("converged"); it != j.end()) fit.converged = it->get<bool>();
    fit.validate();
    return fit;
}

json growth_fit_to_json(const LogGrowthFit& fit) {
    const PaperParams pp = to_paper_params(fit);
    json j;
    j["a"] = fit.a;
    j["c"] = fit.c;
    j["d"] = fit.d;
    j["sse"] = fit.sse;
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    j["paper_params"] = {{"base", pp.base}, {"k0", pp.k0}, {"k1", pp.k1},
                         {"k2", pp.k2},     {"k3", pp.k3}};
    return j;
}

LogGrowthFit growth_fit_from_json(const json& j) {
    LogGrowthFit fit;
    fit.a = require_number(j, "a");
    fit.c = require_number(j, "c");
    fit.d = require_number(j, "d");
    if (auto it = j.find("sse"); it != j.end()) fit.sse = it->get<double>();
    if (auto it = j.find("iterations"); it != j.end()) fit.iterations = it->get<int>();
    if (auto it = j.find("converged"); it != j.end()) fit.converged = it->get<bool>();
    fit.validate();
    return fit;
}

json store_to_json(const ModelStore& store) {
    json users = json::object();
    for (const auto& [user, by_pattern] : store.user_fits) {
        json fits = json::object();
        for (const auto& [pattern, fit] : by_pattern) fits[pattern] = gmm_fit_to_json(fit);
        users[user] = std::move(fits);
    }
    json messages = json::object();
    for (const auto& [message, fit] : store.message_fits)
        messages[message] = growth_fit_to_json(fit);

    json j;
    j["format_version"] = store.format_version;
    j["created_at"] = format_rfc3339(store.created_at);
    j["user_fits"] = std::move(users);
    j["message_fits"] = std::move(messages);
    return j;
}

ModelStore store_from_json(const json& j) {
    if (!j.is_object())
        throw ParseError("model store: expected a JSON object");
    const auto version = j.find("format_version");
    if (version == j.end() || !version->is_number_integer())
        throw ParseError("model store: missing format_version");
    if (version->get<int>() != 1)
        throw DataError("model store: unsupported format_version " +
                        std::to_string(version->get<int>()));

    ModelStore store;
    store.created_at = parse_rfc3339(require_string(j, "created_at"));
    if (auto it = j.find("user_fits"); it != j.end()) {
        for (const auto& [user, by_pattern] : it->items())
            for (const auto& [pattern, fit] : by_pattern.items())
                store.user_fits[user][pattern] = gmm_fit_from_json(fit);
    }
    if (auto it = j.find("message_fits"); it != j.end()) {
        for (const auto& [message, fit] : it->items())
            store.message_fits[message] = growth_fit_from_json(fit);
    }
    return store;
}

void save_store(const ModelStore& store, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write model store: " + path.string());
    out << store_to_json(store).dump(2) << '\n';
    if (!out)
        throw DataError("write failure on model store: " + path.string());
}

ModelStore load_store(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open model store: " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw ParseError("model store is not valid JSON: " + path.string());
    return store_from_json(j);
}

SynthSpec synth_spec_from_json(const json& j) {
    if (!j.is_object())
        throw ParseError("synth spec: expected a JSON object");
    SynthSpec spec;
    auto truth = j.find("gmm_truth");
    if (truth == j.end())
        throw ParseError("synth spec: missing gmm_truth");
    spec.gmm_truth = gmm_fit_from_json(*truth);
    spec.n_events = static_cast<std::int64_t>(require_number(j, "n_events"));
    if (auto it = j.find("growth_truth"); it != j.end()) {
        spec.growth_truth.a = require_number(*it, "a");
        spec.growth_truth.c = require_number(*it, "c");
        spec.growth_truth.d = require_number(*it, "d");
    }
    if (auto it = j.find("noise_sd"); it != j.end()) spec.noise_sd = it->get<double>();
    if (auto it = j.find("seed"); it != j.end()) spec.seed = it->get<std::uint64_t>();
    spec.validate();
    return spec;
}

// --- synthetic-data oracle ----------------------------------------------

std::vector<EventRecord> generate_synthetic_events(const SynthSpec& spec) {
    spec.validate();

    using namespace std::chrono;
    constexpr int kSpanDays = 7;
    const sys_days base{year{2013} / May / 13}; // a Monday

    Rng rng(spec.seed);
    std::vector<EventRecord> events;
    events.reserve(static_cast<size_t>(spec.n_events));

    for (std::int64_t i = 0; i < spec.n_events; ++i) {
        double tod;
        do {
            const bool first = rng.uniform01() < spec.gmm_truth.w1;
            tod = first ? rng.normal(spec.gmm_truth.mu1, spec.gmm_truth.sigma1)
                        : rng.normal(spec.gmm_truth.mu2, spec.gmm_truth.sigma2);
        } while (tod < 0.0 || tod >= 24.0);

        EventRecord ev;
        ev.user_id = "synth_user";
        ev.message_id = "m" + std::to_string(i);
        ev.timestamp = sys_seconds{base + days{i % kSpanDays}} +
                       seconds{static_cast<std::int64_t>(tod * 3600.0)};
        events.push_back(std::move(ev));
    }
    return events;
}

std::vector<double> generate_growth_values(const GrowthTruth& truth,
                                           std::span<const double> ages, double noise_sd,
                                           std::uint64_t seed) {
    if (!(truth.c > 0.0))
        throw std::domain_error("generate_growth_values: c must be positive");

    Rng rng(seed);
    std::vector<double> values;
    values.reserve(ages.size());
    for (double t : ages) {
        if (t < 0.0)
            throw std::domain_error("generate_growth_values: negative age");
        double v = truth.a * std::log(t + truth.c) + truth.d;
        if (noise_sd > 0.0) v += rng.normal(0.0, noise_sd);
        values.push_back(v);
    }
    return values;
}

std::vector<RetweetObservation> generate_synthetic_growth(const SynthSpec& spec,
                                                          std::span<const double> ages) {
    if (!std::is_sorted(ages.begin(), ages.end()))
        throw std::domain_error("generate_synthetic_growth: ages must be sorted");

    const std::vector<double> values =
        generate_growth_values(spec.growth_truth, ages, spec.noise_sd, spec.seed);

    std::vector<RetweetObservation> series;
    series.reserve(ages.size());
    for (size_t i = 0; i < ages.size(); ++i) {
        RetweetObservation obs;
        obs.message_id = "synth_message";
        obs.age_hours = ages[i];
        obs.count = std::round(std::max(0.0, values[i]));
        series.push_back(std::move(obs));
    }
    return series;
}

} // namespace osn
