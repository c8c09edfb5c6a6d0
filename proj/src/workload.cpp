#include "schedsim/workload.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_set>

namespace schedsim {

Ticks WorkloadSpec::total_burst() const noexcept
{
    Ticks sum{0};
    for (const auto& p : processes) sum += p.burst;
    return sum;
}

Ticks WorkloadSpec::max_burst() const noexcept
{
    Ticks m{0};
    for (const auto& p : processes) m = std::max(m, p.burst);
    return m;
}

bool WorkloadSpec::all_arrivals_zero() const noexcept
{
    return std::all_of(processes.begin(), processes.end(),
                       [](const ProcessSpec& p) { return p.arrival == Ticks{0}; });
}

namespace {

std::string what_for(WorkloadError::Kind kind, std::size_t row, const std::string& detail)
{
    std::string prefix = row == 0 ? std::string{} : "row " + std::to_string(row) + ": ";
    switch (kind) {
    case WorkloadError::Kind::malformed_row: return prefix + "malformed row: " + detail;
    case WorkloadError::Kind::duplicate_pid: return prefix + "duplicate pid '" + detail + "'";
    case WorkloadError::Kind::nonpositive_burst: return prefix + "burst must be positive (" + detail + ")";
    case WorkloadError::Kind::negative_arrival: return prefix + "arrival must not be negative (" + detail + ")";
    case WorkloadError::Kind::too_many_fraction_digits:
        return prefix + "more than 3 fractional digits in '" + detail + "'";
    case WorkloadError::Kind::empty_workload: return prefix + "workload has no processes";
    }
    return prefix + detail;
}

bool valid_pid(std::string_view pid) noexcept
{
    if (pid.empty()) return false;
    return std::all_of(pid.begin(), pid.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '-' || c == '.';
    });
}

Ticks parse_field(std::string_view text, bool is_burst, std::size_t row)
{
    const auto parsed = parse_ms(text);
    if (parsed) {
        if (is_burst && *parsed.ticks == Ticks{0})
            throw WorkloadError(WorkloadError::Kind::nonpositive_burst, row, std::string(text));
        return *parsed.ticks;
    }
    switch (parsed.error) {
    case DecimalError::negative:
        throw WorkloadError(is_burst ? WorkloadError::Kind::nonpositive_burst : WorkloadError::Kind::negative_arrival,
                            row, std::string(text));
    case DecimalError::too_many_fraction_digits:
        throw WorkloadError(WorkloadError::Kind::too_many_fraction_digits, row, std::string(text));
    case DecimalError::out_of_range:
    case DecimalError::malformed:
        break;
    }
    throw WorkloadError(WorkloadError::Kind::malformed_row, row,
                        std::string(is_burst ? "burst" : "arrival") + " '" + std::string(text) + "' " +
                            std::string(describe(parsed.error)));
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

void check_unique(const WorkloadSpec& w, const std::vector<std::size_t>& rows)
{
    std::unordered_set<std::string_view> seen;
    for (std::size_t i = 0; i < w.processes.size(); ++i)
        if (!seen.insert(w.processes[i].pid).second)
            throw WorkloadError(WorkloadError::Kind::duplicate_pid, rows[i], w.processes[i].pid);
}

WorkloadSpec parse_csv(std::string_view text, std::string label)
{
    WorkloadSpec w;
    w.label = std::move(label);
    std::vector<std::size_t> rows;

    bool have_header = false;
    bool with_arrival = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        if (!have_header) {
            if (line == "pid,arrival_ms,burst_ms")
                with_arrival = true;
            else if (line != "pid,burst_ms")
                throw WorkloadError(WorkloadError::Kind::malformed_row, line_no,
                                    "expected header 'pid,arrival_ms,burst_ms' or 'pid,burst_ms'");
            have_header = true;
            continue;
        }

        const auto fields = split(line, ',');
        const std::size_t expected = with_arrival ? 3 : 2;
        if (fields.size() != expected)
            throw WorkloadError(WorkloadError::Kind::malformed_row, line_no,
                                "expected " + std::to_string(expected) + " fields, got " +
                                    std::to_string(fields.size()));
        if (!valid_pid(fields[0]))
            throw WorkloadError(WorkloadError::Kind::malformed_row, line_no,
                                "invalid pid '" + std::string(fields[0]) + "'");

        ProcessSpec p;
        p.pid = std::string(fields[0]);
        p.arrival = with_arrival ? parse_field(fields[1], false, line_no) : Ticks{0};
        p.burst = parse_field(fields.back(), true, line_no);
        w.processes.push_back(std::move(p));
        rows.push_back(line_no);
    }

    if (!have_header) throw WorkloadError(WorkloadError::Kind::malformed_row, 0, "missing header");
    if (w.processes.empty()) throw WorkloadError(WorkloadError::Kind::empty_workload, 0, {});
    check_unique(w, rows);
    return w;
}

Ticks json_time(const nlohmann::json& v, bool is_burst, std::size_t row)
{
    if (v.is_string()) return parse_field(v.get_ref<const std::string&>(), is_burst, row);
    if (v.is_number_integer()) return parse_field(v.dump(), is_burst, row);
    throw WorkloadError(WorkloadError::Kind::malformed_row, row,
                        std::string(is_burst ? "burst_ms" : "arrival_ms") + " must be a decimal string");
}

WorkloadSpec parse_json(std::string_view text, std::string label)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw WorkloadError(WorkloadError::Kind::malformed_row, 0, e.what());
    }
    if (!doc.is_object() || !doc.contains("processes") || !doc["processes"].is_array())
        throw WorkloadError(WorkloadError::Kind::malformed_row, 0, "expected an object with a 'processes' array");

    WorkloadSpec w;
    w.label = std::move(label);
    if (auto it = doc.find("label"); it != doc.end() && it->is_string()) w.label = it->get<std::string>();

    std::vector<std::size_t> rows;
    std::size_t row = 0;
    for (const auto& item : doc["processes"]) {
        ++row;
        if (!item.is_object() || !item.contains("pid") || !item["pid"].is_string() || !item.contains("burst_ms"))
            throw WorkloadError(WorkloadError::Kind::malformed_row, row, "expected {pid, arrival_ms, burst_ms}");
        ProcessSpec p;
        p.pid = item["pid"].get<std::string>();
        if (!valid_pid(p.pid)) throw WorkloadError(WorkloadError::Kind::malformed_row, row, "invalid pid '" + p.pid + "'");
        p.arrival = item.contains("arrival_ms") ? json_time(item["arrival_ms"], false, row) : Ticks{0};
        p.burst = json_time(item["burst_ms"], true, row);
        w.processes.push_back(std::move(p));
        rows.push_back(row);
    }
    if (w.processes.empty()) throw WorkloadError(WorkloadError::Kind::empty_workload, 0, {});
    check_unique(w, rows);
    return w;
}

} // namespace

WorkloadError::WorkloadError(Kind kind, std::size_t row, const std::string& detail)
    : std::runtime_error(what_for(kind, row, detail))
    , kind_(kind)
    , row_(row)
{
}

WorkloadSpec parse_workload(std::string_view text, WorkloadFormat format, std::string label)
{
    return format == WorkloadFormat::csv ? parse_csv(text, std::move(label)) : parse_json(text, std::move(label));
}

void validate_workload(const WorkloadSpec& w)
{
    if (w.processes.empty()) throw WorkloadError(WorkloadError::Kind::empty_workload, 0, {});
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < w.processes.size(); ++i) {
        const auto& p = w.processes[i];
        if (!valid_pid(p.pid)) throw WorkloadError(WorkloadError::Kind::malformed_row, i + 1, "invalid pid '" + p.pid + "'");
        if (p.burst <= Ticks{0})
            throw WorkloadError(WorkloadError::Kind::nonpositive_burst, i + 1, std::to_string(p.burst.count()) + " ticks");
        if (p.arrival < Ticks{0})
            throw WorkloadError(WorkloadError::Kind::negative_arrival, i + 1, std::to_string(p.arrival.count()) + " ticks");
        rows.push_back(i + 1);
    }
    check_unique(w, rows);
}

std::string export_workload_csv(const WorkloadSpec& w)
{
    const bool zero = w.all_arrivals_zero();
    std::ostringstream out;
    out << (zero ? "pid,burst_ms\n" : "pid,arrival_ms,burst_ms\n");
    for (const auto& p : w.processes) {
        out << p.pid << ',';
        if (!zero) out << format_ms(p.arrival) << ',';
        out << format_ms(p.burst) << '\n';
    }
    return out.str();
}

std::string export_workload_json(const WorkloadSpec& w)
{
    nlohmann::json doc;
    doc["label"] = w.label;
    doc["processes"] = nlohmann::json::array();
    for (const auto& p : w.processes)
        doc["processes"].push_back({{"pid", p.pid}, {"arrival_ms", format_ms(p.arrival)}, {"burst_ms", format_ms(p.burst)}});
    return doc.dump(2) + "\n";
}

namespace {

// std::uniform_int_distribution is implementation-defined, so bounded draws
// are done by rejection on the raw mt19937_64 stream.
std::uint64_t draw_inclusive(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi)
{
    const std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max()) return rng();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + x % range;
}

} // namespace

WorkloadSpec generate_random(const GeneratorParams& params)
{
    if (params.count == 0) throw std::invalid_argument("count must be at least 1");
    if (params.max_burst < Ticks{1}) throw std::invalid_argument("max burst must be at least 1 tick");
    const bool windowed = params.arrival_mode == GeneratorParams::ArrivalMode::uniform_window;
    if (windowed && params.arrival_window < Ticks{0}) throw std::invalid_argument("arrival window must not be negative");

    std::mt19937_64 rng(params.seed);
    WorkloadSpec w;
    w.label = "random(count=" + std::to_string(params.count) + ", seed=" + std::to_string(params.seed) + ")";
    w.processes.reserve(params.count);
    for (std::size_t i = 0; i < params.count; ++i) {
        ProcessSpec p;
        p.pid = "P" + std::to_string(i + 1);
        p.burst = Ticks{static_cast<Ticks::rep>(draw_inclusive(rng, 1, static_cast<std::uint64_t>(params.max_burst.count())))};
        if (windowed)
            p.arrival = Ticks{static_cast<Ticks::rep>(
                draw_inclusive(rng, 0, static_cast<std::uint64_t>(params.arrival_window.count())))};
        w.processes.push_back(std::move(p));
    }
    return w;
}

} // namespace schedsim
