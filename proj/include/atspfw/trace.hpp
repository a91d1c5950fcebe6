#pragma once

#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>

namespace atspfw {

enum class TraceLevel { off = 0, phase = 1, cycle = 2, path = 3 };

inline TraceLevel parse_trace_level(std::string_view s) {
    if (s == "phase") return TraceLevel::phase;
    if (s == "cycle") return TraceLevel::cycle;
    if (s == "path") return TraceLevel::path;
    return TraceLevel::off;
}

/// Level from the ATSPFW_LOG environment variable (off when unset or unknown).
inline TraceLevel trace_level_from_env() {
    const char *v = std::getenv("ATSPFW_LOG");
    return v ? parse_trace_level(v) : TraceLevel::off;
}

/// Line-oriented progress sink. A default-constructed tracer discards everything.
class Tracer {
public:
    Tracer() = default;
    Tracer(std::ostream &os, TraceLevel level) : os_(&os), level_(level) {}

    [[nodiscard]] bool enabled(TraceLevel at) const noexcept {
        return os_ != nullptr && at != TraceLevel::off && static_cast<int>(at) <= static_cast<int>(level_);
    }

    void log(TraceLevel at, const std::string &line) const {
        if (enabled(at)) *os_ << line << '\n';
    }

private:
    std::ostream *os_ = nullptr;
    TraceLevel level_ = TraceLevel::off;
};

} // namespace atspfw
