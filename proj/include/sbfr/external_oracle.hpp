#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sbfr/oracles.hpp"

namespace sbfr {

/// How a finished external run maps to a verdict.
enum class FailConvention {
    ExitCode,     // non-zero exit status
    StdoutToken,  // standard output contains "FAIL"
    Either,       // either of the above
};

std::string_view to_string(FailConvention c);
FailConvention parse_fail_convention(std::string_view s);

/// Renders a coordinate as 17 significant digits (round-trips a double).
std::string format_coordinate(double v);

/// Substitutes {x1} ... {xd} in `command_template`. Throws InvalidArgument
/// unless every placeholder 1..d appears and no other {x..} does.
std::string expand_command(std::string_view command_template, const Point& p);

/// Runs a user program per probe: `/bin/sh -c <expanded template>` with the
/// caller's environment. A run past the timeout is killed and counted as
/// Pass. A program that cannot be started (spawn error, or shell status 126
/// or 127) raises OracleUnavailable.
class ExternalProgramOracle final : public Oracle {
public:
    ExternalProgramOracle(std::string command_template, std::size_t d, FailConvention convention,
                          std::chrono::milliseconds timeout = std::chrono::milliseconds(10'000));

    std::size_t dim() const override { return d_; }
    std::uint64_t timeouts() const { return timeouts_; }

protected:
    Verdict evaluate(const Point& p) override;

private:
    std::string template_;
    std::size_t d_;
    FailConvention convention_;
    std::chrono::milliseconds timeout_;
    std::uint64_t timeouts_ = 0;
};

} // namespace sbfr
