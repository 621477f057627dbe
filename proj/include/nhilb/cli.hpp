#pragma once

// Batch front end shared by tools/nhilb and the tests.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage error.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "nhilb/sections.hpp"

namespace nhilb {

enum class Command { chi, hilbert, verify, trailing, decompose, body, sections_dim, cones_n2 };
enum class Format { text, json, latex };

struct RunConfig {
    Command command = Command::verify;
    std::optional<int> n;  // required except for decompose, where it defaults to the point count
    int m = 1;
    int k = 1;
    int D = 6;
    Format format = Format::text;
    int seed = 0;
    int threads = 0;  // <= 0 keeps the runtime default
    SectionCaps caps;
    Ambient ambient = Ambient::nested;  // trailing, sections-dim
    std::string points;                 // decompose
};

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command c);
std::optional<Format> parse_format(std::string_view name);
std::optional<Ambient> parse_ambient(std::string_view name);
// "n=4,mk=4,D=8"; any subset of keys, values positive. Throws UsageError.
SectionCaps parse_caps(std::string_view text);

// Threads from the flag, else from NESTED_HILB_THREADS, else 0.
int resolve_threads(std::optional<int> flag);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nhilb
