#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nhilb/cli.hpp"
#include "nhilb/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Section spaces of O(m,k) on nested Hilbert schemes of points in the plane"};
    app.require_subcommand(1);

    nhilb::RunConfig config;
    std::optional<int> n, threads;
    std::string format = "text", caps, ambient = "nested";

    const char* commands[][2] = {
        {"chi", "localization sum of the Euler characteristic"},
        {"hilbert", "Hilbert series from lattice points of P(m+k,k)"},
        {"verify", "compare localization, lattice and section-space routes"},
        {"trailing", "trailing exponents of sections against lattice points"},
        {"decompose", "split a point set into a sum of strictly increasing sets"},
        {"body", "halfspaces of the Newton-Okounkov polyhedron"},
        {"sections-dim", "graded dimensions of a section space"},
        {"cones-n2", "six-cone decomposition of P(2,1) for n = 2"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--n", n, "number of points");
        sub->add_option("--m", config.m, "first twist m");
        sub->add_option("--k", config.k, "second twist k");
        sub->add_option("--D", config.D, "total-degree truncation");
        sub->add_option("--format", format, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}));
        sub->add_option("--seed", config.seed, "seed for randomized checks");
        sub->add_option("--threads", threads, "OpenMP threads (default: NESTED_HILB_THREADS)");
        sub->add_option("--caps", caps, "section caps, e.g. n=4,mk=4,D=8");
        sub->add_option("--ambient", ambient, "nested or blowup")->check(CLI::IsMember({"nested", "blowup"}));
        sub->add_option("--points", config.points, "point list \"(a,b),(a,b),...\"");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    config.command = *nhilb::parse_command(app.get_subcommands().front()->get_name());
    config.n = n;
    config.format = *nhilb::parse_format(format);
    config.ambient = *nhilb::parse_ambient(ambient);
    config.threads = nhilb::resolve_threads(threads);
    try {
        if (!caps.empty()) config.caps = nhilb::parse_caps(caps);
    } catch (const nhilb::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }
    return nhilb::run(config, std::cout, std::cerr);
}
