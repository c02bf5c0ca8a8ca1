// relequiv <command> <spec-file> [--j J] [--dmax D] [--format text|latex|csv|json] [--threads T]
//          [--k-degree-bound B] [--check-degree C] [--max-order N]

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "relequiv/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Relative invariants and equivariants of finite graded matrix groups"};
    app.set_help_flag("-h,--help", "Print this help message and exit");

    std::string command, spec_file, format = "text";
    std::optional<int> j, dmax, k_bound, check_degree;
    std::optional<std::size_t> max_order;
    unsigned threads = 1;

    app.add_option("command", command, "molien | invariants | equivariants | basis | general-form | check")
        ->required()
        ->check(CLI::IsMember(relequiv::commands()));
    app.add_option("spec-file", spec_file, "group specification (JSON)")->required();
    app.add_option("--j", j, "grading index j (default: all)");
    app.add_option("--dmax", dmax, "series truncation degree (default 6)");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "latex", "csv", "json"}));
    app.add_option("--threads", threads, "worker threads for Molien sums")->check(CLI::PositiveNumber);
    app.add_option("--k-degree-bound", k_bound, "degree bound for K-level generators (default |K|)");
    app.add_option("--check-degree", check_degree, "validation degree (default max(6, 2*max generator degree))");
    app.add_option("--max-order", max_order, "abort closure beyond this group order (default 10000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : relequiv::exit_parse;
    }

    static const std::map<std::string, relequiv::Format> formats{{"text", relequiv::Format::text},
                                                                  {"latex", relequiv::Format::latex},
                                                                  {"csv", relequiv::Format::csv},
                                                                  {"json", relequiv::Format::json}};
    relequiv::CliOptions opt;
    opt.j = j;
    opt.dmax = dmax;
    opt.format = formats.at(format);
    opt.threads = threads;
    opt.k_degree_bound = k_bound;
    opt.check_degree = check_degree;
    opt.max_order = max_order;
    return relequiv::run_file(command, spec_file, opt, std::cout, std::cerr);
}
