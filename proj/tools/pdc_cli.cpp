#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "experiments.hpp"
#include "pdc/errors.hpp"

using pdc::tools::ExpOptions;
using pdc::tools::Json;

namespace {

struct Outputs {
    std::string out;
    std::string stream;
};

void add_common(CLI::App* sub, ExpOptions& o, Outputs& io) {
    sub->add_option("--p", o.p, "field size (power of two)");
    sub->add_option("--m", o.m, "arity");
    sub->add_option("--M", o.M, "output length");
    sub->add_option("--delta", o.delta, "degree bound");
    sub->add_option("--rho", o.rho, "density exponent");
    sub->add_option("--seed", o.seed, "global 64-bit seed");
    sub->add_option("--trials", o.trials, "number of trials");
    sub->add_option("--regime", o.regime, "paper or relaxed")->check(CLI::IsMember({"paper", "relaxed"}));
    sub->add_option("--cap-bytes", o.cap_bytes, "materialization budget");
    sub->add_option("--out", io.out, "write the JSON report here instead of stdout");
    sub->add_option("--stream", io.stream, "hex lines to this file, - for stdout");
}

int write_report(const Json& rep, const Outputs& io, bool stdout_taken) {
    const std::string text = rep.dump(2) + "\n";
    if (!io.out.empty()) {
        std::ofstream f(io.out);
        if (!f) {
            std::cerr << "cannot write " << io.out << "\n";
            return 1;
        }
        f << text;
    } else if (stdout_taken) {
        std::cerr << text;
    } else {
        std::cout << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudodeterministic construction toolkit"};
    app.require_subcommand(1);
    ExpOptions o;
    Outputs io;
    std::string replay_file;

    for (const auto& name : pdc::tools::command_names()) {
        auto* sub = app.add_subcommand(name);
        add_common(sub, o, io);
        if (name == "su-gen") sub->add_flag("--modified", o.modified, "stream the modified generator instead of HSU");
        if (name == "su-recon" || name == "ct-recon")
            sub->add_option("--oracle", o.oracle,
                            name == "su-recon" ? "avoider | planted | random | fixture" : "planted | adversarial");
        if (name == "ct-gen" || name == "ct-recon") {
            sub->add_option("--h-size", o.h, "size of H");
            sub->add_option("--circuit", o.circuit_file, "layered circuit file");
            sub->add_option("--input", o.input, "circuit input as 0/1 characters");
        }
        if (name == "bootstrap-demo") {
            sub->add_option("--property", o.property, "leading-bit | parity | prime | cmd:<shell command>");
            sub->add_option("--bits", o.bits, "requested length n");
        }
        if (name == "prime-demo") sub->add_option("--bits", o.bits, "prime length");
    }
    auto* rp = app.add_subcommand("replay", "rerun a report from its parameters and compare");
    rp->add_option("report", replay_file, "JSON report")->required();
    rp->add_option("--out", io.out, "write the new report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (rp->parsed()) {
            std::ifstream f(replay_file);
            if (!f) throw pdc::UsageError("cannot read " + replay_file);
            const Json old = Json::parse(f);
            const auto res = pdc::tools::run_experiment(pdc::tools::options_from_report(old));
            const bool same = pdc::tools::replay_key(old) == pdc::tools::replay_key(res.report);
            if (!io.out.empty()) write_report(res.report, io, false);
            std::cout << Json{{"replay_of", old.at("experiment")}, {"identical", same}}.dump() << "\n";
            return same ? 0 : 2;
        }
        o.command = app.get_subcommands().front()->get_name();
        if (o.command == "su-gen" && io.stream.empty()) io.stream = "-";
        o.stream = !io.stream.empty() && (o.command == "su-gen" || o.command == "ct-gen");
        std::unique_ptr<std::ofstream> file;
        std::ostream* os = nullptr;
        if (o.stream) {
            if (io.stream == "-") {
                os = &std::cout;
            } else {
                file = std::make_unique<std::ofstream>(io.stream);
                if (!*file) throw pdc::UsageError("cannot write " + io.stream);
                os = file.get();
            }
        }
        const auto res = pdc::tools::run_experiment(o, os);
        if (os) os->flush();
        if (write_report(res.report, io, os == &std::cout)) return 1;
        return res.exit_code;
    } catch (const pdc::ResourceError& e) {
        std::cerr << "cap violation: " << e.what() << "\n";
        return 1;
    } catch (const pdc::UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 1;
    } catch (const pdc::PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
