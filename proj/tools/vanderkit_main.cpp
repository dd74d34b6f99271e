// Command-line front end: parses spectra and matrices from JSON, runs
// construction / factorization / inversion / matrix functions / verification
// / benchmarks, and emits JSON or table reports.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "vanderkit/cli.hpp"

namespace {

using vanderkit::cli::Command;
using vanderkit::cli::Job;
using vanderkit::cli::OutputFormat;
using vanderkit::cli::ScalarMode;

struct Options {
    std::string input_path;
    bool use_stdin = false;
    std::string output = "json";
    double tol = -1.0;
    int terms = 35;
};

std::string read_input_text(const Options& opt, bool& have_input) {
    have_input = true;
    if (opt.use_stdin) {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    if (!opt.input_path.empty()) {
        std::ifstream f(opt.input_path);
        if (!f) throw vanderkit::io::ParseError("cannot open input file " + opt.input_path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
    have_input = false;
    return {};
}

ScalarMode scalar_mode_from(const nlohmann::json& input) {
    std::string mode = "rational";
    if (const char* env = std::getenv("VANDERKIT_SCALAR")) mode = env;
    if (input.is_object() && input.contains("scalar")) {
        if (!input["scalar"].is_string())
            throw vanderkit::io::ParseError("\"scalar\" must be \"rational\" or \"float\"");
        mode = input["scalar"].get<std::string>();
    }
    if (mode == "rational") return ScalarMode::rational;
    if (mode == "float") return ScalarMode::floating;
    throw vanderkit::io::ParseError("unknown scalar mode \"" + mode + "\"");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vandermonde and confluent Vandermonde construction, structured "
                 "inversion, and matrix functions"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--input", opt.input_path, "JSON input file");
    app.add_flag("--stdin", opt.use_stdin, "read the JSON input from standard input");
    app.add_option("--output", opt.output, "report format: json or table")
        ->check(CLI::IsMember({"json", "table"}));
    app.add_option("--tol", opt.tol, "residual warning tolerance (default 1e-8 * N)");
    app.add_option("--terms", opt.terms, "series terms for the verify exp oracle")
        ->check(CLI::PositiveNumber);

    app.add_subcommand("build", "construct the Vandermonde or confluent matrix");
    app.add_subcommand("det", "determinant by the node-difference product formula");
    app.add_subcommand("factor", "triangular factors of the inverse");
    app.add_subcommand("invert", "inverse assembled from the triangular factors");
    app.add_subcommand("matfunc", "matrix exp/log via Hermite interpolation (float mode)");
    app.add_subcommand("verify", "cross-check against the exact elimination oracle");
    app.add_subcommand("bench", "instrumented op-count sweep: structured vs dense");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Job job;
    if (app.got_subcommand("build")) job.command = Command::build;
    else if (app.got_subcommand("det")) job.command = Command::det;
    else if (app.got_subcommand("factor")) job.command = Command::factor;
    else if (app.got_subcommand("invert")) job.command = Command::invert;
    else if (app.got_subcommand("matfunc")) job.command = Command::matfunc;
    else if (app.got_subcommand("verify")) job.command = Command::verify;
    else job.command = Command::bench;

    job.output = opt.output == "table" ? OutputFormat::table : OutputFormat::json_out;
    job.tol = opt.tol;
    job.terms = opt.terms;

    try {
        bool have_input = false;
        const std::string text = read_input_text(opt, have_input);
        if (have_input) {
            job.input = nlohmann::json::parse(text);
        } else {
            if (job.command != Command::verify && job.command != Command::bench)
                throw vanderkit::io::ParseError(
                    std::string(vanderkit::cli::command_name(job.command)) +
                    " needs --input FILE or --stdin");
            job.input = nlohmann::json::object();
        }
        job.scalar = scalar_mode_from(job.input);
    } catch (const vanderkit::io::ParseError& e) {
        std::cout << nlohmann::json{
                         {"error", {{"code", "MalformedInput"}, {"message", e.what()}}}}
                         .dump(2)
                  << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cout << nlohmann::json{
                         {"error", {{"code", "MalformedInput"}, {"message", e.what()}}}}
                         .dump(2)
                  << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    return vanderkit::cli::run_job(job, std::cout, std::cerr);
}
