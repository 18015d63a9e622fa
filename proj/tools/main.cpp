// qunbraid command-line front end; talks to the library through the C API.

#include "qunbraid.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Options {
    std::string family = "so";
    int n = 3;
    int m = 1;
    std::string sign = "minus";
    int epsilon = 1;
    std::string kind = "space";
    bool heisenberg = false;
    bool free_algebra = false;
    bool extended = false;
    bool sphere = false;
    int max_degree = 3;
    std::string format = "text";
    std::vector<std::string> params;
    std::vector<std::string> suites;
    bool star = false;
    bool metric = false;
    std::string reality = "consistent";
    std::string phi_file;
    std::string report_file;
    std::string config_file;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("--family", o.family, "so or sl")->check(CLI::IsMember({"so", "sl"}));
    cmd->add_option("--n,-N", o.n, "N of sl(N) or so(N)");
    cmd->add_option("--m,-M", o.m, "number of copies");
    cmd->add_option("--sign", o.sign, "braiding: minus or plus")->check(CLI::IsMember({"minus", "plus"}));
    cmd->add_option("--epsilon", o.epsilon, "Heisenberg exponent, +1 or -1");
    cmd->add_option("--kind", o.kind, "space, heisenberg or free")->check(CLI::IsMember({"space", "heisenberg", "free"}));
    cmd->add_flag("--heisenberg", o.heisenberg, "same as --kind heisenberg");
    cmd->add_flag("--free", o.free_algebra, "free algebra on the coordinates (no relations)");
    cmd->add_flag("--extended", o.extended, "add r_a, r_a^{-1} and (x^0)^{-1}");
    cmd->add_flag("--sphere", o.sphere, "quotient by r = 1 (implies --extended)");
    cmd->add_option("--max-degree", o.max_degree, "degree bound of the checks (>= 2)");
    cmd->add_option("--format", o.format, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}));
    cmd->add_option("--param", o.params, "parameter assignment name=expression (repeatable)");
    cmd->add_flag("--star", o.star, "also run the star-structure checks");
    cmd->add_option("--reality", o.reality, "bar images of the free parameters: consistent, literal or trivial")
        ->check(CLI::IsMember({"consistent", "literal", "trivial"}));
    cmd->add_option("--report", o.report_file, "also write the JSON report to this file");
    cmd->add_option("--threads", o.threads, "worker threads for the overlap checks (0 = hardware)");
    cmd->add_option("--config", o.config_file, "JSON configuration file; options given on the command line override it");
}

nlohmann::json read_file_or_throw(const std::string& path, const std::string& option)
{
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError(option, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Configuration for the parsed subcommand. With --config the file is the
// base and only options present on the command line replace its keys.
nlohmann::json to_config(const Options& o, const CLI::App& cmd)
{
    nlohmann::json j = nlohmann::json::object();
    bool base = !o.config_file.empty();
    if (base) {
        std::string text = read_file_or_throw(o.config_file, "--config").get<std::string>();
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ValidationError("--config", e.what());
        }
        if (!j.is_object()) throw CLI::ValidationError("--config", "expected a JSON object");
    }
    auto given = [&](const char* name) { return !base || cmd.count(name) > 0; };
    if (given("--family")) j["family"] = o.family;
    if (given("--n")) j["n"] = o.n;
    if (given("--m")) j["m"] = o.m;
    if (given("--sign")) j["sign"] = o.sign;
    if (given("--epsilon")) j["epsilon"] = o.epsilon;
    if (o.heisenberg) j["kind"] = "heisenberg";
    else if (o.free_algebra) j["kind"] = "free";
    else if (given("--kind")) j["kind"] = o.kind;
    if (given("--extended") || o.sphere) j["extended"] = o.extended || o.sphere;
    if (given("--sphere")) j["sphere"] = o.sphere;
    if (given("--max-degree")) j["max_degree"] = o.max_degree;
    if (given("--format")) j["format"] = o.format;
    if (given("--star")) j["star"] = o.star;
    if (given("--reality")) j["reality"] = o.reality;
    if (given("--threads")) j["threads"] = o.threads;
    if (cmd.get_name() == "verify") {
        if (given("--metric")) j["metric"] = o.metric;
        if (given("--suite")) j["suites"] = o.suites;
    }
    if (given("--param")) {
        nlohmann::json params = j.contains("params") ? j["params"] : nlohmann::json::object();
        for (const auto& p : o.params) {
            auto eq = p.find('=');
            if (eq == std::string::npos) throw CLI::ValidationError("--param", "expected name=expression, got '" + p + "'");
            params[p.substr(0, eq)] = p.substr(eq + 1);
        }
        j["params"] = params;
    }
    if (!o.phi_file.empty()) j["phi"] = read_file_or_throw(o.phi_file, "--phi");
    return j;
}

int exit_code(qub_status st)
{
    switch (st) {
    case QUB_OK: return 0;
    case QUB_CHECK_FAILED: return 1;
    case QUB_USAGE: return 2;
    case QUB_DEGENERATE: return 3;
    case QUB_INTERNAL: return 4;
    }
    return 4;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Unbraiding of braided tensor products of quantum spaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qub_version());
    Options o;
    auto* verify = app.add_subcommand("verify", "run verification suites on R-hat and a built algebra");
    add_common(verify, o);
    verify->add_option("--suite", o.suites, "ybe, minpoly, projectors, metric, confluence, hilbert, classical, star, exchange")
        ->delimiter(',');
    verify->add_flag("--metric", o.metric, "include the metric suite (so only)");
    auto* unbraid = app.add_subcommand("unbraid", "decouple the copies and print the new generators");
    add_common(unbraid, o);
    unbraid->add_option("--phi", o.phi_file, "realization table to use instead of the built-in one");
    auto* relations = app.add_subcommand("relations", "print the rewrite rules of a built algebra");
    add_common(relations, o);

    nlohmann::json config;
    try {
        app.parse(argc, argv);
        const CLI::App* cmd = verify->parsed() ? verify : unbraid->parsed() ? unbraid : relations;
        config = to_config(o, *cmd);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::Error& e) {
        app.exit(e);
        return 2;
    }

    qub_session* session = nullptr;
    qub_status st = qub_session_new(config.dump().c_str(), &session);
    if (st != QUB_OK) {
        std::cerr << "error: " << qub_last_error() << "\n";
        return exit_code(st);
    }
    char* rendered = nullptr;
    char* report = nullptr;
    char** want_report = o.report_file.empty() ? nullptr : &report;
    if (verify->parsed()) st = qub_run_verify(session, &rendered, want_report);
    else if (unbraid->parsed()) st = qub_run_unbraid(session, &rendered, want_report);
    else st = qub_run_relations(session, &rendered, want_report);
    qub_session_free(session);
    if (st != QUB_OK && st != QUB_CHECK_FAILED) {
        std::cerr << "error: " << qub_last_error() << "\n";
        return exit_code(st);
    }
    std::fputs(rendered, stdout);
    if (report) {
        std::ofstream out(o.report_file);
        out << report;
        if (!out) {
            std::cerr << "error: cannot write '" << o.report_file << "'\n";
            st = QUB_USAGE;
        }
    }
    qub_string_free(rendered);
    qub_string_free(report);
    return exit_code(st);
}
