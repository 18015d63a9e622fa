#pragma once

// Command drivers shared by the C API and the tests: a run configuration,
// the verification suites, the unbraiding listing and the rule listing,
// each producing a JSON report plus a text or LaTeX rendering.

#include "qub/unbraid.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace qub {

enum class OutputFormat { text, json, latex };

struct RunConfig {
    SpaceSpec spec;
    int max_degree = 3;
    OutputFormat format = OutputFormat::text;
    /// name -> expression (parsed against the space)
    std::map<std::string, std::string> params;
    /// empty = default set for the command
    std::vector<std::string> suites;
    bool star = false;
    bool metric = false;
    RealityChoice reality = RealityChoice::consistent;
    /// user-supplied realization in the text format of parse_phi_table
    std::string phi_text;
    unsigned threads = 0;

    /// Throws UsageError when invalid.
    void validate() const;
    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct RunOutput {
    nlohmann::json report;
    std::string rendered;  // in the configured format
    bool pass = true;
};

RunOutput run_verify(const RunConfig& cfg);
RunOutput run_unbraid(const RunConfig& cfg);
RunOutput run_relations(const RunConfig& cfg);

/// Number of monomials of degree d in the commutative model of the
/// built algebra: free commuting letters, plus for each extended copy
/// invertible letters x^0, r_1..r_n and pairs (x^{-a}, x^{a}) that never
/// occur together.
std::uint64_t commutative_hilbert_count(const SpaceSpec& spec, int d);

std::string to_string(OutputFormat f);
OutputFormat parse_format(const std::string& s);
std::string to_string(AlgebraKind k);
AlgebraKind parse_kind(const std::string& s);

} // namespace qub
