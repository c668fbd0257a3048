// Command-line front end: JSON documents, reports and SVG figures.

#ifndef TORICHEIGHT_CLI_H_
#define TORICHEIGHT_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricheight/roof.h"
#include "toricheight/toric.h"

namespace toricheight {

enum ExitCode {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitHypothesis = 3,
  kExitCap = 4,
};

// Runs one invocation; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Parses a JSON text; ParseError carries line and column on failure.
nlohmann::json parse_json(const std::string& text, const std::string& source);

// {"name", "exponents": [[...]], "coefficients": ["p/q", ...]}. Field errors
// raise ParseError naming the offending field.
MonomialPair pair_from_json(const nlohmann::json& doc);
nlohmann::json pair_to_json(const MonomialPair& pair, const std::string& name = "");

std::vector<LatticeVector> exponents_from_json(const nlohmann::json& doc);
std::vector<LogLinear> weights_from_json(const nlohmann::json& doc);

// {"symbolic", "coefficients": {"constant", "<prime>": ...}, "decimal",
// "error_bound"}.
nlohmann::json value_to_json(const LogLinear& x, long bits);
nlohmann::json roof_to_json(const Roof& f);

// SVG of a roof on a 1- or 2-dimensional domain, 640x400.
std::string render_svg(const Roof& f, const std::string& title);

}  // namespace toricheight

#endif  // TORICHEIGHT_CLI_H_
