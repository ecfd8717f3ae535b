#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "telefid/canonical.hpp"
#include "telefid/errors.hpp"

namespace telefid::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitNotOptimal = 1,
  kExitParse = 2,
  kExitInvalidState = 3,
  kExitRange = 4,
  kExitMismatch = 5,
};

inline constexpr int kSchemaVersion = 1;

int exit_code_for(ErrorKind kind) noexcept;

/// Rounds to 12 significant digits. Negative zero becomes zero.
double sig12(double x);
/// Applies sig12 to every floating-point number in the document.
nlohmann::json round_numbers(nlohmann::json doc);
/// %.12g formatting.
std::string format12(double x);
/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(const std::string& s);

nlohmann::json canonical_to_json(const CanonicalForm& c);
nlohmann::json analysis_report(const DensityMatrix& rho);
std::string analysis_text(const nlohmann::json& report);

/// Entry point behind the executable. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace telefid::cli
