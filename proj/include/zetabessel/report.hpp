// JSON and CSV output for verification reports, and grid files.
#pragma once

#include "zetabessel/identities.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace zb {

using ordered_json = nlohmann::ordered_json;

// all numbers as decimal strings
ordered_json report_json(const VerificationReport& r);
std::string csv_header();
std::string csv_row(const VerificationReport& r);

// grid file: JSON array of objects, each with "id" and parameter values
// (strings preferred; plain numbers are accepted as written)
std::vector<IdentityCase> parse_grid(const std::string& text);
std::vector<IdentityCase> load_grid(const std::string& path);

}  // namespace zb
