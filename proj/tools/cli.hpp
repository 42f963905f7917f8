#pragma once

// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it in-process.

#include "dstab/dstab.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dstab::cli {

using json = nlohmann::ordered_json;

enum Exit : int { ok = 0, violation = 1, bad_input = 2 };

/// One input document. Every part is optional; commands demand what they use.
struct Document {
    std::optional<AmbientGeometry> ambient;
    std::optional<NumericalClass> cls;
    std::optional<ChernSurface> chern;
    std::optional<TiltParams> tilt;
    std::optional<SheafP1> p1;
    json options = json::object();
};

/// Accepts {"ambient","class","chern","tilt","p1","options"}, or a bare P^1
/// sheaf object {"bundles","torsion"}. Unknown keys are rejected.
Document parse_document(const json& j);

Rational rational_from_json(const json& j);
json to_json(const Rational& q);
json to_json(const SheafP1& e);

/// args excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dstab::cli
