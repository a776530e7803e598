#ifndef SUPVERMA_JSON_IO_HPP
#define SUPVERMA_JSON_IO_HPP

#include <json.hpp>

#include "supverma/modules.hpp"

// JSON dumps with deterministic byte output: nlohmann::json keeps
// object keys sorted, all numbers are decimal integers, and files are
// written atomically (temp file then rename).

namespace supverma {

nlohmann::json algebra_to_json(const WittAlgebra& w);
WittAlgebra algebra_from_json(const nlohmann::json& j);

nlohmann::json lmodule_to_json(const WittAlgebra& w, const LModule& m);
LModule lmodule_from_json(const WittAlgebra& w, const nlohmann::json& j);

// Custom K-module files: labels plus dense action matrices keyed by
// algebra basis name; missing K generators act as zero.  Bracket
// compatibility is verified on load.
KModule kmodule_from_json(const WittAlgebra& w, const nlohmann::json& j);

std::string canonical_dump(const nlohmann::json& j);
void write_atomic(const std::string& path, const std::string& content);
nlohmann::json read_json_file(const std::string& path);

}  // namespace supverma

#endif
