#pragma once
// Structured job reports: a single self-describing JSON document per job,
// deterministic at fixed precision and seed. Values are decimal strings with
// enough digits that decimal rounding stays below the certified error bound.

#include "ekl/hecke.hpp"
#include "json.hpp"

namespace ekl {

using ojson = nlohmann::ordered_json;

std::string artifact_version();
std::string fingerprint_hex(const std::string& bytes); // FNV-1a, 16 hex digits

// decimal digits so that the printed value differs from x by less than err
unsigned digits_for(const real& magnitude, const real& err);

ojson value_block(const cplx& v, const real& err);
ojson real_block(const real& v, const real& err);
ojson recognition_block(const Recognition& r);
ojson error_block(const ekl_error& e);

// common header: version, command, config fingerprint, precision, seed
ojson report_root(const std::string& command, const std::string& config_path,
                  const std::string& config_text, unsigned precision,
                  unsigned long long seed);

// serialized with a trailing newline; empty path writes to stdout
void write_report(const ojson& rep, const std::string& out_path);

} // namespace ekl
