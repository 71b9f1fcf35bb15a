#include "ekl/report.hpp"
#include <fstream>
#include <iostream>

namespace ekl {

std::string artifact_version() { return "ekl 1.0.0"; }

std::string fingerprint_hex(const std::string& bytes) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

unsigned digits_for(const real& magnitude, const real& err) {
    unsigned full = static_cast<unsigned>(precision_bits() * 0.30103) + 4;
    if (err <= 0) return full;
    real ratio = (1 + magnitude) / err;
    if (ratio <= 1) return 8;
    unsigned d = static_cast<unsigned>(static_cast<double>(log(ratio)) / 2.302585) + 4;
    if (d < 8) d = 8;
    return d < full ? d : full;
}

ojson value_block(const cplx& v, const real& err) {
    unsigned d = digits_for(abs(v), err);
    ojson b;
    b["re"] = to_decimal(v.re, d);
    b["im"] = to_decimal(v.im, d);
    b["error_bound"] = to_decimal(err, 6);
    return b;
}

ojson real_block(const real& v, const real& err) {
    unsigned d = digits_for(abs(v), err);
    ojson b;
    b["value"] = to_decimal(v, d);
    b["error_bound"] = to_decimal(err, 6);
    return b;
}

ojson recognition_block(const Recognition& r) {
    ojson b;
    b["found"] = r.found;
    if (r.found) {
        b["re"] = r.re.str();
        b["im"] = r.im.str();
        b["residual"] = to_decimal(r.residual, 6);
    }
    return b;
}

ojson error_block(const ekl_error& e) {
    ojson b;
    b["code"] = e.code;
    b["detail"] = e.what();
    return b;
}

ojson report_root(const std::string& command, const std::string& config_path,
                  const std::string& config_text, unsigned precision,
                  unsigned long long seed) {
    ojson r;
    r["version"] = artifact_version();
    r["command"] = command;
    r["config"] = config_path;
    r["config_fingerprint"] = fingerprint_hex(config_text);
    r["precision_bits"] = precision;
    r["seed"] = seed;
    return r;
}

void write_report(const ojson& rep, const std::string& out_path) {
    std::string text = rep.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) fail("MalformedConfig", "cannot open output path " + out_path);
    f << text;
}

} // namespace ekl
