#ifndef CSTAR_TOOLS_COMMANDS_HPP
#define CSTAR_TOOLS_COMMANDS_HPP

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cstar::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* format_tag = "cstar-cert/1";

// Certificates. Every number is an exact rational string; keys keep
// insertion order so the dump is byte-stable.
Json norm_certificate(const std::string& presentation, const std::string& point, const std::string& code, long k,
                      bool timings = false);
Json encode_certificate(const std::string& presentation, const std::string& point);
Json decode_certificate(const std::string& presentation, const std::string& code);
Json polar_certificate(const std::string& matrix_file, long n, const std::string& eps);
Json schur_log_certificate(const std::string& matrix_file, long k);
Json path_certificate(const std::string& u_file, const std::string& v_file, const std::string& t, long k);
Json jiangsu_params(long stage);
Json jiangsu_phi(const std::string& point, const std::string& t, long k);
// homomorphism, boundary and isometry suite for Phi_0 on a grid of `grid` points
Json jiangsu_verify(long stage, long grid, long k);
Json uhf_demo(std::size_t stages, long k);
// config keys: a, b, phi, supplier, stages, budget, a_prefix, b_prefix
Json intertwine(const Json& config, bool timings);

// full command line; writes the certificate or error record to out and
// returns the exit code (0, 2 parse, 3 infeasible, 4 certification)
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cstar::cli

#endif
