#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace qprob {

/// Backends for the command line tool. Each returns the exact payload the
/// tool prints; check-style runners carry a top-level "pass" flag. All
/// randomness comes from the explicit seed, so identical arguments produce
/// byte-identical output.

nlohmann::ordered_json run_integrate(const std::string& measure_name,
                                     const std::string& expr, int32_t grid,
                                     double tol);

/// CSV with header `t,F`, one sampled step per line.
std::string run_cdf_csv(const std::string& measure_name,
                        const std::string& expr, int32_t grid);

nlohmann::ordered_json run_demo_nonlinearity(const std::string& measure_name,
                                             int32_t grid, double tol);

nlohmann::ordered_json run_recover(const std::string& measure_name,
                                   const std::string& expr, double threshold,
                                   int32_t grid, int64_t steps, double tol);

nlohmann::ordered_json run_axiom_suite(const std::string& measure_name,
                                       int32_t grid, uint64_t seed);

nlohmann::ordered_json run_staircase_suite(int32_t grid, uint64_t seed);

nlohmann::ordered_json run_urysohn_suite(int32_t grid, uint64_t seed);

nlohmann::ordered_json run_qspace_check(const std::string& space_json);

}  // namespace qprob
