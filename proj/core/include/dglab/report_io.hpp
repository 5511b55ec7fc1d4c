#pragma once

#include <string>

#include "dglab/constants.hpp"
#include "dglab/iterate.hpp"
#include "dglab/verify.hpp"

namespace dg {

/// Full report as JSON; `config_json`, when nonempty, is embedded verbatim
/// under "config" so every artifact carries its resolved configuration.
std::string report_to_json(const CheckReport& report, const std::string& config_json = "");
std::string ivl_result_to_json(const IvlResult& result, const std::string& config_json = "");

/// One row per sample: parameters, lhs, rhs, margin.
std::string report_to_csv(const CheckReport& report);

/// Chain as JSON: resolved inputs, the constants, and one ledger object per
/// stage {name, formula, citation, value | log2_value}.
std::string chain_to_json(const ConstantChain& chain);

/// CSV columns k, V_k, envelope_k (plus exact log2 columns).
std::string recurrence_to_csv(const RecurrenceResult& result);

} // namespace dg
