#include "dglab/report_io.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace dg {

namespace {

using ordered_json = nlohmann::ordered_json;

/// JSON has no inf/nan literals; encode them as tagged strings.
ordered_json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

ordered_json sample_json(const CheckSample& s) {
    ordered_json o;
    ordered_json params;
    for (const auto& [name, value] : s.params) params[name] = num(value);
    o["params"] = params;
    o["lhs"] = num(s.lhs);
    o["rhs"] = num(s.rhs);
    o["margin"] = num(s.margin);
    return o;
}

ordered_json report_json_object(const CheckReport& report) {
    ordered_json o;
    o["name"] = report.name;
    o["verdict"] = verdict_name(report.verdict);
    o["tolerance"] = num(report.tolerance);
    o["min_margin"] = num(report.samples.empty()
                              ? std::numeric_limits<double>::infinity()
                              : report.min_margin());
    o["skipped_samples"] = report.skipped_samples;
    o["definitive_violation"] = report.definitive_violation;
    if (report.worst >= 0) o["worst"] = sample_json(report.samples[report.worst]);
    o["notes"] = report.notes;
    ordered_json samples = ordered_json::array();
    for (const CheckSample& s : report.samples) samples.push_back(sample_json(s));
    o["samples"] = samples;
    return o;
}

void attach_config(ordered_json& o, const std::string& config_json) {
    if (config_json.empty()) return;
    ordered_json cfg = ordered_json::parse(config_json, nullptr, false);
    if (!cfg.is_discarded()) o["config"] = cfg;
}

std::string csv_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::string report_to_json(const CheckReport& report, const std::string& config_json) {
    ordered_json o = report_json_object(report);
    attach_config(o, config_json);
    return o.dump(2) + "\n";
}

std::string ivl_result_to_json(const IvlResult& result, const std::string& config_json) {
    ordered_json o = report_json_object(result.report);
    if (result.trace) {
        const PigeonholeTrace& t = *result.trace;
        ordered_json tj;
        tj["n"] = t.n;
        tj["i"] = t.i;
        tj["j"] = t.j;
        tj["pivot"] = t.pivot;
        tj["pivot_from_first_case"] = t.pivot_from_first_case;
        tj["below_l_interval"] = t.below_l_interval;
        tj["above_l_interval"] = t.above_l_interval;
        o["pigeonhole_trace"] = tj;
    }
    attach_config(o, config_json);
    return o.dump(2) + "\n";
}

std::string report_to_csv(const CheckReport& report) {
    std::ostringstream os;
    os << "params,lhs,rhs,margin\n";
    for (const CheckSample& s : report.samples) {
        std::string params;
        for (const auto& [name, value] : s.params) {
            if (!params.empty()) params += ";";
            params += name + "=" + csv_number(value);
        }
        os << '"' << params << '"' << ',' << csv_number(s.lhs) << ',' << csv_number(s.rhs)
           << ',' << csv_number(s.margin) << '\n';
    }
    return os.str();
}

std::string chain_to_json(const ConstantChain& chain) {
    ordered_json o;
    ordered_json inputs;
    inputs["d"] = chain.d;
    inputs["gamma1"] = num(chain.dg.gamma1);
    inputs["gamma2"] = num(chain.dg.gamma2);
    inputs["gamma3"] = num(chain.dg.gamma3);
    inputs["p"] = num(chain.dg.p);
    inputs["sobolev_constant"] = num(chain.sobolev_constant);
    o["inputs"] = inputs;

    ordered_json c;
    c["rho"] = num(chain.rho);
    c["alpha_iter"] = num(chain.alpha_iter);
    c["c_iter"] = num(chain.c_iter);
    c["delta"] = num(chain.delta);
    c["log2_delta"] = num(chain.log2_delta);
    c["c_bar"] = num(chain.c_bar);
    c["c_ivl"] = num(chain.c_ivl);
    c["k0_max"] = num(chain.k0_max);
    c["log2_k0_max"] = num(chain.log2_k0_max);
    c["log2_mu"] = num(chain.log2_mu);
    c["log2_beta"] = num(chain.log2_beta);
    c["theta"] = num(chain.theta);
    c["log2_one_minus_theta"] = num(chain.log2_one_minus_theta);
    c["alpha_holder"] = num(chain.alpha_holder);
    c["log2_alpha_holder"] = num(chain.log2_alpha_holder);
    o["constants"] = c;

    ordered_json ledger = ordered_json::array();
    for (const LedgerEntry& e : chain.ledger) {
        ordered_json ej;
        ej["name"] = e.name;
        ej["formula"] = e.formula;
        ej["citation"] = e.citation;
        if (e.value) ej["value"] = num(*e.value);
        if (e.log2_value) ej["log2_value"] = num(*e.log2_value);
        ledger.push_back(ej);
    }
    o["ledger"] = ledger;
    return o.dump(2) + "\n";
}

std::string recurrence_to_csv(const RecurrenceResult& result) {
    std::ostringstream os;
    os << "k,V_k,envelope_k,log2_V_k,log2_envelope_k\n";
    for (std::size_t k = 0; k < result.sequence.size(); ++k) {
        os << k << ',' << csv_number(result.sequence[k]) << ','
           << csv_number(result.envelope[k]) << ',' << csv_number(result.log2_sequence[k])
           << ',' << csv_number(result.log2_envelope[k]) << '\n';
    }
    return os.str();
}

} // namespace dg
