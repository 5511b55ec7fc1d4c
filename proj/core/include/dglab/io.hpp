#pragma once

#include <string>

#include "dglab/coefficients.hpp"
#include "dglab/field.hpp"

namespace dg {

/// Field files are a single JSON document:
///   {"header": {"version":1,"d":..,"nt":..,"nx":[..],"t_lo":..,"t_hi":..,
///               "center":[..],"radius":..,"order":"time-major"},
///    "payload": "<base64 of little-endian float64, declared order>"}
/// Coefficient files carry the same header plus lambda/Lambda/q and three
/// payloads: A (row-major per cell), B, g. Unknown extra keys are ignored on
/// read; an optional "meta" object may carry the resolved producing config.
std::string field_to_string(const GridField& field, const std::string& meta_json = "");
GridField field_from_string(const std::string& text);

void write_field(const GridField& field, const std::string& path,
                 const std::string& meta_json = "");
GridField read_field(const std::string& path);

std::string coefficients_to_string(const CoefficientField& coeffs,
                                   const std::string& meta_json = "");
CoefficientField coefficients_from_string(const std::string& text);

void write_coefficients(const CoefficientField& coeffs, const std::string& path,
                        const std::string& meta_json = "");
CoefficientField read_coefficients(const std::string& path);

/// RFC 4648 base64 (no line breaks) of little-endian float64 words.
std::string doubles_to_base64(const std::vector<double>& values);
std::vector<double> doubles_from_base64(const std::string& text);

} // namespace dg
