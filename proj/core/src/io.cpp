#include "dglab/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dg {

namespace {

constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string bytes_to_base64(const std::vector<std::uint8_t>& bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= bytes.size(); i += 3) {
        const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back(kB64Alphabet[(v >> 6) & 63]);
        out.push_back(kB64Alphabet[v & 63]);
    }
    const std::size_t rem = bytes.size() - i;
    if (rem == 1) {
        const std::uint32_t v = bytes[i] << 16;
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back('=');
        out.push_back('=');
    } else if (rem == 2) {
        const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back(kB64Alphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

int b64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}

std::vector<std::uint8_t> bytes_from_base64(const std::string& text) {
    if (text.size() % 4 != 0) throw IoError("base64 payload length not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int vals[4];
        int pad = 0;
        for (int j = 0; j < 4; ++j) {
            const char c = text[i + j];
            if (c == '=') {
                if (i + 4 != text.size() || j < 2) throw IoError("misplaced base64 padding");
                vals[j] = 0;
                ++pad;
            } else {
                vals[j] = b64_value(c);
                if (vals[j] < 0) throw IoError("invalid base64 character");
                if (pad > 0) throw IoError("base64 data after padding");
            }
        }
        const std::uint32_t v = (vals[0] << 18) | (vals[1] << 12) | (vals[2] << 6) | vals[3];
        out.push_back((v >> 16) & 0xff);
        if (pad < 2) out.push_back((v >> 8) & 0xff);
        if (pad < 1) out.push_back(v & 0xff);
    }
    return out;
}

} // namespace

std::string doubles_to_base64(const std::vector<double>& values) {
    std::vector<std::uint8_t> bytes(values.size() * 8);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint64_t word;
        std::memcpy(&word, &values[i], 8);
        for (int b = 0; b < 8; ++b) bytes[i * 8 + b] = (word >> (8 * b)) & 0xff;
    }
    return bytes_to_base64(bytes);
}

std::vector<double> doubles_from_base64(const std::string& text) {
    const std::vector<std::uint8_t> bytes = bytes_from_base64(text);
    if (bytes.size() % 8 != 0) throw IoError("payload byte count not a multiple of 8");
    std::vector<double> values(bytes.size() / 8);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint64_t word = 0;
        for (int b = 0; b < 8; ++b) word |= static_cast<std::uint64_t>(bytes[i * 8 + b]) << (8 * b);
        std::memcpy(&values[i], &word, 8);
    }
    return values;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json header_json(const GridSpec& spec) {
    ordered_json h;
    h["version"] = 1;
    h["d"] = spec.d;
    h["nt"] = spec.nt;
    ordered_json nx = ordered_json::array();
    for (int a = 0; a < spec.d; ++a) nx.push_back(spec.nx[a]);
    h["nx"] = nx;
    h["t_lo"] = spec.domain.t_lo;
    h["t_hi"] = spec.domain.t_hi;
    ordered_json center = ordered_json::array();
    for (int a = 0; a < spec.d; ++a) center.push_back(spec.domain.center[a]);
    h["center"] = center;
    h["radius"] = spec.domain.radius;
    h["order"] = "time-major";
    return h;
}

GridSpec spec_from_header(const ordered_json& h) {
    try {
        if (h.at("version").get<int>() != 1) throw IoError("unsupported field file version");
        if (h.at("order").get<std::string>() != "time-major")
            throw IoError("unsupported value order");
        const int d = h.at("d").get<int>();
        const int nt = h.at("nt").get<int>();
        std::array<int, kMaxDim> nx{{1, 1}};
        const auto& nxj = h.at("nx");
        if (!nxj.is_array() || static_cast<int>(nxj.size()) != d)
            throw IoError("nx must list one cell count per axis");
        for (int a = 0; a < d; ++a) nx[a] = nxj[a].get<int>();
        Point center{{0.0, 0.0}};
        const auto& cj = h.at("center");
        if (!cj.is_array() || static_cast<int>(cj.size()) != d)
            throw IoError("center must list one coordinate per axis");
        for (int a = 0; a < d; ++a) center[a] = cj[a].get<double>();
        const Cylinder domain = Cylinder::box(h.at("t_lo").get<double>(),
                                              h.at("t_hi").get<double>(), center,
                                              h.at("radius").get<double>());
        return GridSpec(d, nt, nx, domain);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed field header: ") + e.what());
    } catch (const ParameterError& e) {
        throw IoError(std::string("invalid field header: ") + e.what());
    }
}

ordered_json parse_document(const std::string& text) {
    ordered_json doc = ordered_json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw IoError("not valid JSON");
    if (!doc.is_object() || !doc.contains("header")) throw IoError("missing header object");
    return doc;
}

void attach_meta(ordered_json& doc, const std::string& meta_json) {
    if (meta_json.empty()) return;
    ordered_json meta = ordered_json::parse(meta_json, nullptr, false);
    if (meta.is_discarded()) throw IoError("meta must be valid JSON");
    doc["meta"] = meta;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace

std::string field_to_string(const GridField& field, const std::string& meta_json) {
    ordered_json doc;
    doc["header"] = header_json(field.spec());
    doc["payload"] = doubles_to_base64(field.values());
    attach_meta(doc, meta_json);
    return doc.dump() + "\n";
}

GridField field_from_string(const std::string& text) {
    const ordered_json doc = parse_document(text);
    const GridSpec spec = spec_from_header(doc.at("header"));
    if (!doc.contains("payload")) throw IoError("missing payload");
    std::vector<double> values = doubles_from_base64(doc.at("payload").get<std::string>());
    if (values.size() != spec.cell_count())
        throw IoError("payload size does not match the declared grid");
    try {
        return GridField(spec, std::move(values));
    } catch (const ParameterError& e) {
        throw IoError(std::string("invalid field payload: ") + e.what());
    }
}

void write_field(const GridField& field, const std::string& path, const std::string& meta_json) {
    write_text_file(path, field_to_string(field, meta_json));
}

GridField read_field(const std::string& path) {
    return field_from_string(read_text_file(path));
}

std::string coefficients_to_string(const CoefficientField& coeffs, const std::string& meta_json) {
    const GridSpec& spec = coeffs.spec();
    ordered_json doc;
    ordered_json h = header_json(spec);
    h["lambda"] = coeffs.lambda();
    h["Lambda"] = coeffs.Lambda();
    h["q"] = coeffs.q();
    doc["header"] = h;

    const std::size_t n = spec.cell_count();
    std::vector<double> a_flat(n * spec.d * spec.d);
    for (std::size_t i = 0; i < n; ++i) {
        const SymMatrix& a = coeffs.A_values()[i];
        if (spec.d == 1) {
            a_flat[i] = a.a00();
        } else {
            a_flat[i * 4 + 0] = a.a00();
            a_flat[i * 4 + 1] = a.a01();
            a_flat[i * 4 + 2] = a.a01();
            a_flat[i * 4 + 3] = a.a11();
        }
    }
    std::vector<double> b_flat(n * spec.d);
    for (std::size_t i = 0; i < n; ++i)
        for (int axis = 0; axis < spec.d; ++axis)
            b_flat[i * spec.d + axis] = coeffs.B_values()[i][axis];

    doc["payload_A"] = doubles_to_base64(a_flat);
    doc["payload_B"] = doubles_to_base64(b_flat);
    doc["payload_g"] = doubles_to_base64(coeffs.g_values());
    attach_meta(doc, meta_json);
    return doc.dump() + "\n";
}

CoefficientField coefficients_from_string(const std::string& text) {
    const ordered_json doc = parse_document(text);
    const ordered_json& h = doc.at("header");
    const GridSpec spec = spec_from_header(h);
    double lambda, Lambda, q;
    try {
        lambda = h.at("lambda").get<double>();
        Lambda = h.at("Lambda").get<double>();
        q = h.at("q").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed coefficient header: ") + e.what());
    }
    for (const char* key : {"payload_A", "payload_B", "payload_g"})
        if (!doc.contains(key)) throw IoError(std::string("missing ") + key);

    const std::vector<double> a_flat = doubles_from_base64(doc.at("payload_A").get<std::string>());
    const std::vector<double> b_flat = doubles_from_base64(doc.at("payload_B").get<std::string>());
    std::vector<double> g = doubles_from_base64(doc.at("payload_g").get<std::string>());

    const std::size_t n = spec.cell_count();
    if (a_flat.size() != n * spec.d * spec.d || b_flat.size() != n * spec.d || g.size() != n)
        throw IoError("coefficient payload sizes do not match the declared grid");

    std::vector<SymMatrix> A(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (spec.d == 1) {
            A[i] = SymMatrix{{a_flat[i], 0.0, a_flat[i]}};
        } else {
            if (a_flat[i * 4 + 1] != a_flat[i * 4 + 2])
                throw IoError("coefficient matrix not symmetric");
            A[i] = SymMatrix{{a_flat[i * 4 + 0], a_flat[i * 4 + 1], a_flat[i * 4 + 3]}};
        }
    }
    std::vector<std::array<double, kMaxDim>> B(n, {{0.0, 0.0}});
    for (std::size_t i = 0; i < n; ++i)
        for (int axis = 0; axis < spec.d; ++axis) B[i][axis] = b_flat[i * spec.d + axis];

    try {
        return CoefficientField(spec, std::move(A), std::move(B), std::move(g), lambda, Lambda, q);
    } catch (const ParameterError& e) {
        throw IoError(std::string("invalid coefficient data: ") + e.what());
    }
}

void write_coefficients(const CoefficientField& coeffs, const std::string& path,
                        const std::string& meta_json) {
    write_text_file(path, coefficients_to_string(coeffs, meta_json));
}

CoefficientField read_coefficients(const std::string& path) {
    return coefficients_from_string(read_text_file(path));
}

} // namespace dg
