#include "isoq/descriptor.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "isoq/error.hpp"
#include "json.hpp"

namespace isoq {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& ptr, const std::string& msg) {
    throw Error(ErrorKind::SchemaError, (ptr.empty() ? std::string("/") : ptr) + ": " + msg);
}

const json& field(const json& j, const std::string& ptr, const char* key) {
    if (!j.contains(key)) schema(ptr + "/" + key, "missing field");
    return j.at(key);
}

int int_field(const json& j, const std::string& ptr, const char* key) {
    const json& v = field(j, ptr, key);
    if (!v.is_number_integer()) schema(ptr + "/" + key, "expected an integer");
    return v.get<int>();
}

Expr expr_field(const json& v, const std::string& ptr) {
    if (!v.is_string()) schema(ptr, "expected an expression string");
    try {
        return parse_expr(v.get<std::string>());
    } catch (const SyntaxError& e) {
        schema(ptr, e.what());
    }
}

std::array<Expr, 4> expr4(const json& j, const std::string& ptr, const char* key) {
    const json& v = field(j, ptr, key);
    const std::string p = ptr + "/" + key;
    if (!v.is_array() || v.size() != 4) schema(p, "expected 4 expression strings");
    std::array<Expr, 4> out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = expr_field(v[i], p + "/" + std::to_string(i));
    return out;
}

cplx complex_value(const json& v, const std::string& ptr) {
    if (v.is_number()) return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return {v[0].get<double>(), v[1].get<double>()};
    if (v.is_string()) {
        try {
            return parse_complex(v.get<std::string>());
        } catch (const Error&) {
        }
    }
    schema(ptr, "expected a complex number [re, im]");
}

Mat4C matrix_field(const json& v, const std::string& ptr) {
    Mat4C X;
    if (v.is_array() && v.size() == 16) {
        for (int k = 0; k < 16; ++k) X(k / 4, k % 4) = complex_value(v[static_cast<std::size_t>(k)], ptr + "/" + std::to_string(k));
        return X;
    }
    if (v.is_array() && v.size() == 4) {
        for (std::size_t i = 0; i < 4; ++i) {
            const std::string pr = ptr + "/" + std::to_string(i);
            if (!v[i].is_array() || v[i].size() != 4) schema(pr, "expected a row of 4 complex numbers");
            for (std::size_t j = 0; j < 4; ++j)
                X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = complex_value(v[i][j], pr + "/" + std::to_string(j));
        }
        return X;
    }
    schema(ptr, "expected 16 complex numbers or 4 rows of 4");
}

CurveModel from_json(const json& j, const std::string& ptr, std::vector<std::string>* warnings) {
    if (!j.is_object()) schema(ptr, "expected an object");
    const json& t = field(j, ptr, "type");
    if (!t.is_string()) schema(ptr + "/type", "expected a string");
    const std::string type = t.get<std::string>();
    try {
        if (type == "wcurve") {
            std::string notice;
            CurveModel m = make_wcurve(int_field(j, ptr, "m"), int_field(j, ptr, "n"), &notice);
            if (warnings && !notice.empty()) warnings->push_back(notice);
            const auto& w = std::get<WCurve>(m.variant());
            if (warnings && is_wcurve_cycle(w)) warnings->push_back("W-curve q = 3 is a conformal cycle");
            return m;
        }
        if (type == "cycle") return CurveModel(StandardCycle{});
        if (type == "exceptional1") return CurveModel(Exceptional1{});
        if (type == "constant_bending") return make_constant_bending(complex_value(field(j, ptr, "kappa"), ptr + "/kappa"));
        if (type == "bryant")
            return CurveModel(Bryant{expr_field(field(j, ptr, "g"), ptr + "/g"), expr_field(field(j, ptr, "h"), ptr + "/h")});
        if (type == "kuy") return kuy_example(int_field(j, ptr, "n"));
        if (type == "lagrangian_pair") return CurveModel(LagrangianPair{expr4(j, ptr, "u1"), expr4(j, ptr, "u2")});
        if (type == "legendre") return CurveModel(LegendreLift{expr4(j, ptr, "xi")});
        if (type == "goursat") {
            const Mat4C X = matrix_field(field(j, ptr, "X"), ptr + "/X");
            const CurveModel inner = from_json(field(j, ptr, "inner"), ptr + "/inner", warnings);
            return make_goursat(inner, X);
        }
        if (type == "reparam") {
            const Expr h = expr_field(field(j, ptr, "h"), ptr + "/h");
            return make_reparam(from_json(field(j, ptr, "inner"), ptr + "/inner", warnings), h);
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SchemaError) throw;
        schema(ptr, e.what());
    }
    schema(ptr + "/type", "unknown curve type '" + type + "'");
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CurveModel& model) {
    return std::visit(
        [&](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, WCurve>) return {{"type", "wcurve"}, {"m", c.m}, {"n", c.n}};
            else if constexpr (std::is_same_v<T, StandardCycle>) return {{"type", "cycle"}};
            else if constexpr (std::is_same_v<T, Exceptional1>) return {{"type", "exceptional1"}};
            else if constexpr (std::is_same_v<T, ConstantBending>) return {{"type", "constant_bending"}, {"kappa", cjson(c.kappa)}};
            else if constexpr (std::is_same_v<T, Bryant>) return {{"type", "bryant"}, {"g", c.g.source()}, {"h", c.h.source()}};
            else if constexpr (std::is_same_v<T, LagrangianPair>) {
                json a = json::array(), b = json::array();
                for (std::size_t i = 0; i < 4; ++i) a.push_back(c.u1[i].source()), b.push_back(c.u2[i].source());
                return {{"type", "lagrangian_pair"}, {"u1", a}, {"u2", b}};
            } else if constexpr (std::is_same_v<T, LegendreLift>) {
                json a = json::array();
                for (const auto& e : c.xi) a.push_back(e.source());
                return {{"type", "legendre"}, {"xi", a}};
            } else if constexpr (std::is_same_v<T, Goursat>) {
                json X = json::array();
                for (int k = 0; k < 16; ++k) X.push_back(cjson(c.X(k / 4, k % 4)));
                return {{"type", "goursat"}, {"X", X}, {"inner", to_json(*c.inner)}};
            } else if constexpr (std::is_same_v<T, Reparam>) {
                return {{"type", "reparam"}, {"h", c.h.source()}, {"inner", to_json(*c.inner)}};
            } else {
                throw Error(ErrorKind::Validation, "curve " + model.name() + " has no JSON descriptor");
            }
        },
        model.variant());
}

}  // namespace

CurveModel load_descriptor(const std::string& text, std::vector<std::string>* warnings) {
    std::string src = text;
    const auto first = src.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw Error(ErrorKind::SchemaError, "/: empty descriptor");
    if (src[first] != '{') {
        if (src == "cycle" || src == "exceptional1") {
            src = "{\"type\":\"" + src + "\"}";
        } else {
            std::ifstream in(src);
            if (!in) throw Error(ErrorKind::IoError, "cannot read descriptor file " + src);
            std::stringstream ss;
            ss << in.rdbuf();
            src = ss.str();
        }
    }
    json j;
    try {
        j = json::parse(src);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::SchemaError, std::string("/: invalid JSON: ") + e.what());
    }
    return from_json(j, "", warnings);
}

std::string descriptor_of(const CurveModel& model) { return to_json(model).dump(); }

cplx parse_complex(const std::string& s) {
    static const std::regex re(
        R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])?\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$)");
    std::smatch m;
    if (s.empty() || !std::regex_match(s, m, re) || (!m[1].matched && !m[2].matched && !m[3].matched && s.find_first_of("ij") == std::string::npos))
        throw Error(ErrorKind::Validation, "cannot parse complex number '" + s + "'");
    const bool has_imag = s.find_first_of("ij") != std::string::npos;
    double re_part = 0.0, im_part = 0.0;
    if (m[1].matched) re_part = std::stod(m[1].str());
    if (has_imag) {
        im_part = m[3].matched ? std::stod(m[3].str()) : 1.0;
        if (m[2].matched && m[2].str() == "-") im_part = -im_part;
        // a lone signed number followed by i, e.g. "-2i", lands in group 1
        if (m[1].matched && !m[2].matched && !m[3].matched) {
            im_part = re_part;
            re_part = 0.0;
        }
    }
    return {re_part, im_part};
}

std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string format_complex(cplx z) {
    std::string im = format_double(z.imag());
    if (im[0] != '-') im = "+" + im;
    return format_double(z.real()) + im + "i";
}

}  // namespace isoq
