#include "skg/config_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <string_view>

namespace skg {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

ValidationError bad_value(const std::string& key, std::string_view value,
                          int line_no) {
    return ValidationError(
        ParamError::ConfigParse,
        "config line " + std::to_string(line_no) + ": cannot parse value '" +
            std::string(value) + "' for key '" + key + "'");
}

int parse_int(const std::string& key, std::string_view value, int line_no) {
    int out = 0;
    const auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw bad_value(key, value, line_no);
    return out;
}

double parse_double(const std::string& key, std::string_view value,
                    int line_no) {
    double out = 0.0;
    const auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw bad_value(key, value, line_no);
    return out;
}

}  // namespace

SystemParams load_config_file(const std::string& path, SystemParams base) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open config file '" + path + "'");

    const std::map<std::string, std::function<void(std::string_view, int)>>
        setters = {
            {"n_elements",
             [&](std::string_view v, int n) {
                 base.n_elements = parse_int("n_elements", v, n);
             }},
            {"t_k",
             [&](std::string_view v, int n) {
                 base.t_k = parse_int("t_k", v, n);
             }},
            {"t_s",
             [&](std::string_view v, int n) {
                 base.t_s = parse_int("t_s", v, n);
             }},
            {"f_blocks",
             [&](std::string_view v, int n) {
                 base.f_blocks = parse_int("f_blocks", v, n);
             }},
            {"q_levels",
             [&](std::string_view v, int n) {
                 base.q_levels = parse_int("q_levels", v, n);
             }},
            {"power",
             [&](std::string_view v, int n) {
                 base.power = parse_double("power", v, n);
             }},
            {"noise_power",
             [&](std::string_view v, int n) {
                 base.noise_power = parse_double("noise_power", v, n);
             }},
            {"beta_ab",
             [&](std::string_view v, int n) {
                 base.beta_ab = parse_double("beta_ab", v, n);
             }},
            {"beta_ae",
             [&](std::string_view v, int n) {
                 base.beta_ae = parse_double("beta_ae", v, n);
             }},
            {"beta_be",
             [&](std::string_view v, int n) {
                 base.beta_be = parse_double("beta_be", v, n);
             }},
            {"beta_ar",
             [&](std::string_view v, int n) {
                 base.beta_ar = parse_double("beta_ar", v, n);
             }},
            {"beta_rb",
             [&](std::string_view v, int n) {
                 base.beta_rb = parse_double("beta_rb", v, n);
             }},
            {"beta_re",
             [&](std::string_view v, int n) {
                 base.beta_re = parse_double("beta_re", v, n);
             }},
        };

    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError(ParamError::ConfigParse,
                                  "config line " + std::to_string(line_no) +
                                      ": expected key=value, got '" +
                                      std::string(stripped) + "'");
        const std::string key(trim(stripped.substr(0, eq)));
        const std::string_view value = trim(stripped.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ValidationError(ParamError::ConfigParse,
                                  "config line " + std::to_string(line_no) +
                                      ": unknown key '" + key + "'");
        it->second(value, line_no);
    }
    if (file.bad()) throw IoError("read failed for config file '" + path + "'");
    return base;
}

}  // namespace skg
