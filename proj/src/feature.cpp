#include "ffiredt/feature.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "ffiredt/error.hpp"

namespace ffiredt {

std::optional<Descriptor> descriptor_from_name(std::string_view name) {
    for (Descriptor d : kAllDescriptors) {
        if (descriptor_name(d) == name) return d;
    }
    return std::nullopt;
}

void DescriptorConfig::validate() const {
    if (cl_grid < 1) throw ConfigError("cl_grid must be positive");
    int cl_sum = 0;
    for (int c : cl_coeffs) {
        if (c < 1) throw ConfigError("cl_coeffs entries must be positive");
        if (c > cl_grid * cl_grid) throw ConfigError("cl_coeffs entry exceeds cl_grid^2");
        cl_sum += c;
    }
    if (cl_sum != static_cast<int>(descriptor_dimension(Descriptor::ColorLayout))) {
        throw ConfigError("cl_coeffs must sum to the Color Layout dimension (12)");
    }
    if (sc_bins != 256) throw ConfigError("sc_bins is fixed at 256 (16 hue x 4 sat x 4 value)");
    if (sc_out < 1 || sc_out > sc_bins) throw ConfigError("sc_out must be in [1, 256]");
    if (cs_window < 1) throw ConfigError("cs_window must be positive");
    if (cs_bins != 64) throw ConfigError("cs_bins is fixed at 64 (the HMMD cell table)");
    if (eh_blocks < 1) throw ConfigError("eh_blocks must be positive");
    if (eh_threshold < 0.0) throw ConfigError("eh_threshold must be non-negative");
    if (ct_low_percentile < 0.0 || ct_high_percentile > 100.0 ||
        ct_low_percentile > ct_high_percentile) {
        throw ConfigError("ct percentiles must satisfy 0 <= low <= high <= 100");
    }
    if (tb_orientations != 6 || tb_scales != 4) {
        throw ConfigError("tb_orientations/tb_scales are fixed by the 12-slot layout (6 and 4)");
    }
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

int parse_int(std::string_view key, std::string_view value) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("config key '" + std::string(key) + "': not an integer: '" +
                          std::string(value) + "'");
    }
    return out;
}

double parse_double(std::string_view key, std::string_view value) {
    try {
        std::size_t pos = 0;
        const double out = std::stod(std::string(value), &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + std::string(key) + "': not a number: '" +
                          std::string(value) + "'");
    }
}

}  // namespace

DescriptorConfig DescriptorConfig::from_text(std::string_view text) {
    DescriptorConfig cfg;
    std::istringstream lines{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(lines, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = trim(line.substr(0, hash));
        }
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        if (key == "cl_grid") cfg.cl_grid = parse_int(key, value);
        else if (key == "cl_coeffs_y") cfg.cl_coeffs[0] = parse_int(key, value);
        else if (key == "cl_coeffs_cb") cfg.cl_coeffs[1] = parse_int(key, value);
        else if (key == "cl_coeffs_cr") cfg.cl_coeffs[2] = parse_int(key, value);
        else if (key == "sc_bins") cfg.sc_bins = parse_int(key, value);
        else if (key == "sc_out") cfg.sc_out = parse_int(key, value);
        else if (key == "cs_window") cfg.cs_window = parse_int(key, value);
        else if (key == "cs_bins") cfg.cs_bins = parse_int(key, value);
        else if (key == "eh_blocks") cfg.eh_blocks = parse_int(key, value);
        else if (key == "eh_threshold") cfg.eh_threshold = parse_double(key, value);
        else if (key == "ct_low_percentile") cfg.ct_low_percentile = parse_double(key, value);
        else if (key == "ct_high_percentile") cfg.ct_high_percentile = parse_double(key, value);
        else if (key == "tb_orientations") cfg.tb_orientations = parse_int(key, value);
        else if (key == "tb_scales") cfg.tb_scales = parse_int(key, value);
        else {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                              std::string(key) + "'");
        }
    }
    cfg.validate();
    return cfg;
}

DescriptorConfig DescriptorConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_text(buffer.str());
}

}  // namespace ffiredt
