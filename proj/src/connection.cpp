#include "colsnn/connection.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "colsnn/errors.hpp"
#include "colsnn/text_format.hpp"

namespace colsnn {

std::string_view to_string(Sign sign) {
    return sign == Sign::Excitatory ? "excitatory" : "inhibitory";
}

std::string_view to_string(PlasticityMode mode) {
    switch (mode) {
        case PlasticityMode::None: return "none";
        case PlasticityMode::Stdp: return "stdp";
        case PlasticityMode::Rstdp: return "rstdp";
    }
    return "none";
}

Sign parse_sign(std::string_view text) {
    if (text == "excitatory") return Sign::Excitatory;
    if (text == "inhibitory") return Sign::Inhibitory;
    throw ConfigError("unknown sign '" + std::string(text) + "'");
}

PlasticityMode parse_plasticity_mode(std::string_view text) {
    if (text == "none") return PlasticityMode::None;
    if (text == "stdp") return PlasticityMode::Stdp;
    if (text == "rstdp") return PlasticityMode::Rstdp;
    throw ConfigError("unknown plasticity mode '" + std::string(text) + "'");
}

Connection::Connection(PopulationId pre, PopulationId post, std::size_t pre_size, std::size_t post_size,
                       Sign sign, PlasticityMode mode, WeightBounds bounds, double gain)
    : pre_(pre), post_(post), pre_size_(pre_size), post_size_(post_size), sign_(sign), mode_(mode),
      bounds_(bounds), gain_(gain), weights_(pre_size * post_size, bounds.w_min) {
    if (!(bounds.w_min >= 0.0) || !(bounds.w_min < bounds.w_max) || !std::isfinite(bounds.w_max)) {
        throw ConfigError("weight bounds must satisfy 0 <= w_min < w_max");
    }
    if (!(gain > 0.0) || !std::isfinite(gain)) throw ConfigError("connection gain must be > 0");
}

double Connection::clamp(double w) const noexcept {
    return std::clamp(w, bounds_.w_min, bounds_.w_max);
}

void Connection::fill(double w) {
    std::fill(weights_.begin(), weights_.end(), clamp(w));
}

void Connection::assign(std::span<const double> values) {
    if (values.size() != weights_.size()) throw ConfigError("weight matrix size mismatch");
    std::transform(values.begin(), values.end(), weights_.begin(), [this](double w) { return clamp(w); });
}

void Connection::scale(double factor) {
    for (auto& w : weights_) w = clamp(w * factor);
}

void save_connection(const Connection& conn, const std::filesystem::path& dir, const std::string& stem) {
    std::ofstream csv(dir / (stem + ".csv"));
    if (!csv) throw FileError("cannot write " + (dir / (stem + ".csv")).string());
    for (std::size_t i = 0; i < conn.pre_size(); ++i) {
        const auto row = conn.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) csv << ',';
            csv << format_exact(row[j]);
        }
        csv << '\n';
    }

    nlohmann::json meta = {
        {"pre", conn.pre()},
        {"post", conn.post()},
        {"rows", conn.pre_size()},
        {"cols", conn.post_size()},
        {"sign", to_string(conn.sign())},
        {"mode", to_string(conn.mode())},
        {"w_min", conn.bounds().w_min},
        {"w_max", conn.bounds().w_max},
        {"gain", conn.gain()},
    };
    std::ofstream js(dir / (stem + ".json"));
    if (!js) throw FileError("cannot write " + (dir / (stem + ".json")).string());
    js << meta.dump(2) << '\n';
}

Connection load_connection(const std::filesystem::path& dir, const std::string& stem) {
    std::ifstream js(dir / (stem + ".json"));
    if (!js) throw FileError("cannot open " + (dir / (stem + ".json")).string());
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(js);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("connection header: ") + e.what(), 0);
    }

    Connection conn(meta.at("pre").get<PopulationId>(), meta.at("post").get<PopulationId>(),
                    meta.at("rows").get<std::size_t>(), meta.at("cols").get<std::size_t>(),
                    parse_sign(meta.at("sign").get<std::string>()),
                    parse_plasticity_mode(meta.at("mode").get<std::string>()),
                    {meta.at("w_min").get<double>(), meta.at("w_max").get<double>()},
                    meta.at("gain").get<double>());

    std::ifstream csv(dir / (stem + ".csv"));
    if (!csv) throw FileError("cannot open " + (dir / (stem + ".csv")).string());
    std::vector<double> values;
    values.reserve(conn.pre_size() * conn.post_size());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(csv, line)) {
        ++line_no;
        std::stringstream ss(line);
        std::string cell;
        std::size_t cols = 0;
        while (std::getline(ss, cell, ',')) {
            values.push_back(parse_exact(cell, line_no));
            ++cols;
        }
        if (cols != conn.post_size()) throw ParseError("wrong column count in weight matrix", line_no);
    }
    if (line_no != conn.pre_size()) throw ParseError("wrong row count in weight matrix", line_no);
    conn.assign(values);
    return conn;
}

}  // namespace colsnn
