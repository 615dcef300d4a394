#include "colsnn/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "colsnn/errors.hpp"
#include "colsnn/text_format.hpp"

namespace colsnn {

namespace {

struct Value {
    std::string text;
    bool quoted{false};
    std::size_t line{0};
};

[[noreturn]] void bad(const std::string& path, const Value& v, const std::string& expected) {
    throw ConfigError("config field '" + path + "' (line " + std::to_string(v.line) + "): expected " + expected +
                      ", got '" + v.text + "'");
}

double as_double(const std::string& path, const Value& v) {
    if (v.quoted) bad(path, v, "a number");
    try {
        return parse_exact(v.text);
    } catch (const ParseError&) {
        bad(path, v, "a number");
    }
}

std::uint64_t as_uint(const std::string& path, const Value& v) {
    std::uint64_t out = 0;
    const auto* first = v.text.data();
    const auto* last = first + v.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (v.quoted || v.text.empty() || ec != std::errc{} || ptr != last) bad(path, v, "a non-negative integer");
    return out;
}

bool as_bool(const std::string& path, const Value& v) {
    if (!v.quoted && v.text == "true") return true;
    if (!v.quoted && v.text == "false") return false;
    bad(path, v, "true or false");
}

struct Field {
    std::string path;
    std::function<void(TrainConfig&, const std::string&, const Value&)> set;
    std::function<std::string(const TrainConfig&)> get;
};

template <typename Member>
Field real(std::string path, Member member) {
    return {std::move(path), [member](TrainConfig& c, const std::string& p, const Value& v) {
                member(c) = as_double(p, v);
            },
            [member](const TrainConfig& c) { return format_exact(member(const_cast<TrainConfig&>(c))); }};
}

template <typename Member>
Field integer(std::string path, Member member) {
    return {std::move(path),
            [member](TrainConfig& c, const std::string& p, const Value& v) {
                using T = std::remove_reference_t<decltype(member(c))>;
                const auto n = as_uint(p, v);
                if (n > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) bad(p, v, "a smaller integer");
                member(c) = static_cast<T>(n);
            },
            [member](const TrainConfig& c) { return std::to_string(member(const_cast<TrainConfig&>(c))); }};
}

void add_stdp(std::vector<Field>& f, const std::string& section, StdpParams TrainConfig::*which) {
    f.push_back(real(section + ".a_plus", [which](TrainConfig& c) -> double& { return (c.*which).a_plus; }));
    f.push_back(real(section + ".a_minus", [which](TrainConfig& c) -> double& { return (c.*which).a_minus; }));
    f.push_back(real(section + ".tau_plus", [which](TrainConfig& c) -> double& { return (c.*which).tau_plus; }));
    f.push_back(real(section + ".tau_minus", [which](TrainConfig& c) -> double& { return (c.*which).tau_minus; }));
    f.push_back(real(section + ".w_min", [which](TrainConfig& c) -> double& { return (c.*which).w_min; }));
    f.push_back(real(section + ".w_max", [which](TrainConfig& c) -> double& { return (c.*which).w_max; }));
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back(integer("train.epochs", [](TrainConfig& c) -> std::size_t& { return c.epochs; }));
        f.push_back({"train.scheme",
                     [](TrainConfig& c, const std::string& p, const Value& v) {
                         if (v.text == "simple") {
                             c.scheme = RewardScheme::Simple;
                         } else if (v.text == "weighted") {
                             c.scheme = RewardScheme::Weighted;
                         } else {
                             bad(p, v, "simple or weighted");
                         }
                     },
                     [](const TrainConfig& c) {
                         return std::string(c.scheme == RewardScheme::Simple ? "\"simple\"" : "\"weighted\"");
                     }});
        f.push_back({"train.encoder",
                     [](TrainConfig& c, const std::string& p, const Value& v) {
                         const auto kind = parse_encoder_kind(v.text);
                         if (!kind || *kind == EncoderKind::Ttfs) {
                             bad(p, v, "one of poisson, pos-fixed, pos-word, codebook, gauss-pos-word");
                         }
                         c.encoder = *kind;
                     },
                     [](const TrainConfig& c) { return "\"" + std::string(to_string(c.encoder)) + "\""; }});
        f.push_back(integer("train.vocabulary", [](TrainConfig& c) -> std::size_t& { return c.vocabulary; }));
        f.push_back({"train.plasticity",
                     [](TrainConfig& c, const std::string& p, const Value& v) { c.plasticity = as_bool(p, v); },
                     [](const TrainConfig& c) { return std::string(c.plasticity ? "true" : "false"); }});
        f.push_back(real("train.tau_e", [](TrainConfig& c) -> double& { return c.tau_e; }));

        f.push_back({"encoding.window",
                     [](TrainConfig& c, const std::string& p, const Value& v) {
                         const auto n = as_uint(p, v);
                         if (n > 1'000'000'000ULL) bad(p, v, "a smaller integer");
                         c.encoding.window = static_cast<Step>(n);
                     },
                     [](const TrainConfig& c) { return std::to_string(c.encoding.window); }});
        f.push_back(integer("encoding.max_tokens", [](TrainConfig& c) -> std::size_t& { return c.encoding.max_tokens; }));
        f.push_back(integer("encoding.n_word_neurons",
                            [](TrainConfig& c) -> std::size_t& { return c.encoding.n_word_neurons; }));
        f.push_back(integer("encoding.n_pos_neurons",
                            [](TrainConfig& c) -> std::size_t& { return c.encoding.n_pos_neurons; }));
        f.push_back(real("encoding.poisson_rate", [](TrainConfig& c) -> double& { return c.encoding.poisson_rate; }));
        f.push_back(real("encoding.sparsity", [](TrainConfig& c) -> double& { return c.encoding.sparsity; }));
        f.push_back(real("encoding.gaussian_sigma", [](TrainConfig& c) -> double& { return c.encoding.gaussian_sigma; }));

        f.push_back(integer("network.n_hidden", [](TrainConfig& c) -> std::size_t& { return c.network.n_hidden; }));
        f.push_back(integer("network.n_column", [](TrainConfig& c) -> std::size_t& { return c.network.n_column; }));
        f.push_back(real("network.dt", [](TrainConfig& c) -> double& { return c.network.dt; }));
        f.push_back(real("network.init_lo", [](TrainConfig& c) -> double& { return c.network.init_lo; }));
        f.push_back(real("network.init_hi", [](TrainConfig& c) -> double& { return c.network.init_hi; }));
        f.push_back(real("network.lateral_inhibition_weight",
                         [](TrainConfig& c) -> double& { return c.network.lateral_inhibition_weight; }));
        f.push_back(real("network.mutual_inhibition_weight",
                         [](TrainConfig& c) -> double& { return c.network.mutual_inhibition_weight; }));
        f.push_back(real("network.w_min", [](TrainConfig& c) -> double& { return c.network.bounds.w_min; }));
        f.push_back(real("network.w_max", [](TrainConfig& c) -> double& { return c.network.bounds.w_max; }));
        f.push_back(real("network.input_gain", [](TrainConfig& c) -> double& { return c.network.input_gain; }));
        f.push_back(real("network.lateral_gain", [](TrainConfig& c) -> double& { return c.network.lateral_gain; }));
        f.push_back(real("network.output_gain", [](TrainConfig& c) -> double& { return c.network.output_gain; }));
        f.push_back(real("network.mutual_gain", [](TrainConfig& c) -> double& { return c.network.mutual_gain; }));
        f.push_back({"network.input_drive",
                     [](TrainConfig& c, const std::string& p, const Value& v) {
                         if (!v.quoted && v.text == "auto") {
                             c.network.input_drive.reset();
                         } else {
                             c.network.input_drive = as_double(p, v);
                         }
                     },
                     [](const TrainConfig& c) {
                         return c.network.input_drive ? format_exact(*c.network.input_drive) : std::string("auto");
                     }});
        f.push_back(real("network.decision_fraction",
                         [](TrainConfig& c) -> double& { return c.network.decision_fraction; }));
        f.push_back(real("network.decision_threshold",
                         [](TrainConfig& c) -> double& { return c.network.decision_threshold; }));
        f.push_back(integer("network.repetitions", [](TrainConfig& c) -> std::size_t& { return c.network.repetitions; }));
        f.push_back(real("network.noise_sigma", [](TrainConfig& c) -> double& { return c.network.noise_sigma; }));
        f.push_back({"network.noise_mode",
                     [](TrainConfig& c, const std::string& p, const Value& v) {
                         if (v.text == "escalate") {
                             c.network.noise_mode = NoiseMode::Escalate;
                         } else if (v.text == "always") {
                             c.network.noise_mode = NoiseMode::Always;
                         } else {
                             bad(p, v, "escalate or always");
                         }
                     },
                     [](const TrainConfig& c) {
                         return std::string(c.network.noise_mode == NoiseMode::Always ? "\"always\"" : "\"escalate\"");
                     }});

        f.push_back(real("neuron.tau", [](TrainConfig& c) -> double& { return c.network.neuron.tau; }));
        f.push_back(real("neuron.resistance", [](TrainConfig& c) -> double& { return c.network.neuron.resistance; }));
        f.push_back(real("neuron.u_reset", [](TrainConfig& c) -> double& { return c.network.neuron.u_reset; }));
        f.push_back(real("neuron.u_rest", [](TrainConfig& c) -> double& { return c.network.neuron.u_rest; }));
        f.push_back(real("neuron.u_threshold", [](TrainConfig& c) -> double& { return c.network.neuron.u_threshold; }));
        f.push_back(real("neuron.i_background",
                         [](TrainConfig& c) -> double& { return c.network.neuron.i_background; }));

        add_stdp(f, "hidden_stdp", &TrainConfig::hidden_stdp);
        add_stdp(f, "eligibility_stdp", &TrainConfig::eligibility_stdp);

        f.push_back(real("experiment.bias_factor", [](TrainConfig& c) -> double& { return c.bias_factor; }));
        f.push_back(integer("experiment.single_round_cap",
                            [](TrainConfig& c) -> std::size_t& { return c.single_round_cap; }));
        f.push_back(integer("experiment.four_epoch_cap",
                            [](TrainConfig& c) -> std::size_t& { return c.four_epoch_cap; }));
        f.push_back(integer("experiment.ten_epochs", [](TrainConfig& c) -> std::size_t& { return c.ten_epochs; }));
        return f;
    }();
    return table;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Drop a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_quotes = !in_quotes;
        if (line[i] == '#' && !in_quotes) return line.substr(0, i);
    }
    return line;
}

template <typename Fn>
void prefixed(const char* section, Fn&& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("config section '") + section + "': " + e.what());
    }
}

}  // namespace

void validate_config(const TrainConfig& config) {
    if (config.epochs < 1) throw ConfigError("config field 'train.epochs' must be >= 1");
    if (!(config.tau_e > 0.0)) throw ConfigError("config field 'train.tau_e' must be > 0");
    if (config.vocabulary < 1) throw ConfigError("config field 'train.vocabulary' must be >= 1");
    prefixed("encoding", [&] { config.encoding.validate(); });
    prefixed("neuron", [&] { config.network.neuron.validate(); });
    prefixed("network", [&] {
        auto net = config.network;
        net.n_input = std::max<std::size_t>(net.n_input, 1);
        net.validate();
    });
    prefixed("hidden_stdp", [&] { config.hidden_stdp.validate(); });
    prefixed("eligibility_stdp", [&] { config.eligibility_stdp.validate(); });
    prefixed("experiment", [&] { config.validate(); });
}

TrainConfig parse_config(std::istream& in) {
    std::map<std::string, Value> values;
    std::string section;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError("malformed section header '" + line + "' (line " + std::to_string(line_no) + ")");
            }
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected key = value, got '" + line + "' (line " + std::to_string(line_no) + ")");
        }
        const auto key = trim(std::string_view(line).substr(0, eq));
        Value v{trim(std::string_view(line).substr(eq + 1)), false, line_no};
        if (key.empty()) throw ConfigError("empty key (line " + std::to_string(line_no) + ")");
        if (v.text.size() >= 2 && v.text.front() == '"' && v.text.back() == '"') {
            v.text = v.text.substr(1, v.text.size() - 2);
            v.quoted = true;
        }
        const auto path = section.empty() ? key : section + "." + key;
        if (!values.emplace(path, v).second) {
            throw ConfigError("config field '" + path + "' set twice (line " + std::to_string(line_no) + ")");
        }
    }

    TrainConfig config;
    for (const auto& [path, v] : values) {
        const auto& table = fields();
        const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.path == path; });
        if (it == table.end()) {
            throw ConfigError("unknown config field '" + path + "' (line " + std::to_string(v.line) + ")");
        }
        it->set(config, path, v);
    }
    validate_config(config);
    return config;
}

TrainConfig parse_config_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_config(in);
}

TrainConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open config '" + path.string() + "'");
    return parse_config(in);
}

void write_config(std::ostream& out, const TrainConfig& config) {
    std::string section;
    for (const auto& f : fields()) {
        const auto dot = f.path.find('.');
        const auto sec = f.path.substr(0, dot);
        if (sec != section) {
            if (!section.empty()) out << '\n';
            out << '[' << sec << "]\n";
            section = sec;
        }
        out << f.path.substr(dot + 1) << " = " << f.get(config) << '\n';
    }
}

std::string config_text(const TrainConfig& config) {
    std::ostringstream out;
    write_config(out, config);
    return out.str();
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& f : fields()) keys.push_back(f.path);
    return keys;
}

}  // namespace colsnn
