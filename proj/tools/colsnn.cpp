#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "colsnn/column_net.hpp"
#include "colsnn/config.hpp"
#include "colsnn/corpus.hpp"
#include "colsnn/encoders.hpp"
#include "colsnn/errors.hpp"
#include "colsnn/hash.hpp"
#include "colsnn/json_io.hpp"
#include "colsnn/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace colsnn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

// Everything a run depends on; also what the manifest records for replay.
struct RunSpec {
    std::string command;
    std::string config_path;
    std::string config_text;  // resolved config, filled before any compute
    std::uint64_t seed{0};
    std::string out;
    unsigned jobs{1};

    std::string input;
    std::string text;
    std::string encoder{"codebook"};
    bool invert{false};
    std::string corpus;
    std::string network;
    std::string kind;
    std::size_t replicates{1};
    std::optional<std::size_t> epochs;
    bool freeze_check{false};
};

json spec_json(const RunSpec& s) {
    json j = {{"config_path", s.config_path}, {"jobs", s.jobs}};
    if (s.command == "encode") {
        j["input"] = s.input;
        j["text"] = s.text;
        j["encoder"] = s.encoder;
        j["invert"] = s.invert;
        j["corpus"] = s.corpus;
    } else if (s.command == "train" || s.command == "eval") {
        j["corpus"] = s.corpus;
        j["network"] = s.network;
        j["epochs"] = s.epochs ? json(*s.epochs) : json(nullptr);
        j["freeze_check"] = s.freeze_check;
    } else if (s.command == "experiment") {
        j["kind"] = s.kind;
        j["corpus"] = s.corpus;
        j["replicates"] = s.replicates;
    }
    return j;
}

RunSpec spec_from_manifest(const json& m) {
    RunSpec s;
    s.command = m.at("command").get<std::string>();
    s.seed = m.at("seed").get<std::uint64_t>();
    s.config_text = m.at("config").get<std::string>();
    const auto& a = m.at("arguments");
    s.config_path = a.value("config_path", "");
    s.jobs = a.value("jobs", 1u);
    s.input = a.value("input", "");
    s.text = a.value("text", "");
    s.encoder = a.value("encoder", "codebook");
    s.invert = a.value("invert", false);
    s.corpus = a.value("corpus", "");
    s.network = a.value("network", "");
    s.kind = a.value("kind", "");
    s.replicates = a.value("replicates", std::size_t{1});
    if (a.contains("epochs") && !a.at("epochs").is_null()) s.epochs = a.at("epochs").get<std::size_t>();
    s.freeze_check = a.value("freeze_check", false);
    return s;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw FileError("failed writing '" + path.string() + "'");
}

// Write to a sibling temp file, then rename over the target.
void write_atomic(const fs::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    write_file(tmp, content);
    fs::rename(tmp, path);
}

struct CorpusInfo {
    std::vector<Sample> samples;
    std::string path;
    std::string hash;
};

CorpusInfo corpus_or_reference(const std::string& path) {
    CorpusInfo info;
    if (path.empty()) {
        Corpus ref{"reference", {}, reference_samples()};
        std::ostringstream ss;
        save_corpus(ref, ss);
        info.samples = ref.samples;
        info.hash = git_blob_hash(ss.str());
        return info;
    }
    const auto content = read_file(path);
    std::istringstream in(content);
    auto corpus = parse_corpus(in, fs::path(path).stem().string());
    info.samples = std::move(corpus.samples);
    info.path = path;
    info.hash = git_blob_hash(content);
    return info;
}

class Run {
public:
    explicit Run(RunSpec spec) : spec_(std::move(spec)) {}

    int execute() {
        const auto start = std::chrono::steady_clock::now();
        config_ = parse_config_text(spec_.config_text);
        config_.seed = spec_.seed;
        out_ = spec_.out;
        fs::create_directories(out_);
        write_file(out_ / "config.toml", spec_.config_text);
        artifacts_.push_back("config.toml");

        int status = kExitOk;
        if (spec_.command == "encode") {
            status = encode();
        } else if (spec_.command == "train") {
            status = train();
        } else if (spec_.command == "eval") {
            status = eval();
        } else if (spec_.command == "experiment") {
            status = experiment();
        } else {
            throw ConfigError("unknown command '" + spec_.command + "'");
        }

        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json manifest = {{"command", spec_.command},
                         {"seed", spec_.seed},
                         {"config", spec_.config_text},
                         {"config_resolved", config_},
                         {"arguments", spec_json(spec_)},
                         {"artifacts", artifacts_},
                         {"status", status},
                         {"duration_seconds", secs}};
        if (corpus_hash_) manifest["corpus"] = {{"path", corpus_path_}, {"git_hash", *corpus_hash_}};
        write_atomic(out_ / "manifest.json", manifest.dump(2) + "\n");
        return status;
    }

private:
    void remember_corpus(const CorpusInfo& c) {
        corpus_path_ = c.path;
        corpus_hash_ = c.hash;
    }

    void emit(const std::string& name, const std::string& content) {
        write_file(out_ / name, content);
        artifacts_.push_back(name);
    }

    int encode() {
        const auto kind = parse_encoder_kind(spec_.encoder);
        if (!kind) throw ConfigError("unknown encoder '" + spec_.encoder + "'");
        SpikeTrain train;
        if (*kind == EncoderKind::Ttfs) {
            if (spec_.input.empty()) throw InputError("ttfs needs --input with a PGM image");
            train = ttfs_encode(load_pgm(spec_.input), config_.encoding.window, spec_.invert);
        } else {
            std::string text = spec_.text;
            if (text.empty()) {
                if (spec_.input.empty()) throw InputError("text encoders need --input or --text");
                text = read_file(spec_.input);
                for (auto& ch : text) {
                    if (ch == '\n' || ch == '\r' || ch == '\t') ch = ' ';
                }
            }
            auto corpus = corpus_or_reference(spec_.corpus);
            remember_corpus(corpus);
            corpus.samples.push_back({text, Label::Positive});
            auto cfg = config_;
            cfg.encoder = *kind;
            const TextEncoder encoder(corpus.samples, cfg);
            auto rng = derive_rng(spec_.seed, stream::kEncoder);
            train = encoder.encode(text, rng);
            save_dictionary(encoder.dictionary(), out_ / "dictionary.txt");
            artifacts_.push_back("dictionary.txt");
        }
        std::ostringstream events;
        write_spike_csv(events, train);
        emit("events.csv", events.str());
        std::ostringstream grid;
        write_dense_grid_csv(grid, train);
        emit("grid.csv", grid.str());
        std::cout << "encoder " << to_string(*kind) << ": " << train.size() << " events, horizon " << train.horizon()
                  << ", " << train.neurons() << " neurons\n";
        return kExitOk;
    }

    CorpusInfo required_corpus() {
        if (spec_.corpus.empty()) throw InputError("--corpus is required");
        auto c = corpus_or_reference(spec_.corpus);
        remember_corpus(c);
        return c;
    }

    int train() {
        auto corpus = required_corpus();
        if (spec_.epochs) config_.epochs = *spec_.epochs;
        validate_config(config_);
        Corpus check{"", {}, corpus.samples};
        if (!check.trainable()) throw InputError("training corpus needs samples of both labels");

        const TextEncoder encoder(corpus.samples, config_);
        ColumnNet net = spec_.network.empty() ? ColumnNet(network_config_for(config_, encoder))
                                              : ColumnNet::load(spec_.network);
        if (net.config().n_input != encoder.neuron_space()) {
            throw ConfigError("network input size does not match the encoder");
        }
        auto rng = derive_rng(spec_.seed, stream::kNoise);
        TrainLog log;
        const auto metrics = train_epochs(net, corpus.samples, encoder, config_, rng, &log);

        std::ostringstream csv;
        write_metrics_csv(csv, metrics);
        emit("metrics.csv", csv.str());
        net.save(out_ / "network");
        save_dictionary(encoder.dictionary(), out_ / "network" / "dictionary.txt");
        artifacts_.push_back("network");
        json summary = {{"epochs", metrics}, {"trials", log.trials}, {"reward_events", log.rewards.size()},
                        {"weights_hash", weights_hash(net)}};
        emit("train.json", summary.dump(2) + "\n");

        const auto& last = metrics.back();
        std::cout << "trained " << metrics.size() << " epochs on " << corpus.samples.size()
                  << " samples; last epoch correct " << last.correct << ", incorrect " << last.incorrect
                  << ", undecided " << last.undecided << ", accuracy " << last.accuracy << "\n";
        return kExitOk;
    }

    int eval() {
        auto corpus = required_corpus();
        std::optional<Dictionary> dict;
        if (!spec_.network.empty() && fs::exists(fs::path(spec_.network) / "dictionary.txt")) {
            dict = load_dictionary(fs::path(spec_.network) / "dictionary.txt");
        }
        const TextEncoder encoder = dict ? TextEncoder(*dict, config_) : TextEncoder(corpus.samples, config_);
        ColumnNet net = spec_.network.empty() ? ColumnNet(network_config_for(config_, encoder))
                                              : ColumnNet::load(spec_.network);
        if (net.config().n_input != encoder.neuron_space()) {
            throw ConfigError("network input size does not match the encoder");
        }
        const auto before = weights_hash(net);
        auto rng = derive_rng(spec_.seed, stream::kEval);
        const auto report = evaluate(net, corpus.samples, encoder, config_, rng);
        const auto after = weights_hash(net);

        EpochMetrics m;
        m.decisions = report.decisions;
        m.correct = report.correct;
        m.incorrect = report.incorrect;
        m.undecided = report.undecided;
        m.accuracy = report.accuracy;
        std::ostringstream csv;
        write_metrics_csv(csv, {m});
        emit("metrics.csv", csv.str());
        json j = report;
        j["weights_hash_before"] = before;
        j["weights_hash_after"] = after;
        emit("eval.json", j.dump(2) + "\n");

        std::cout << "accuracy " << report.accuracy << " (" << report.correct << "/" << corpus.samples.size()
                  << "), positive " << report.pos_correct << "/" << report.pos_total << ", negative "
                  << report.neg_correct << "/" << report.neg_total << ", undecided " << report.undecided << "\n";
        if (spec_.freeze_check) {
            if (before != after) {
                std::cerr << "freeze check failed: weights hash " << before << " -> " << after << "\n";
                return kExitData;
            }
            std::cout << "freeze check passed: weights hash " << after << "\n";
        }
        return kExitOk;
    }

    static void write_experiment(const fs::path& dir, const ExperimentReport& r) {
        fs::create_directories(dir);
        std::ostringstream trace;
        write_trace_csv(trace, r.trace);
        write_file(dir / "trace.csv", trace.str());
        std::ostringstream metrics;
        write_metrics_csv(metrics, r.metrics);
        write_file(dir / "metrics.csv", metrics.str());
        write_file(dir / "report.json", json(r).dump(2) + "\n");
    }

    static void print_experiment(const ExperimentReport& r) {
        std::cout << to_string(r.kind) << " seed " << r.seed << ": ";
        const auto initial = r.initial_decision ? std::string(to_string(*r.initial_decision)) : "none";
        switch (r.kind) {
            case ExperimentKind::Single:
                std::cout << "initial decision " << initial << ", ";
                if (r.flipped_round) {
                    std::cout << "flipped to Negative after " << (*r.flipped_round + 1) << " rounds\n";
                } else {
                    std::cout << "no flip within " << r.trace.size() << " rounds\n";
                }
                break;
            case ExperimentKind::Four:
                if (r.criterion_epoch) {
                    std::cout << "all four correct at epoch " << *r.criterion_epoch << "\n";
                } else {
                    std::cout << "criterion not reached in " << r.metrics.size() << " epochs\n";
                }
                break;
            case ExperimentKind::Ten:
                std::cout << "mean correct first 20% " << r.first_quintile_correct << ", last 20% "
                          << r.last_quintile_correct << ", increasing trend "
                          << (r.increasing_trend ? "yes" : "no") << ", final accuracy " << r.final_accuracy
                          << "\n";
                break;
        }
    }

    int experiment() {
        const auto kind = parse_experiment_kind(spec_.kind);
        if (!kind) throw ConfigError("unknown experiment '" + spec_.kind + "'");
        auto corpus = corpus_or_reference(spec_.corpus);
        remember_corpus(corpus);
        validate_config(config_);
        if (spec_.replicates < 1) throw ConfigError("--replicates must be >= 1");

        std::vector<ExperimentReport> reports(spec_.replicates);
        std::vector<std::string> errors(spec_.replicates);
        auto run_one = [&](std::size_t i) {
            try {
                auto cfg = config_;
                cfg.seed = spec_.seed + i;
                reports[i] = run_experiment(*kind, cfg, corpus.samples);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        };
        const unsigned jobs = std::max(1u, std::min<unsigned>(spec_.jobs, static_cast<unsigned>(spec_.replicates)));
        if (jobs == 1) {
            for (std::size_t i = 0; i < spec_.replicates; ++i) run_one(i);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < jobs; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t i = w; i < spec_.replicates; i += jobs) run_one(i);
                });
            }
            for (auto& t : pool) t.join();
        }
        for (const auto& e : errors) {
            if (!e.empty()) throw Error(e);
        }

        if (spec_.replicates == 1) {
            write_experiment(out_, reports[0]);
            for (const auto* name : {"trace.csv", "metrics.csv", "report.json"}) artifacts_.push_back(name);
            print_experiment(reports[0]);
            return kExitOk;
        }
        json summary = json::array();
        std::size_t passed = 0;
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto name = "replicate-" + std::to_string(i);
            write_experiment(out_ / name, reports[i]);
            artifacts_.push_back(name);
            print_experiment(reports[i]);
            const auto& r = reports[i];
            const bool ok = r.kind == ExperimentKind::Single ? r.flipped_round.has_value()
                            : r.kind == ExperimentKind::Four ? r.criterion_epoch.has_value()
                                                             : r.increasing_trend;
            passed += ok;
            summary.push_back(json(r));
        }
        emit("summary.json", json({{"replicates", reports.size()}, {"passed", passed}, {"runs", summary}}).dump(2) + "\n");
        std::cout << passed << " of " << reports.size() << " replicates met the "
                  << to_string(*kind) << " criterion\n";
        return kExitOk;
    }

    RunSpec spec_;
    TrainConfig config_;
    fs::path out_;
    std::vector<std::string> artifacts_;
    std::string corpus_path_;
    std::optional<std::string> corpus_hash_;
};

int run_spec(RunSpec spec) {
    try {
        if (spec.config_text.empty()) {
            const auto cfg = spec.config_path.empty() ? TrainConfig{} : load_config(spec.config_path);
            spec.config_text = config_text(cfg);
        }
        return Run(std::move(spec)).execute();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return kExitData;
    }
}

void common_options(CLI::App* cmd, RunSpec& spec) {
    cmd->add_option("--config", spec.config_path, "TOML-style config file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", spec.seed, "Master seed for every random stream")->capture_default_str();
    cmd->add_option("--out", spec.out, "Output directory")->required();
    cmd->add_option("--jobs", spec.jobs, "Parallel replicate runs")->capture_default_str()->check(CLI::PositiveNumber);
}

std::vector<std::string> encoder_name_list() {
    std::vector<std::string> names;
    for (auto n : encoder_names()) names.emplace_back(n);
    return names;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cortical-column spiking classifier"};
    app.require_subcommand(1);

    RunSpec encode_spec{"encode"};
    auto* encode = app.add_subcommand("encode", "Encode one input into a spike raster");
    common_options(encode, encode_spec);
    encode->add_option("--input", encode_spec.input, "PGM image (ttfs) or text file");
    encode->add_option("--text", encode_spec.text, "Sentence to encode instead of --input");
    encode->add_option("--encoder", encode_spec.encoder, "Encoder name")
        ->capture_default_str()
        ->check(CLI::IsMember(encoder_name_list()));
    encode->add_flag("--invert", encode_spec.invert, "ttfs: bright pixels fire first");
    encode->add_option("--corpus", encode_spec.corpus, "Corpus for the dictionary (default: reference samples)");

    RunSpec train_spec{"train"};
    auto* train = app.add_subcommand("train", "Train on a corpus");
    common_options(train, train_spec);
    train->add_option("--corpus", train_spec.corpus, "Corpus TSV")->required();
    train->add_option("--network", train_spec.network, "Start from a network snapshot directory");
    train->add_option("--epochs", train_spec.epochs, "Override train.epochs");

    RunSpec eval_spec{"eval"};
    auto* eval = app.add_subcommand("eval", "Evaluate with plasticity frozen");
    common_options(eval, eval_spec);
    eval->add_option("--corpus", eval_spec.corpus, "Corpus TSV")->required();
    eval->add_option("--network", eval_spec.network, "Network snapshot directory");
    eval->add_flag("--freeze-check", eval_spec.freeze_check, "Fail unless weights are unchanged");

    RunSpec exp_spec{"experiment"};
    auto* experiment = app.add_subcommand("experiment", "Run the single, four or ten protocol");
    common_options(experiment, exp_spec);
    experiment->add_option("kind", exp_spec.kind, "single | four | ten")
        ->required()
        ->check(CLI::IsMember({"single", "four", "ten"}));
    experiment->add_option("--corpus", exp_spec.corpus, "Sample pool (default: reference samples)");
    experiment->add_option("--replicates", exp_spec.replicates, "Independent runs with seeds seed..seed+N-1")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    std::string manifest_path;
    std::string replay_out;
    auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    replay->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required()->check(CLI::ExistingFile);
    replay->add_option("--out", replay_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (encode->parsed()) return run_spec(encode_spec);
    if (train->parsed()) return run_spec(train_spec);
    if (eval->parsed()) return run_spec(eval_spec);
    if (experiment->parsed()) return run_spec(exp_spec);
    if (replay->parsed()) {
        try {
            auto spec = spec_from_manifest(json::parse(read_file(manifest_path)));
            spec.out = replay_out;
            return run_spec(spec);
        } catch (const std::exception& e) {
            std::cerr << "error: cannot replay '" << manifest_path << "': " << e.what() << "\n";
            return kExitData;
        }
    }
    return kExitUsage;
}
