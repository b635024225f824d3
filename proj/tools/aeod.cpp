// Command-line front end: dataset generation, training, scoring, AUC,
// experiment suites, and SVG plotting over the library in src/.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aeod/data.hpp"
#include "aeod/detect.hpp"
#include "aeod/errors.hpp"
#include "aeod/eval.hpp"
#include "aeod/linalg.hpp"
#include "aeod/loss.hpp"
#include "aeod/model_io.hpp"
#include "aeod/svg.hpp"

namespace {

using namespace aeod;

// Accepts "a..b:s" ranges and comma-separated lists.
std::vector<double> parse_ratios(const std::string& text) {
    std::vector<double> out;
    const auto range_pos = text.find("..");
    if (range_pos != std::string::npos) {
        const auto colon = text.find(':', range_pos);
        if (colon == std::string::npos)
            throw ConfigError("ratios: range form is a..b:step");
        try {
            const double a = std::stod(text.substr(0, range_pos));
            const double b = std::stod(text.substr(range_pos + 2, colon - range_pos - 2));
            const double s = std::stod(text.substr(colon + 1));
            if (s <= 0.0 || b < a) throw ConfigError("ratios: need step > 0 and b >= a");
            const auto count = static_cast<std::size_t>(std::llround((b - a) / s)) + 1;
            for (std::size_t k = 0; k < count; ++k)
                out.push_back(std::round((a + static_cast<double>(k) * s) * 1e9) / 1e9);
        } catch (const std::invalid_argument&) {
            throw ConfigError("ratios: cannot parse '" + text + "'");
        }
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::invalid_argument&) {
            throw ConfigError("ratios: cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("ratios: empty list");
    return out;
}

double parse_beta(const std::string& text) {
    if (text == "auto") return 0.0;
    try {
        const double v = std::stod(text);
        if (v <= 0.0) throw ConfigError("beta must be positive or 'auto'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("beta must be positive or 'auto'");
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Matrix plane_projection(const Matrix& samples) {
    if (samples.cols() <= 2) return samples;
    const SymmetricEigen eig = sym_eigen(covariance(samples));
    const Matrix proj = pca_transform(samples, eig);
    Matrix out(proj.rows(), 2);
    for (std::size_t i = 0; i < proj.rows(); ++i) {
        out(i, 0) = proj(i, 0);
        out(i, 1) = proj(i, 1);
    }
    return out;
}

struct GenDataArgs {
    std::string family = "diag";
    std::size_t n = 2000;
    std::size_t n_train = 3000;
    std::size_t n_test = 3000;
    std::size_t dim = 50;
    double ip_ratio = 0.05;
    std::uint64_t seed = 1;
    std::string out;
    std::string out_train;
    std::string out_test;
};

void run_gen_data(const GenDataArgs& a) {
    nlohmann::json params;
    if (a.family == "manifold") {
        if (a.out_train.empty() || a.out_test.empty())
            throw ConfigError("gen-data manifold: --out-train and --out-test are required");
        const auto [train, test] = gen_manifold3d(a.n_train, a.n_test, a.ip_ratio, a.seed);
        save_csv(train, a.out_train);
        save_csv(test, a.out_test);
        params = {{"n_train", a.n_train}, {"n_test", a.n_test}, {"ip_ratio", a.ip_ratio}};
        write_generator_manifest(a.out_test + ".manifest.json", a.family, params.dump(),
                                 a.seed);
        std::cout << "wrote " << a.out_train << " (" << train.size() << " rows) and "
                  << a.out_test << " (" << test.size() << " rows)\n";
        return;
    }
    if (a.out.empty()) throw ConfigError("gen-data: --out is required");
    Dataset ds;
    if (a.family == "highdim") {
        ds = gen_highdim_gaussian(a.n, a.dim, a.seed);
        params = {{"n", a.n}, {"dim", a.dim}};
    } else {
        ds = lowdim_family_dataset(a.family, a.n, a.seed);
        params = {{"n", a.n}};
    }
    save_csv(ds, a.out);
    write_generator_manifest(a.out + ".manifest.json", a.family, params.dump(), a.seed);
    std::cout << "wrote " << a.out << " (" << ds.size() << " rows, " << ds.dim()
              << " columns)\n";
}

struct TrainArgs {
    std::string data;
    std::string model_out;
    std::string history_out;
    std::string loss = "mse-eig";
    std::string beta = "auto";
    std::size_t intrinsic_dim = 0;
    std::size_t epochs = 1000;
    std::size_t batch_size = 0;
    std::size_t record_every = 50;
    double learning_rate = 1e-3;
    double theta1 = 0.008;
    double theta2 = 1.0;
    std::uint64_t seed = 1;
};

void run_train(const TrainArgs& a) {
    if (a.intrinsic_dim < 1) throw ConfigError("train: --intrinsic-dim is required");
    if (a.loss != "mse" && a.loss != "mse-eig")
        throw ConfigError("train: --loss must be mse or mse-eig");

    const Dataset raw = load_csv(a.data);
    const Dataset ds = normalize_minmax(raw);

    AutoencoderConfig net;
    net.input_dim = ds.dim();
    net.hidden_dim = a.intrinsic_dim;
    net.seed = a.seed;

    TrainConfig tc;
    tc.epochs = a.epochs;
    tc.batch_size = a.batch_size;
    tc.learning_rate = a.learning_rate;
    tc.seed = a.seed;
    tc.record_every = a.record_every;

    double beta_used = 0.0;
    if (a.loss == "mse-eig") {
        beta_used = parse_beta(a.beta);
        if (beta_used == 0.0) beta_used = auto_beta(ds.samples, a.intrinsic_dim);
        LossConfig lc;
        lc.theta1 = a.theta1;
        lc.theta2 = a.theta2;
        lc.beta = beta_used;
        lc.intrinsic_dim = a.intrinsic_dim;
        tc.loss = lc;
    }

    const TrainedModel model = train(ds, net, tc);
    if (a.model_out.empty()) throw ConfigError("train: --model-out is required");
    save_model(model, a.model_out);
    if (!a.history_out.empty()) save_loss_history_csv(model.loss_history, a.history_out);

    std::cout << "trained " << a.loss << " model on " << ds.size() << " rows ("
              << a.epochs << " epochs";
    if (a.loss == "mse-eig") std::cout << ", beta " << format_double(beta_used);
    if (!model.loss_history.empty())
        std::cout << ", final loss " << format_double(model.loss_history.back().total);
    std::cout << ") -> " << a.model_out << "\n";
}

struct ScoreArgs {
    std::string model;
    std::string data;
    std::string out;
};

void run_score(const ScoreArgs& a) {
    const TrainedModel model = load_model(a.model);
    const Dataset ds = load_csv(a.data);
    const Vector scores = score(model, ds);
    save_scores_csv(scores, ds.labels, a.out);
    std::cout << "scored " << scores.size() << " rows -> " << a.out << "\n";
}

Vector score_column(const Dataset& ds) {
    std::size_t col = 0;
    for (std::size_t c = 0; c < ds.column_names.size(); ++c)
        if (ds.column_names[c] == "score") col = c;
    Vector values(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) values[i] = ds.samples(i, col);
    return values;
}

void run_auc(const std::string& scores_path) {
    const Dataset ds = load_csv(scores_path);
    if (!ds.has_labels())
        throw DataError("auc: " + scores_path + " has no label column");
    std::cout << format_double(auc(score_column(ds), ds.labels)) << "\n";
}

struct SuiteArgs {
    std::string kind;
    std::string out_dir = ".";
    std::string config_path;
    std::string ratios;
    std::string beta;
    std::string train_csv;
    std::string test_csv;
    std::size_t epochs = 0;
    std::size_t n = 0;
    std::size_t intrinsic_dim = 0;
    bool seed_set = false;
    std::uint64_t seed = 0;
};

void run_suite_cmd(const SuiteArgs& a) {
    SuiteConfig cfg;
    if (!a.config_path.empty()) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(read_text_file(a.config_path));
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        if (doc.is_object() && !doc.contains("config") && !doc.contains("suite"))
            doc["suite"] = a.kind;
        cfg = suite_config_from_json(doc.dump());
        if (cfg.suite != a.kind)
            throw ConfigError("config names suite '" + cfg.suite +
                              "' but the command line says '" + a.kind + "'");
    } else {
        cfg = default_suite_config(a.kind);
    }

    if (!a.ratios.empty()) cfg.ratios = parse_ratios(a.ratios);
    if (!a.beta.empty()) cfg.beta = parse_beta(a.beta);
    if (a.epochs > 0) cfg.epochs = a.epochs;
    if (a.n > 0) cfg.n = a.n;
    if (a.seed_set) cfg.seeds = {a.seed};
    if (!a.train_csv.empty()) cfg.train_csv = a.train_csv;
    if (!a.test_csv.empty()) cfg.test_csv = a.test_csv;
    if (a.intrinsic_dim > 0) cfg.intrinsic_dim = a.intrinsic_dim;

    const ExperimentReport report = run_suite(cfg);
    emit_report(report, a.out_dir);
    std::cout << "suite " << cfg.suite << ": " << report.cells.size()
              << " AUC cells -> " << a.out_dir << "\n";
}

struct PlotArgs {
    std::string data;
    std::string out;
    std::string scores;
    double flag_ratio = 0.05;
    std::string title = "scatter";
};

void run_plot(const PlotArgs& a) {
    const Dataset ds = load_csv(a.data);
    const Matrix plane = plane_projection(ds.samples);

    std::vector<int> flags(ds.size(), 0);
    if (!a.scores.empty()) {
        const Dataset sc = load_csv(a.scores);
        if (sc.size() != ds.size())
            throw DataError("plot: scores row count differs from data");
        flags = flag_outliers(score_column(sc), a.flag_ratio);
    } else if (ds.has_labels()) {
        flags = ds.labels;
    }

    SvgSeries normal, flagged;
    normal.label = "normal";
    normal.color = "#4878a8";
    flagged.label = "flagged";
    flagged.color = "#d62728";
    flagged.radius = 2.6;
    for (std::size_t i = 0; i < plane.rows(); ++i) {
        SvgSeries& target = flags[i] == 1 ? flagged : normal;
        target.x.push_back(plane(i, 0));
        target.y.push_back(plane(i, 1));
    }
    write_svg_plot(a.out, a.title, "component 1", "component 2", {normal, flagged});
    std::cout << "wrote " << a.out << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Autoencoder-based outlier detection toolkit"};
    app.require_subcommand(1);

    GenDataArgs gen;
    CLI::App* cmd_gen = app.add_subcommand("gen-data", "Generate a synthetic dataset CSV");
    cmd_gen->add_option("--family", gen.family,
                        "diag | corr | noisy | manifold | highdim");
    cmd_gen->add_option("--n", gen.n, "Sample count");
    cmd_gen->add_option("--n-train", gen.n_train, "Manifold training rows");
    cmd_gen->add_option("--n-test", gen.n_test, "Manifold test rows");
    cmd_gen->add_option("--dim", gen.dim, "Column count for highdim");
    cmd_gen->add_option("--ip-ratio", gen.ip_ratio, "Manifold displaced fraction");
    cmd_gen->add_option("--seed", gen.seed, "RNG seed");
    cmd_gen->add_option("--out", gen.out, "Output CSV path");
    cmd_gen->add_option("--out-train", gen.out_train, "Manifold training CSV path");
    cmd_gen->add_option("--out-test", gen.out_test, "Manifold test CSV path");

    TrainArgs tr;
    CLI::App* cmd_train = app.add_subcommand("train", "Train an autoencoder on a CSV");
    cmd_train->add_option("--data", tr.data, "Training CSV")->required();
    cmd_train->add_option("--model-out", tr.model_out, "Model JSON path")->required();
    cmd_train->add_option("--history-out", tr.history_out, "Loss history CSV path");
    cmd_train->add_option("--loss", tr.loss, "mse | mse-eig");
    cmd_train->add_option("--beta", tr.beta, "auto or a positive number");
    cmd_train->add_option("--intrinsic-dim", tr.intrinsic_dim, "Hidden width l")->required();
    cmd_train->add_option("--epochs", tr.epochs, "Training epochs");
    cmd_train->add_option("--batch-size", tr.batch_size, "0 = automatic");
    cmd_train->add_option("--record-every", tr.record_every, "Loss history stride");
    cmd_train->add_option("--learning-rate", tr.learning_rate, "Adam step size");
    cmd_train->add_option("--theta1", tr.theta1, "Reconstruction weight");
    cmd_train->add_option("--theta2", tr.theta2, "Spectral-gap weight");
    cmd_train->add_option("--seed", tr.seed, "RNG seed");

    ScoreArgs sc;
    CLI::App* cmd_score = app.add_subcommand("score", "Score a CSV with a trained model");
    cmd_score->add_option("--model", sc.model, "Model JSON")->required();
    cmd_score->add_option("--data", sc.data, "CSV to score")->required();
    cmd_score->add_option("--out", sc.out, "Output scores CSV")->required();

    std::string auc_scores;
    CLI::App* cmd_auc = app.add_subcommand("auc", "AUC from a scores CSV with labels");
    cmd_auc->add_option("--scores", auc_scores, "CSV with score and label columns")
        ->required();

    SuiteArgs su;
    CLI::App* cmd_suite =
        app.add_subcommand("suite", "Run an experiment suite and emit a report");
    cmd_suite->add_option("kind", su.kind, "lowdim | manifold | highdim | csv")
        ->required()
        ->check(CLI::IsMember({"lowdim", "manifold", "highdim", "csv"}));
    cmd_suite->add_option("--out-dir", su.out_dir, "Report directory");
    cmd_suite->add_option("--config", su.config_path, "Config or manifest JSON path");
    cmd_suite->add_option("--ratios", su.ratios, "a..b:step or comma list");
    cmd_suite->add_option("--beta", su.beta, "auto or a positive number");
    cmd_suite->add_option("--epochs", su.epochs, "Training epochs");
    cmd_suite->add_option("--n", su.n, "Sample count (lowdim, highdim)");
    cmd_suite->add_option("--train-csv", su.train_csv, "Training CSV (csv suite)");
    cmd_suite->add_option("--test-csv", su.test_csv, "Test CSV (csv suite)");
    cmd_suite->add_option("--intrinsic-dim", su.intrinsic_dim, "Hidden width (csv suite)");
    cmd_suite->add_option("--seed", su.seed, "Run a single seed instead of the default set")
        ->each([&su](const std::string&) { su.seed_set = true; });

    PlotArgs pl;
    CLI::App* cmd_plot = app.add_subcommand("plot", "Scatter plot of a CSV as SVG");
    cmd_plot->add_option("--data", pl.data, "CSV to plot")->required();
    cmd_plot->add_option("--out", pl.out, "Output SVG path")->required();
    cmd_plot->add_option("--scores", pl.scores, "Scores CSV used to flag points");
    cmd_plot->add_option("--flag-ratio", pl.flag_ratio, "Fraction flagged from scores");
    cmd_plot->add_option("--title", pl.title, "Plot title");

    try {
        app.parse(argc, argv);
        if (cmd_gen->parsed()) run_gen_data(gen);
        if (cmd_train->parsed()) run_train(tr);
        if (cmd_score->parsed()) run_score(sc);
        if (cmd_auc->parsed()) run_auc(auc_scores);
        if (cmd_suite->parsed()) run_suite_cmd(su);
        if (cmd_plot->parsed()) run_plot(pl);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const ContractViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
