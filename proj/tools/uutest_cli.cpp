// Command-line front end: unimodality testing, mixture fitting and
// sampling, recursive splitting, model comparison, and the benchmark
// suites. Reports go to stdout or --out; diagnostics go to stderr.
// Exit codes: 0 unimodal/success, 1 multimodal, 2 error.

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uutest/dataset.hpp"
#include "uutest/evalkit.hpp"
#include "uutest/splitter.hpp"
#include "uutest/synthgen.hpp"
#include "uutest/umm.hpp"
#include "uutest/uutest.hpp"

namespace {

using nlohmann::json;
using namespace uutest;

std::string fmt_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + out_path);
    }
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

// One value per line, or a delimited field picked by --column (0-based).
// Blank lines are ignored; anything else that fails to parse is an error.
std::vector<double> parse_column(const std::string& text, int column) {
    std::vector<double> values;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.remove_suffix(1);
        }
        while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        if (line.empty()) {
            if (pos > text.size()) break;
            continue;
        }

        std::string_view field = line;
        int col = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',' || line[i] == ';' ||
                line[i] == '\t') {
                if (col == column) {
                    field = line.substr(start, i - start);
                    break;
                }
                ++col;
                start = i + 1;
                if (i == line.size()) {
                    throw std::runtime_error("parse error at line " +
                                             std::to_string(line_no));
                }
            }
        }
        if (col < column) {
            throw std::runtime_error("parse error at line " + std::to_string(line_no));
        }
        while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
        double v = 0.0;
        auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
            throw std::runtime_error("parse error at line " + std::to_string(line_no));
        }
        values.push_back(v);
    }
    return values;
}

Dataset load_dataset(const std::string& path, int column) {
    return Dataset::from_raw(parse_column(read_file(path), column));
}

void emit_plot_files(const std::vector<double>& sorted_values,
                     const std::vector<std::int64_t>& counts,
                     std::int64_t n_total, const std::string& base) {
    constexpr int bins = 50;
    const double lo = sorted_values.front();
    const double hi = sorted_values.back();
    const double width = (hi - lo) / bins;
    std::vector<std::int64_t> hist(bins, 0);
    for (std::size_t i = 0; i < sorted_values.size(); ++i) {
        int b = width > 0 ? static_cast<int>((sorted_values[i] - lo) / width) : 0;
        if (b >= bins) b = bins - 1;
        hist[static_cast<std::size_t>(b)] += counts[i];
    }
    std::ostringstream h;
    h << "bin_center,count\n";
    for (int b = 0; b < bins; ++b) {
        h << fmt_double(lo + (b + 0.5) * width) << ',' << hist[static_cast<std::size_t>(b)]
          << '\n';
    }
    write_output(h.str(), base + ".hist.csv");

    std::ostringstream e;
    e << "x,cdf\n";
    std::int64_t cum = 0;
    for (std::size_t i = 0; i < sorted_values.size(); ++i) {
        cum += counts[i];
        e << fmt_double(sorted_values[i]) << ','
          << fmt_double(static_cast<double>(cum) / static_cast<double>(n_total))
          << '\n';
    }
    write_output(e.str(), base + ".ecdf.csv");
}

void emit_plot_dataset(const Dataset& d, const std::string& base) {
    emit_plot_files(d.values(), d.counts(), d.n_total(), base);
}

const char* verdict_name(Verdict v) {
    return v == Verdict::unimodal ? "unimodal" : "multimodal";
}

json report_to_json(const UuReport& rep, double alpha, const Dataset& d,
                    const std::optional<Umm>& model) {
    json doc;
    doc["verdict"] = verdict_name(rep.verdict);
    doc["alpha"] = alpha;
    doc["n"] = d.n_total();
    doc["s_points"] = rep.s_points;
    json segs = json::array();
    for (const SegmentEvidence& s : rep.segments) {
        segs.push_back({{"a", s.a}, {"b", s.b}, {"n", s.n}, {"ks_p", s.ks_p}});
    }
    doc["segments"] = segs;
    doc["cut_hints"] = rep.cut_hints;
    doc["recursion_depth"] = rep.recursion_depth;
    if (model) {
        doc["model"] = {{"breakpoints", model->breakpoints()},
                        {"weights", model->weights()}};
    }
    return doc;
}

std::string report_to_csv(const UuReport& rep, double alpha, const Dataset& d) {
    std::ostringstream out;
    out << "record,a,b,n,ks_p\n";
    out << "verdict," << verdict_name(rep.verdict) << ",,,\n";
    out << "alpha," << fmt_double(alpha) << ",,,\n";
    out << "n," << d.n_total() << ",,,\n";
    out << "recursion_depth," << rep.recursion_depth << ",,,\n";
    for (double s : rep.s_points) {
        out << "s_point," << fmt_double(s) << ",,,\n";
    }
    for (const SegmentEvidence& s : rep.segments) {
        out << "segment," << fmt_double(s.a) << ',' << fmt_double(s.b) << ',' << s.n
            << ',' << fmt_double(s.ks_p) << '\n';
    }
    for (double c : rep.cut_hints) {
        out << "cut_hint," << fmt_double(c) << ",,,\n";
    }
    return out.str();
}

struct CommonOpts {
    double alpha = 0.01;
    std::uint64_t seed = 1;
    int column = 0;
    std::string format = "json";
    std::string out_path;
    std::string plot_base;
};

int cmd_test(const std::string& input, const CommonOpts& opt, bool fit_model) {
    const Dataset d = load_dataset(input, opt.column);
    const UuReport rep = uu_test(d, opt.alpha);
    std::optional<Umm> model;
    if (rep.verdict == Verdict::unimodal) {
        model = Umm::fit(rep.s_points, d, opt.alpha);
    }
    if (!opt.plot_base.empty()) {
        emit_plot_dataset(d, opt.plot_base);
    }
    if (fit_model && model) {
        write_output(model->to_json(), opt.out_path);
    } else if (opt.format == "csv") {
        write_output(report_to_csv(rep, opt.alpha, d), opt.out_path);
    } else {
        write_output(report_to_json(rep, opt.alpha, d, model).dump(2), opt.out_path);
    }
    return rep.verdict == Verdict::unimodal ? 0 : 1;
}

int cmd_sample(const std::string& model_path, std::int64_t n, const CommonOpts& opt) {
    if (n <= 0) {
        throw std::runtime_error("invalid value: sample count must be positive");
    }
    const Umm model = Umm::from_json(read_file(model_path));
    const std::vector<double> draws =
        model.sample(static_cast<std::size_t>(n), opt.seed);
    std::ostringstream out;
    for (double v : draws) {
        out << fmt_double(v) << '\n';
    }
    write_output(out.str(), opt.out_path);
    if (!opt.plot_base.empty()) {
        emit_plot_dataset(Dataset::from_raw(draws), opt.plot_base);
    }
    return 0;
}

json split_node_to_json(const SplitNode& node) {
    json doc;
    doc["lo"] = node.lo;
    doc["hi"] = node.hi;
    doc["n"] = node.n;
    doc["verdict"] = verdict_name(node.verdict);
    if (node.unresolved) {
        doc["unresolved"] = true;
    }
    if (node.model) {
        doc["model"] = {{"breakpoints", node.model->breakpoints()},
                        {"weights", node.model->weights()}};
    }
    if (!node.is_leaf()) {
        doc["cut"] = node.cut;
        doc["left"] = split_node_to_json(*node.left);
        doc["right"] = split_node_to_json(*node.right);
    }
    return doc;
}

int cmd_split(const std::string& input, std::size_t max_leaves, const CommonOpts& opt) {
    const Dataset d = load_dataset(input, opt.column);
    const SplitTree tree = split_recursive(d, opt.alpha, max_leaves);
    json doc;
    doc["alpha"] = opt.alpha;
    doc["max_leaves"] = max_leaves;
    doc["leaf_count"] = tree.leaf_count;
    doc["unresolved_count"] = tree.unresolved_count;
    doc["root"] = split_node_to_json(*tree.root);
    write_output(doc.dump(2), opt.out_path);
    return 0;
}

int cmd_eval(const std::string& input, const std::vector<std::string>& model_paths,
             const std::string& train_path, const CommonOpts& opt) {
    const Dataset d = load_dataset(input, opt.column);
    const std::size_t n = static_cast<std::size_t>(d.n_total());

    struct Candidate {
        std::string name;
        double loglik = 0.0;
        std::vector<double> draws;
    };
    std::vector<Candidate> candidates;
    for (const std::string& path : model_paths) {
        const Umm model = Umm::from_json(read_file(path));
        candidates.push_back(
            {path, model.log_likelihood(d), model.sample(n, opt.seed)});
    }
    if (!train_path.empty()) {
        const Dataset train = load_dataset(train_path, opt.column);
        for (const BaselineModel& m : {fit_gaussian(train), fit_uniform(train)}) {
            const char* name =
                m.kind == BaselineModel::Kind::gaussian ? "gaussian" : "uniform";
            candidates.push_back({name, baseline_log_likelihood(m, d),
                                  baseline_sample(m, n, opt.seed)});
        }
    }
    if (candidates.empty()) {
        throw std::runtime_error("insufficient data: no models given");
    }

    std::vector<ModelScore> scores;
    std::vector<Dataset> samples;
    for (const Candidate& c : candidates) {
        samples.push_back(Dataset::from_raw(c.draws));
        scores.push_back({c.name, c.loglik, two_sample_ks(samples.back(), d)});
    }
    const ModelComparison cmp = rank_models(scores);

    json doc;
    doc["n"] = d.n_total();
    json rows = json::array();
    for (const ModelScore& s : cmp.scores) {
        rows.push_back({{"name", s.name},
                        {"log_likelihood", s.log_likelihood},
                        {"ks_distance", s.ks_distance}});
    }
    doc["models"] = rows;
    json pairwise = json::array();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < samples.size(); ++j) {
            row.push_back(i == j ? 0.0 : two_sample_ks(samples[i], samples[j]));
        }
        pairwise.push_back(row);
    }
    doc["pairwise_ks"] = pairwise;
    doc["winner_log_likelihood"] = cmp.scores[cmp.winner_log_likelihood].name;
    doc["winner_ks"] = cmp.scores[cmp.winner_ks].name;
    write_output(doc.dump(2), opt.out_path);
    return 0;
}

unsigned thread_budget(std::size_t tasks) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("UUTEST_THREADS")) {
        const unsigned cap = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::min<std::size_t>(n, tasks);
}

template <typename Fn>
void parallel_for(std::size_t tasks, Fn&& fn) {
    const unsigned workers = thread_budget(tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < tasks; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

int cmd_bench_decisions(const std::vector<SuiteRow>& rows, const std::string& label,
                        int reps, const CommonOpts& opt) {
    struct Cell {
        bool correct = false;
    };
    std::vector<Cell> cells(rows.size() * static_cast<std::size_t>(reps));
    parallel_for(cells.size(), [&](std::size_t task) {
        const std::size_t r = task / static_cast<std::size_t>(reps);
        const std::size_t rep = task % static_cast<std::size_t>(reps);
        const Dataset d = generate(rows[r].spec, mix_seed(opt.seed, r, rep));
        cells[task].correct = uu_test(d, opt.alpha).verdict == rows[r].expected;
    });

    json doc;
    doc["suite"] = label;
    doc["alpha"] = opt.alpha;
    doc["reps"] = reps;
    doc["seed"] = opt.seed;
    json out_rows = json::array();
    int total = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        int correct = 0;
        for (int k = 0; k < reps; ++k) {
            correct += cells[r * static_cast<std::size_t>(reps) +
                             static_cast<std::size_t>(k)]
                           .correct;
        }
        total += correct;
        out_rows.push_back({{"name", rows[r].name},
                            {"expected", verdict_name(rows[r].expected)},
                            {"correct", correct},
                            {"reps", reps},
                            {"accuracy", static_cast<double>(correct) / reps}});
    }
    doc["rows"] = out_rows;
    doc["total_correct"] = total;
    doc["total_runs"] = static_cast<int>(rows.size()) * reps;

    if (opt.format == "csv") {
        std::ostringstream out;
        out << "name,expected,correct,reps,accuracy\n";
        for (const auto& row : doc["rows"]) {
            out << row["name"].get<std::string>() << ','
                << row["expected"].get<std::string>() << ',' << row["correct"] << ','
                << row["reps"] << ',' << fmt_double(row["accuracy"].get<double>())
                << '\n';
        }
        write_output(out.str(), opt.out_path);
    } else {
        write_output(doc.dump(2), opt.out_path);
    }
    return 0;
}

int cmd_bench_models(int seeds, const CommonOpts& opt) {
    const std::vector<ModelSuiteRow> rows = modeling_suite();

    struct Cell {
        bool unimodal = false;
        double ll_umm = 0.0, ll_gauss = 0.0, ll_unif = 0.0;
        double ks_umm = 0.0, ks_gauss = 0.0, ks_unif = 0.0;
    };
    std::vector<Cell> cells(rows.size() * static_cast<std::size_t>(seeds));
    parallel_for(cells.size(), [&](std::size_t task) {
        const std::size_t r = task / static_cast<std::size_t>(seeds);
        const std::size_t s = task % static_cast<std::size_t>(seeds);
        const ModelSuiteRow& row = rows[r];
        Cell& cell = cells[task];

        const Dataset train = generate(row.spec.resized(row.n_train),
                                       mix_seed(opt.seed, r, 4 * s));
        const Dataset test = generate(row.spec.resized(row.n_test),
                                      mix_seed(opt.seed, r, 4 * s + 1));
        const UuReport rep = uu_test(train, opt.alpha);
        cell.unimodal = rep.verdict == Verdict::unimodal;
        if (!cell.unimodal) return;

        const Umm umm = Umm::fit(rep.s_points, train, opt.alpha);
        const BaselineModel gauss = fit_gaussian(train);
        const BaselineModel unif = fit_uniform(train);
        cell.ll_umm = umm.log_likelihood(test);
        cell.ll_gauss = baseline_log_likelihood(gauss, test);
        cell.ll_unif = baseline_log_likelihood(unif, test);

        const std::size_t m = static_cast<std::size_t>(row.n_test);
        const Dataset truth = generate(row.spec.resized(row.n_test),
                                       mix_seed(opt.seed, r, 4 * s + 2));
        const std::uint64_t draw_seed = mix_seed(opt.seed, r, 4 * s + 3);
        cell.ks_umm = two_sample_ks(Dataset::from_raw(umm.sample(m, draw_seed)), truth);
        cell.ks_gauss =
            two_sample_ks(Dataset::from_raw(baseline_sample(gauss, m, draw_seed)), truth);
        cell.ks_unif =
            two_sample_ks(Dataset::from_raw(baseline_sample(unif, m, draw_seed)), truth);
    });

    json doc;
    doc["suite"] = "models";
    doc["alpha"] = opt.alpha;
    doc["seeds"] = seeds;
    doc["seed"] = opt.seed;
    json out_rows = json::array();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        json per_seed = json::array();
        for (int s = 0; s < seeds; ++s) {
            const Cell& c =
                cells[r * static_cast<std::size_t>(seeds) + static_cast<std::size_t>(s)];
            json entry;
            entry["unimodal"] = c.unimodal;
            if (c.unimodal) {
                entry["log_likelihood"] = {
                    {"umm", c.ll_umm}, {"gaussian", c.ll_gauss}, {"uniform", c.ll_unif}};
                entry["ks_distance"] = {
                    {"umm", c.ks_umm}, {"gaussian", c.ks_gauss}, {"uniform", c.ks_unif}};
            }
            per_seed.push_back(entry);
        }
        out_rows.push_back({{"name", rows[r].name},
                            {"n_train", rows[r].n_train},
                            {"n_test", rows[r].n_test},
                            {"seeds", per_seed}});
    }
    doc["rows"] = out_rows;

    if (opt.format == "csv") {
        std::ostringstream out;
        out << "name,seed_index,unimodal,ll_umm,ll_gaussian,ll_uniform,"
               "ks_umm,ks_gaussian,ks_uniform\n";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (int s = 0; s < seeds; ++s) {
                const Cell& c = cells[r * static_cast<std::size_t>(seeds) +
                                      static_cast<std::size_t>(s)];
                out << rows[r].name << ',' << s << ',' << (c.unimodal ? 1 : 0) << ','
                    << fmt_double(c.ll_umm) << ',' << fmt_double(c.ll_gauss) << ','
                    << fmt_double(c.ll_unif) << ',' << fmt_double(c.ks_umm) << ','
                    << fmt_double(c.ks_gauss) << ',' << fmt_double(c.ks_unif) << '\n';
            }
        }
        write_output(out.str(), opt.out_path);
    } else {
        write_output(doc.dump(2), opt.out_path);
    }
    return 0;
}

std::vector<SuiteRow> load_custom_suite(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception&) {
        throw std::runtime_error("parse error in suite file");
    }
    std::vector<SuiteRow> rows;
    try {
        for (const auto& row : doc.at("rows")) {
            SuiteRow r;
            r.name = row.at("name").get<std::string>();
            r.spec = DistSpec::from_json(row.at("spec").dump());
            const auto expected = row.at("expected").get<std::string>();
            if (expected == "unimodal") {
                r.expected = Verdict::unimodal;
            } else if (expected == "multimodal") {
                r.expected = Verdict::multimodal;
            } else {
                throw std::runtime_error("invalid value in suite file");
            }
            rows.push_back(std::move(r));
        }
    } catch (const json::exception&) {
        throw std::runtime_error("invalid value in suite file");
    }
    if (rows.empty()) {
        throw std::runtime_error("invalid value in suite file");
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unimodality testing and uniform-mixture modeling"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::string input;
    std::string model_path;
    std::string train_path;
    std::vector<std::string> model_paths;
    std::string suite = "table2";
    std::int64_t sample_n = 0;
    std::size_t max_leaves = 64;
    int reps = 0;  // 0 = suite default (20 decision reps, 10 modeling seeds)

    auto add_common = [&opt](CLI::App* cmd, bool with_format = true) {
        cmd->add_option("--alpha", opt.alpha, "significance level")
            ->check(CLI::Range(1e-10, 0.999999));
        cmd->add_option("--seed", opt.seed, "random seed");
        cmd->add_option("--column", opt.column, "0-based input column");
        if (with_format) {
            cmd->add_option("--format", opt.format, "json or csv")
                ->check(CLI::IsMember({"json", "csv"}));
        }
        cmd->add_option("--out", opt.out_path, "report file (default stdout)");
    };

    CLI::App* test = app.add_subcommand("test", "decide unimodality of a data file");
    test->add_option("input", input, "data file")->required();
    add_common(test);
    test->add_option("--emit-plot", opt.plot_base, "write <base>.hist.csv and <base>.ecdf.csv");

    CLI::App* fit = app.add_subcommand("fit", "fit a uniform mixture to unimodal data");
    fit->add_option("input", input, "data file")->required();
    add_common(fit);
    fit->add_option("--emit-plot", opt.plot_base, "write plot csv files");

    CLI::App* sample = app.add_subcommand("sample", "draw from a fitted model");
    sample->add_option("model", model_path, "model document")->required();
    sample->add_option("-n,--count", sample_n, "number of draws")->required();
    add_common(sample, false);
    sample->add_option("--emit-plot", opt.plot_base, "write plot csv files");

    CLI::App* split = app.add_subcommand("split", "recursively split multimodal data");
    split->add_option("input", input, "data file")->required();
    split->add_option("--max-leaves", max_leaves, "leaf budget");
    add_common(split);

    CLI::App* eval = app.add_subcommand("eval", "score models against a data file");
    eval->add_option("input", input, "evaluation data file")->required();
    eval->add_option("models", model_paths, "model documents");
    eval->add_option("--train", train_path,
                     "training data for gaussian/uniform baselines");
    add_common(eval);

    CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
    bench->add_option("suite", suite, "table2, models, or a suite file")->required();
    bench->add_option("--reps", reps, "repetitions (or seeds) per row")
        ->check(CLI::PositiveNumber);
    add_common(bench);

    CLI11_PARSE(app, argc, argv);

    try {
        if (test->parsed()) {
            return cmd_test(input, opt, false);
        }
        if (fit->parsed()) {
            return cmd_test(input, opt, true);
        }
        if (sample->parsed()) {
            return cmd_sample(model_path, sample_n, opt);
        }
        if (split->parsed()) {
            return cmd_split(input, max_leaves, opt);
        }
        if (eval->parsed()) {
            return cmd_eval(input, model_paths, train_path, opt);
        }
        if (bench->parsed()) {
            if (suite == "models") {
                return cmd_bench_models(reps > 0 ? reps : 10, opt);
            }
            const int n_reps = reps > 0 ? reps : 20;
            if (suite == "table2") {
                return cmd_bench_decisions(decision_suite(), suite, n_reps, opt);
            }
            return cmd_bench_decisions(load_custom_suite(suite), suite, n_reps, opt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
