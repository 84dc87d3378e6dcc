#include "rebalance/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "rebalance/classification.hpp"
#include "rebalance/parallel.hpp"
#include "rebalance/regression.hpp"
#include "rebalance/synthgen.hpp"

namespace rebalance::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t default_seed = 1234;

struct Options {
    std::string in;
    std::string out;
    std::string target;
    std::string report;
    std::string schema;
    std::uint64_t seed = default_seed;

    std::string dist = "euclidean";
    double p = 2.0;
    std::string c_perc = "balance";
    std::size_t k = 3;
    double pert = 0.1;
    std::string cl;
    std::string rem = "both";
    std::string start = "cnn";
    std::string scan = "focus";
    bool repl = false;

    double thr_rel = 0.5;
    std::string rel = "auto:both";
    std::string rel_points;
    double u = 0.0;
    double o = 0.0;

    std::string gen_kind;
    std::size_t n = 1000;
};

struct Command {
    CLI::App* app = nullptr;
    std::function<json(const Dataset&, const Options&, const CLI::App&, StrategyOutcome&)> run;
};

std::optional<Schema> parse_schema(const std::string& text) {
    if (text.empty()) return std::nullopt;
    Schema schema;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.rfind('=');
        if (eq == std::string::npos) {
            throw UsageError("schema entry '" + item + "' should look like name=numeric or name=nominal");
        }
        const auto kind = item.substr(eq + 1);
        if (kind == "numeric") {
            schema[item.substr(0, eq)] = ColumnKind::Numeric;
        } else if (kind == "nominal") {
            schema[item.substr(0, eq)] = ColumnKind::Nominal;
        } else {
            throw UsageError("schema kind must be numeric or nominal, not '" + kind + "'");
        }
    }
    return schema;
}

Metric metric_of(const Options& o, const CLI::App& app) {
    const bool has_p = app.count("--p") > 0;
    return Metric::parse(o.dist, has_p ? std::optional<double>(o.p) : std::nullopt);
}

ClassSelector selector_of(const std::string& text, ClassSelector fallback) {
    return text.empty() ? fallback : ClassSelector::parse(text);
}

json counts_json(const ClassCounts& counts) {
    json j = json::object();
    for (const auto& [label, n] : counts) j[label] = n;
    return j;
}

json classification_report(const Dataset& before, const StrategyOutcome& outcome) {
    ClassCounts after;
    for (const auto& [label, n] : class_counts(before)) after[label] = 0;
    for (const auto& [label, n] : class_counts(outcome.data)) after[label] = n;
    json j;
    j["before"] = counts_json(class_counts(before));
    j["after"] = counts_json(after);
    return j;
}

RelevanceFunction relevance_of(const Dataset& ds, const Options& o) {
    if (ds.has_nominal_target()) {
        throw DataError("regression strategies need a numeric target; '" + ds.target_name() + "' is nominal");
    }
    if (!o.rel_points.empty()) {
        std::ifstream in(o.rel_points);
        if (!in) {
            throw DataError("cannot open relevance points file '" + o.rel_points + "'");
        }
        std::vector<ControlPoint> points;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::vector<std::optional<double>> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) cells.push_back(parse_number(cell));
            const bool numeric = cells.size() == 3 && std::all_of(cells.begin(), cells.end(), [](auto& c) { return c.has_value(); });
            if (!numeric) {
                if (line_no == 1 && points.empty()) continue; // header
                throw DataError("relevance points line " + std::to_string(line_no) + " should hold y,phi,dphi");
            }
            points.push_back({*cells[0], *cells[1], *cells[2]});
        }
        return RelevanceFunction::from_points(std::move(points));
    }
    std::string_view spec = o.rel;
    if (spec.substr(0, 4) != "auto") {
        throw UsageError("--rel must be auto, auto:high, auto:low or auto:both");
    }
    ExtremeType type = ExtremeType::Both;
    if (spec.size() > 4) {
        if (spec[4] != ':') throw UsageError("--rel must be auto, auto:high, auto:low or auto:both");
        try {
            type = parse_extreme_type(spec.substr(5));
        } catch (const DataError& e) {
            throw UsageError(e.what());
        }
    }
    return RelevanceFunction::from_extremes(ds.target_values(), type);
}

json relevance_json(const RelevanceFunction& fn) {
    json pts = json::array();
    for (const auto& p : fn.points()) pts.push_back({{"y", p.y}, {"phi", p.phi}, {"dphi", p.dphi}});
    return pts;
}

json regression_report(const RegressOutcome& r) {
    json bumps = json::array();
    for (std::size_t b = 0; b < r.bumps.size(); ++b) {
        const auto& bump = r.bumps[b];
        bumps.push_back({{"kind", bump.kind == BumpKind::Rare ? "rare" : "normal"},
                         {"lo", bump.lo},
                         {"hi", bump.hi},
                         {"before", bump.rows.size()},
                         {"after", r.after[b]}});
    }
    return bumps;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rebalance imbalanced tabular datasets for classification and regression", "rebalance"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    Options o;
    std::vector<Command> commands;
    commands.reserve(16);

    auto io = [&](CLI::App* sub) {
        sub->add_option("--in", o.in, "Input CSV file")->required();
        sub->add_option("--out", o.out, "Output CSV file")->required();
        sub->add_option("--target", o.target, "Target column name")->required();
        sub->add_option("--report", o.report, "Write a JSON report to this file");
        sub->add_option("--schema", o.schema, "Column kinds, e.g. \"X1=numeric,X2=nominal\"");
        sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    };
    auto metric_opts = [&](CLI::App* sub) {
        sub->add_option("--dist", o.dist, "euclidean, manhattan, p-norm, chebyshev, canberra, overlap, heom or hvdm")
            ->capture_default_str();
        sub->add_option("--p", o.p, "Exponent of the p-norm distance");
    };
    auto relevance_opts = [&](CLI::App* sub) {
        sub->add_option("--rel", o.rel, "auto[:high|low|both]: relevance from the target boxplot")->capture_default_str();
        sub->add_option("--rel-points", o.rel_points, "CSV file of y,phi,dphi control points");
        sub->add_option("--thr-rel", o.thr_rel, "Relevance threshold")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    };
    auto add = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        io(sub);
        commands.push_back({sub, {}});
        return &commands.back();
    };

    // Defaults differ between strategies; each callback fills in what the user left unset.
    auto k_or = [](const CLI::App& a, const Options& opt, std::size_t fallback) { return a.count("--k") ? opt.k : fallback; };
    auto repl_or = [](const CLI::App& a, const Options& opt, bool fallback) { return a.count("--repl") ? opt.repl : fallback; };

    {
        auto* c = add("randunder", "Random under-sampling");
        c->app->add_option("--c-perc", o.c_perc, "balance, extreme or label=perc,...")->capture_default_str();
        c->app->add_option("--repl", o.repl, "Sample with replacement");
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const bool repl = repl_or(a, opt, false);
            res = rand_under(ds, ClassPercSpec::parse(opt.c_perc), repl, opt.seed);
            json j = classification_report(ds, res);
            j["parameters"] = {{"c_perc", opt.c_perc}, {"repl", repl}};
            return j;
        };
    }
    {
        auto* c = add("randover", "Random over-sampling");
        c->app->add_option("--c-perc", o.c_perc, "balance, extreme or label=perc,...")->capture_default_str();
        c->app->add_option("--repl", o.repl, "Sample with replacement (default true)");
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const bool repl = repl_or(a, opt, true);
            res = rand_over(ds, ClassPercSpec::parse(opt.c_perc), repl, opt.seed);
            json j = classification_report(ds, res);
            j["parameters"] = {{"c_perc", opt.c_perc}, {"repl", repl}};
            return j;
        };
    }
    {
        auto* c = add("impsamp", "Importance sampling by class");
        c->app->add_option("--c-perc", o.c_perc, "balance, extreme or label=perc,...")->capture_default_str();
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App&, StrategyOutcome& res) {
            res = imp_samp(ds, ClassPercSpec::parse(opt.c_perc), opt.seed);
            json j = classification_report(ds, res);
            j["parameters"] = {{"c_perc", opt.c_perc}};
            return j;
        };
    }
    {
        auto* c = add("tomek", "Remove Tomek links");
        metric_opts(c->app);
        c->app->add_option("--cl", o.cl, "all or label,label,... (default all)");
        c->app->add_option("--rem", o.rem, "both or maj")->capture_default_str()->check(CLI::IsMember({"both", "maj"}));
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const auto metric = metric_of(opt, a);
            res = tomek(ds, metric, selector_of(opt.cl, ClassSelector::all()),
                        opt.rem == "maj" ? TomekRemove::Majority : TomekRemove::Both);
            json j = classification_report(ds, res);
            j["parameters"] = {{"dist", metric.name()}, {"cl", opt.cl.empty() ? "all" : opt.cl}, {"rem", opt.rem}};
            return j;
        };
    }
    {
        auto* c = add("cnn", "Condensed nearest neighbor");
        metric_opts(c->app);
        c->app->add_option("--cl", o.cl, "smaller or label,label,... (default smaller)");
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const auto metric = metric_of(opt, a);
            auto r = cnn(ds, metric, selector_of(opt.cl, ClassSelector::smaller()), opt.seed);
            res = std::move(r.outcome);
            json j = classification_report(ds, res);
            j["parameters"] = {{"dist", metric.name()}, {"cl", opt.cl.empty() ? "smaller" : opt.cl}};
            j["important"] = r.important;
            j["unimportant"] = r.unimportant;
            return j;
        };
    }
    {
        auto* c = add("oss", "One-sided selection");
        metric_opts(c->app);
        c->app->add_option("--cl", o.cl, "smaller or label,label,... (default smaller)");
        c->app->add_option("--start", o.start, "cnn or tomek")->capture_default_str()->check(CLI::IsMember({"cnn", "tomek"}));
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const auto metric = metric_of(opt, a);
            res = oss(ds, metric, selector_of(opt.cl, ClassSelector::smaller()),
                      opt.start == "tomek" ? OssStart::Tomek : OssStart::CNN, opt.seed);
            json j = classification_report(ds, res);
            j["parameters"] = {{"dist", metric.name()}, {"cl", opt.cl.empty() ? "smaller" : opt.cl}, {"start", opt.start}};
            return j;
        };
    }
    {
        auto* c = add("enn", "Edited nearest neighbor");
        metric_opts(c->app);
        c->app->add_option("--k", o.k, "Number of neighbors (default 3)");
        c->app->add_option("--cl", o.cl, "all or label,label,... (default all)");
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const auto metric = metric_of(opt, a);
            const auto k = k_or(a, opt, 3);
            res = enn(ds, metric, k, selector_of(opt.cl, ClassSelector::all()), opt.seed);
            json j = classification_report(ds, res);
            j["parameters"] = {{"dist", metric.name()}, {"k", k}, {"cl", opt.cl.empty() ? "all" : opt.cl}};
            return j;
        };
    }
    {
        auto* c = add("ncl", "Neighborhood cleaning rule");
        metric_opts(c->app);
        c->app->add_option("--k", o.k, "Number of neighbors (default 3)");
        c->app->add_option("--cl", o.cl, "smaller or label,label,... (default smaller)");
        c->app->add_option("--ncl-scan", o.scan, "focus: scan neighbors of focus-class rows; own: scan other rows' own neighbors")
            ->capture_default_str()
            ->check(CLI::IsMember({"focus", "own"}));
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const auto metric = metric_of(opt, a);
            const auto k = k_or(a, opt, 3);
            res = ncl(ds, metric, k, selector_of(opt.cl, ClassSelector::smaller()), opt.seed,
                      opt.scan == "own" ? NclScan::OwnNeighbors : NclScan::FocusNeighbors);
            json j = classification_report(ds, res);
            j["parameters"] = {{"dist", metric.name()}, {"k", k}, {"cl", opt.cl.empty() ? "smaller" : opt.cl}, {"ncl_scan", opt.scan}};
            return j;
        };
    }
    {
        auto* c = add("gaussnoise", "Gaussian noise over-sampling with random under-sampling");
        c->app->add_option("--c-perc", o.c_perc, "balance, extreme or label=perc,...")->capture_default_str();
        c->app->add_option("--pert", o.pert, "Noise as a fraction of the class standard deviation")->capture_default_str();
        c->app->add_option("--repl", o.repl, "Under-sample with replacement");
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const bool repl = repl_or(a, opt, false);
            res = gauss_noise(ds, ClassPercSpec::parse(opt.c_perc), opt.pert, repl, opt.seed);
            json j = classification_report(ds, res);
            j["parameters"] = {{"c_perc", opt.c_perc}, {"pert", opt.pert}, {"repl", repl}};
            return j;
        };
    }
    {
        auto* c = add("smote", "SMOTE over-sampling with random under-sampling");
        metric_opts(c->app);
        c->app->add_option("--c-perc", o.c_perc, "balance, extreme or label=perc,...")->capture_default_str();
        c->app->add_option("--k", o.k, "Number of neighbors (default 5)");
        c->app->add_option("--repl", o.repl, "Under-sample with replacement");
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const auto metric = metric_of(opt, a);
            const auto k = k_or(a, opt, 5);
            const bool repl = repl_or(a, opt, false);
            res = smote(ds, ClassPercSpec::parse(opt.c_perc), k, metric, repl, opt.seed);
            json j = classification_report(ds, res);
            j["parameters"] = {{"c_perc", opt.c_perc}, {"k", k}, {"dist", metric.name()}, {"repl", repl}};
            return j;
        };
    }

    // regression twins
    auto regress_report = [](const RegressOutcome& r, const RelevanceFunction& fn, json params) {
        json j;
        j["relevance"] = relevance_json(fn);
        j["bumps"] = regression_report(r);
        j["parameters"] = std::move(params);
        return j;
    };
    {
        auto* c = add("randunder-r", "Random under-sampling of Normal bumps");
        relevance_opts(c->app);
        c->app->add_option("--c-perc", o.c_perc, "balance, extreme or p1,p2,... per Normal bump")->capture_default_str();
        c->app->add_option("--repl", o.repl, "Sample with replacement");
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const auto fn = relevance_of(ds, opt);
            const bool repl = repl_or(a, opt, false);
            auto r = rand_under_r(ds, fn, opt.thr_rel, BumpPercSpec::parse(opt.c_perc), repl, opt.seed);
            res = r.outcome;
            return regress_report(r, fn, {{"thr_rel", opt.thr_rel}, {"c_perc", opt.c_perc}, {"repl", repl}});
        };
    }
    {
        auto* c = add("randover-r", "Random over-sampling of Rare bumps");
        relevance_opts(c->app);
        c->app->add_option("--c-perc", o.c_perc, "balance, extreme or p1,p2,... per Rare bump")->capture_default_str();
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App&, StrategyOutcome& res) {
            const auto fn = relevance_of(ds, opt);
            auto r = rand_over_r(ds, fn, opt.thr_rel, BumpPercSpec::parse(opt.c_perc), opt.seed);
            res = r.outcome;
            return regress_report(r, fn, {{"thr_rel", opt.thr_rel}, {"c_perc", opt.c_perc}});
        };
    }
    {
        auto* c = add("gaussnoise-r", "Gaussian noise resampling of every bump");
        relevance_opts(c->app);
        c->app->add_option("--c-perc", o.c_perc, "balance, extreme or p1,p2,... per bump")->capture_default_str();
        c->app->add_option("--pert", o.pert, "Noise as a fraction of the bump standard deviation")->capture_default_str();
        c->app->add_option("--repl", o.repl, "Under-sample with replacement");
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const auto fn = relevance_of(ds, opt);
            const bool repl = repl_or(a, opt, false);
            auto r = gauss_noise_r(ds, fn, opt.thr_rel, BumpPercSpec::parse(opt.c_perc), opt.pert, repl, opt.seed);
            res = r.outcome;
            return regress_report(r, fn,
                                  {{"thr_rel", opt.thr_rel}, {"c_perc", opt.c_perc}, {"pert", opt.pert}, {"repl", repl}});
        };
    }
    {
        auto* c = add("smote-r", "SmoteR resampling of every bump");
        relevance_opts(c->app);
        metric_opts(c->app);
        c->app->add_option("--c-perc", o.c_perc, "balance, extreme or p1,p2,... per bump")->capture_default_str();
        c->app->add_option("--k", o.k, "Number of neighbors (default 5)");
        c->app->add_option("--repl", o.repl, "Under-sample with replacement");
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const auto fn = relevance_of(ds, opt);
            const auto metric = metric_of(opt, a);
            const auto k = k_or(a, opt, 5);
            const bool repl = repl_or(a, opt, false);
            auto r = smoter(ds, fn, opt.thr_rel, BumpPercSpec::parse(opt.c_perc), k, metric, repl, opt.seed);
            res = r.outcome;
            return regress_report(r, fn,
                                  {{"thr_rel", opt.thr_rel},
                                   {"c_perc", opt.c_perc},
                                   {"k", k},
                                   {"dist", metric.name()},
                                   {"repl", repl}});
        };
    }
    {
        auto* c = add("impsamp-r", "Relevance-weighted importance sampling");
        relevance_opts(c->app);
        c->app->add_option("--c-perc", o.c_perc, "balance, extreme or p1,p2,... per bump")->capture_default_str();
        c->app->add_option("--u", o.u, "Removal intensity in [0,1]; selects the threshold-free mode")->check(CLI::Range(0.0, 1.0));
        c->app->add_option("--o", o.o, "Replication intensity in [0,1]; selects the threshold-free mode")->check(CLI::Range(0.0, 1.0));
        c->run = [&](const Dataset& ds, const Options& opt, const CLI::App& a, StrategyOutcome& res) {
            const auto fn = relevance_of(ds, opt);
            const bool intensities = a.count("--u") > 0 || a.count("--o") > 0;
            if (intensities && (a.count("--thr-rel") > 0 || a.count("--c-perc") > 0)) {
                throw UsageError("--u/--o cannot be combined with --thr-rel or --c-perc");
            }
            const auto params = intensities ? ImpSampParams::intensities(opt.u, opt.o)
                                            : ImpSampParams::bumps(opt.thr_rel, BumpPercSpec::parse(opt.c_perc));
            auto r = imp_samp_r(ds, fn, params, opt.seed);
            res = r.outcome;
            json p = intensities ? json{{"u", opt.u}, {"o", opt.o}} : json{{"thr_rel", opt.thr_rel}, {"c_perc", opt.c_perc}};
            return regress_report(r, fn, std::move(p));
        };
    }

    CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic dataset (imbc or imbr)");
    gen->add_option("kind", o.gen_kind, "imbc or imbr")->required()->check(CLI::IsMember({"imbc", "imbr"}));
    gen->add_option("--out", o.out, "Output CSV file")->required();
    gen->add_option("--n", o.n, "Number of rows")->capture_default_str();
    gen->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    gen->add_option("--report", o.report, "Write a JSON report to this file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    if (const char* env = std::getenv("REBALANCE_THREADS")) {
        auto v = parse_number(env);
        if (!v || *v < 0 || *v != std::floor(*v)) {
            err << "error: REBALANCE_THREADS must be a non-negative integer\n";
            return 2;
        }
        set_thread_limit(static_cast<unsigned>(*v));
    }

    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count(); };

    try {
        json report;
        if (gen->parsed()) {
            const GenParams params{o.n, o.seed};
            Dataset ds = o.gen_kind == "imbc" ? gen_imbc(params) : gen_imbr(params);
            write_dataset(ds, o.out);
            report["command"] = "gen " + o.gen_kind;
            report["seed"] = o.seed;
            report["rows"] = ds.n_rows();
            if (ds.has_nominal_target()) report["counts"] = counts_json(class_counts(ds));
        } else {
            const auto it = std::find_if(commands.begin(), commands.end(), [](const Command& c) { return c.app->parsed(); });
            const Options& opt = o;
            Dataset ds = read_dataset(opt.in, opt.target, parse_schema(opt.schema));
            StrategyOutcome res;
            json details = it->run(ds, opt, *it->app, res);
            write_dataset(res.data, opt.out);
            for (const auto& w : res.warnings) err << w << '\n';

            report["strategy"] = it->app->get_name();
            report["seed"] = opt.seed;
            report["input"] = opt.in;
            report["output"] = opt.out;
            report["target"] = opt.target;
            report["parameters"] = details["parameters"];
            report["rows_before"] = ds.n_rows();
            report["rows_after"] = res.data.n_rows();
            report["removed"] = res.removed.size();
            report["added"] = res.added.size();
            for (auto& [key, value] : details.items()) {
                if (key != "parameters") report[key] = value;
            }
            report["warnings"] = res.warnings;
        }
        report["wall_time"] = elapsed();
        if (!o.report.empty()) {
            std::ofstream rf(o.report, std::ios::binary | std::ios::trunc);
            if (!rf) throw DataError("cannot write report '" + o.report + "'");
            rf << report.dump(2) << '\n';
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace rebalance::cli
