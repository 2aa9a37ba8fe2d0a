// glmkit command-line front end: reads a CSV dataset plus flags (or a flat
// key=value config file), runs fit / path / tune-cv / tune-ic, and writes a
// single JSON result document.

#include "glmkit/adaptive.hpp"
#include "glmkit/csv.hpp"
#include "glmkit/errors.hpp"
#include "glmkit/solver.hpp"
#include "glmkit/tuning.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace glmkit;

namespace {

struct Options {
    std::string subcommand;
    std::string config_path;
    std::string data_path;
    std::vector<std::string> response;
    std::string weight_column;
    std::string offset_column;
    std::string out_path;

    std::string loss = "least_squares";
    double huber_delta = 1.0;
    double quantile_level = 0.5;
    double quantile_smoothing = 0.0;
    int classes = 0; // 0 = infer from labels

    std::string penalty = "lasso";
    double pen_val = -1.0; // required for fit
    double mix = 0.5;
    std::string groups_path;
    std::string tikhonov_path;

    std::string flavor = "convex";
    double adaptive_exponent = 1.0;
    double scad_a = 3.7;
    double mcp_gamma = 3.0;
    int lla_steps = 5;

    int n_lambda = 100;
    double grid_eps = 1e-3;
    std::string grid_csv; // explicit comma-separated grid
    double ridge_eps_norm = 0.1;

    int cv_k = 5;
    std::string cv_rule = "1se";
    std::string criterion = "bic";
    double ebic_gamma = 0.5;
    std::uint64_t seed = 0;

    int max_iter = 2000;
    double rel_tol = 1e-8;

    bool no_standardize = false;
    bool no_intercept = false;
};

// exit codes: 0 ok, 1 runtime, 2 file I/O, 3 parse, 4 invalid configuration
enum ExitCode { kOk = 0, kRuntime = 1, kIo = 2, kParse = 3, kConfig = 4 };

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix file is empty: " + path);
    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw ParseError("ragged matrix file: " + path);
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
    return m;
}

LossSpec make_loss(const Options& opt, const Dataset& data) {
    LossSpec spec;
    spec.kind = loss_kind_from_name(opt.loss);
    spec.huber_knot = opt.huber_delta;
    spec.quantile_level = opt.quantile_level;
    spec.quantile_smoothing = opt.quantile_smoothing;
    if (spec.kind == LossKind::multinomial) {
        int k = opt.classes;
        if (k == 0) k = static_cast<int>(data.y.col(0).maxCoeff()) + 1;
        spec.class_count = k;
    }
    return spec;
}

PenaltySpec make_penalty(const Options& opt) {
    PenaltySpec spec;
    spec.kind = penalty_kind_from_name(opt.penalty);
    spec.mix = opt.mix;
    if (!opt.groups_path.empty()) spec.groups = read_groups(opt.groups_path);
    if (!opt.tikhonov_path.empty()) spec.tikhonov = read_matrix_file(opt.tikhonov_path);
    return spec;
}

TransformSpec transform_for(const PenaltySpec& pen) {
    TransformSpec t;
    switch (pen.kind) {
        case PenaltyKind::lasso: t.kind = TransformSpec::Kind::entrywise; break;
        case PenaltyKind::group_lasso:
            t.kind = TransformSpec::Kind::group;
            t.groups = pen.groups;
            break;
        case PenaltyKind::multi_task_lasso: t.kind = TransformSpec::Kind::multi_task_rows; break;
        case PenaltyKind::nuclear_norm: t.kind = TransformSpec::Kind::singular_values; break;
        case PenaltyKind::tv1: t.kind = TransformSpec::Kind::tv1_differences; break;
        default:
            throw InvalidInputError(
                "adaptive/scad/mcp flavors need an entrywise, group, multi-task, nuclear or "
                "tv1 penalty");
    }
    return t;
}

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

json coef_to_json(const Matrix& m) {
    if (m.cols() == 1) {
        json arr = json::array();
        for (Index i = 0; i < m.rows(); ++i) arr.push_back(m(i, 0));
        return arr;
    }
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json rowvec_to_json(const RowVector& v) {
    if (v.size() == 1) return v(0);
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Index entry_count_nonzero(const Matrix& m) {
    Index c = 0;
    for (Index i = 0; i < m.size(); ++i)
        if (m(i) != 0.0) ++c;
    return c;
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json echo_config(const Options& opt) {
    json c;
    c["subcommand"] = opt.subcommand;
    c["data"] = opt.data_path;
    c["response"] = opt.response;
    if (!opt.weight_column.empty()) c["weights"] = opt.weight_column;
    if (!opt.offset_column.empty()) c["offset"] = opt.offset_column;
    c["loss"] = opt.loss;
    if (opt.loss == "huber") c["huber_delta"] = opt.huber_delta;
    if (opt.loss == "quantile") {
        c["quantile_level"] = opt.quantile_level;
        c["quantile_smoothing"] = opt.quantile_smoothing;
    }
    if (opt.loss == "multinomial") c["classes"] = opt.classes;
    c["penalty"] = opt.penalty;
    if (opt.pen_val >= 0) c["pen_val"] = opt.pen_val;
    c["mix"] = opt.mix;
    if (!opt.groups_path.empty()) c["groups"] = opt.groups_path;
    if (!opt.tikhonov_path.empty()) c["tikhonov"] = opt.tikhonov_path;
    c["flavor"] = opt.flavor;
    if (opt.flavor == "adaptive") c["adaptive_exponent"] = opt.adaptive_exponent;
    if (opt.flavor == "scad") c["scad_a"] = opt.scad_a;
    if (opt.flavor == "mcp") c["mcp_gamma"] = opt.mcp_gamma;
    c["n_lambda"] = opt.n_lambda;
    c["grid_eps"] = opt.grid_eps;
    c["ridge_eps_norm"] = opt.ridge_eps_norm;
    c["cv_k"] = opt.cv_k;
    c["cv_rule"] = opt.cv_rule;
    c["criterion"] = opt.criterion;
    c["ebic_gamma"] = opt.ebic_gamma;
    c["seed"] = opt.seed;
    c["max_iter"] = opt.max_iter;
    c["rel_tol"] = opt.rel_tol;
    c["standardize"] = !opt.no_standardize;
    c["intercept"] = !opt.no_intercept;
    return c;
}

struct Pipeline {
    Options opt;
    Dataset raw;
    LossSpec loss;
    PenaltySpec penalty; // final penalty (adaptive weights folded in)
    SolverConfig cfg;
    bool intercept = true;
    bool standardized = true;
    Dataset work; // standardized (or raw) working data
    StandardizationState state;

    // two-stage pieces
    bool use_lla = false;
    ConcaveGenerator generator;
    TransformSpec tspec;
    Matrix init_raw; // initializer on the raw scale

    json result;
};

// map a raw-scale coefficient onto a standardized scale
Matrix to_scale(const Matrix& raw_coef, const StandardizationState& st) {
    return st.col_scales.asDiagonal() * raw_coef;
}

Vector build_grid(Pipeline& p) {
    if (!p.opt.grid_csv.empty()) {
        std::vector<double> vals;
        std::stringstream ss(p.opt.grid_csv);
        std::string cell;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        GridSpec gs;
        gs.user_grid.resize(static_cast<Index>(vals.size()));
        for (std::size_t i = 0; i < vals.size(); ++i)
            gs.user_grid(static_cast<Index>(i)) = vals[i];
        p.result["lambda_max"] = {{"value", gs.user_grid(0)}, {"exact", false},
                                  {"source", "user"}};
        return make_grid(1.0, gs);
    }
    PenaltySpec grid_pen = p.penalty;
    if (p.use_lla) {
        // weak bound from the convex envelope at unit weights
        grid_pen = weighted_penalty_for(p.tspec, Vector{});
    }
    const LambdaMax lm = lambda_max_auto(p.loss, grid_pen, p.work, p.intercept,
                                         p.opt.ridge_eps_norm);
    p.result["lambda_max"] = {{"value", lm.value}, {"exact", lm.exact}, {"source", "auto"}};
    GridSpec gs;
    gs.n_points = p.opt.n_lambda;
    gs.eps = p.opt.grid_eps;
    return make_grid(lm.value, gs);
}

// default initializer for the two-stage flavors: a cross-validated lasso on
// the raw data (coefficients returned on the raw scale)
Matrix default_init(Pipeline& p) {
    PenaltySpec l1;
    l1.kind = PenaltyKind::lasso;
    Dataset init_data = p.raw;
    StandardizationState st;
    Dataset fit_data = p.raw;
    if (!p.opt.no_standardize) {
        auto pair = standardize(p.raw);
        fit_data = pair.first;
        st = pair.second;
    }
    const LambdaMax lm = lambda_max_auto(p.loss, l1, fit_data, p.intercept, p.opt.ridge_eps_norm);
    GridSpec gs;
    gs.n_points = std::min(p.opt.n_lambda, 50);
    gs.eps = p.opt.grid_eps;
    const Vector grid = make_grid(lm.value, gs);
    const TunePath cv = cross_validate(p.loss, l1, fit_data, grid, p.opt.cv_k, p.opt.seed,
                                       CvMetric::heldout_loss, CvRule::min, p.cfg,
                                       !p.opt.no_standardize, p.intercept);
    Matrix coef = cv.selected_fit().coef;
    if (!p.opt.no_standardize)
        coef = unstandardize_coef(coef, cv.selected_fit().intercept, st).first;
    return coef;
}

std::vector<FitResult> lla_path(const Pipeline& p, const Dataset& data, const Vector& grid,
                                bool intercept, const Matrix& init_on_scale) {
    std::vector<FitResult> fits;
    fits.reserve(static_cast<std::size_t>(grid.size()));
    for (Index k = 0; k < grid.size(); ++k) {
        ConcaveGenerator gen = p.generator;
        gen.pen_val = grid(k);
        fits.push_back(lla(p.loss, gen, p.tspec, data, init_on_scale, p.cfg, p.opt.lla_steps,
                           intercept));
    }
    return fits;
}

json fit_block(const Pipeline& p, const FitResult& fr) {
    json out;
    Matrix coef_raw = fr.coef;
    RowVector inter_raw = fr.intercept;
    if (p.standardized) {
        auto pair = unstandardize_coef(fr.coef, fr.intercept, p.state);
        coef_raw = pair.first;
        inter_raw = pair.second;
    }
    out["coef"] = coef_to_json(coef_raw);
    if (inter_raw.size() > 0) out["intercept"] = rowvec_to_json(inter_raw);
    out["coef_standardized"] = coef_to_json(fr.coef);
    if (fr.intercept.size() > 0) out["intercept_standardized"] = rowvec_to_json(fr.intercept);
    out["objective"] = fr.objective;
    out["n_iter"] = fr.n_iter;
    out["converged"] = fr.converged;
    out["nnz"] = entry_count_nonzero(fr.coef);
    return out;
}

void run_pipeline(Pipeline& p) {
    p.result["schema_version"] = 1;
    p.result["timestamp"] = timestamp_now();
    p.result["config"] = echo_config(p.opt);

    // ingest
    const CsvTable table = read_csv(p.opt.data_path);
    p.raw = dataset_from_table(table, p.opt.response, p.opt.weight_column, p.opt.offset_column);
    p.loss = make_loss(p.opt, p.raw);
    check_response(p.loss, p.raw);
    p.intercept = !p.opt.no_intercept;
    p.penalty = make_penalty(p.opt);
    p.cfg.max_iter = p.opt.max_iter;
    p.cfg.rel_tol = p.opt.rel_tol;
    p.result["data"] = {{"n", p.raw.n()}, {"d", p.raw.d()}, {"responses", p.raw.y.cols()}};

    // two-stage setup: initializer before any cross-validation
    if (p.opt.flavor == "adaptive") {
        p.tspec = transform_for(p.penalty);
        p.init_raw = default_init(p);
        AdaptiveSpec aspec;
        aspec.exponent = p.opt.adaptive_exponent;
        aspec.perturbation = AdaptiveSpec::Perturbation::one_over_n;
        p.penalty.weights = adaptive_weights(aspec, p.tspec, p.init_raw, p.raw.n());
    } else if (p.opt.flavor == "scad" || p.opt.flavor == "mcp") {
        p.use_lla = true;
        p.tspec = transform_for(p.penalty);
        p.init_raw = default_init(p);
        p.generator.kind = p.opt.flavor == "scad" ? ConcaveGenerator::Kind::scad
                                                  : ConcaveGenerator::Kind::mcp;
        p.generator.shape = p.opt.flavor == "scad" ? p.opt.scad_a : p.opt.mcp_gamma;
    } else if (p.opt.flavor != "convex") {
        throw InvalidInputError("unknown flavor '" + p.opt.flavor + "'");
    }

    // standardize
    p.standardized = !p.opt.no_standardize;
    if (p.standardized) {
        auto pair = standardize(p.raw);
        p.work = std::move(pair.first);
        p.state = std::move(pair.second);
    } else {
        p.work = p.raw;
    }
    const Matrix init_work =
        p.use_lla ? (p.standardized ? to_scale(p.init_raw, p.state) : p.init_raw) : Matrix{};

    const PathFitter fitter = [&](const Dataset& data, const Vector& grid, bool inter,
                                  const StandardizationState* st) {
        if (p.use_lla) {
            // shared raw-scale initializer mapped onto the fold scale
            const Matrix init = st ? to_scale(p.init_raw, *st)
                                   : (p.standardized ? to_scale(p.init_raw, p.state) : p.init_raw);
            return lla_path(p, data, grid, inter, init);
        }
        return fit_path(p.loss, p.penalty, data, grid, p.cfg, inter).fits;
    };

    // subcommands
    if (p.opt.subcommand == "fit") {
        if (p.opt.pen_val < 0) throw InvalidInputError("fit needs --pen-val >= 0");
        FitResult fr;
        if (p.use_lla) {
            ConcaveGenerator gen = p.generator;
            gen.pen_val = p.opt.pen_val;
            fr = lla(p.loss, gen, p.tspec, p.work, init_work, p.cfg, p.opt.lla_steps,
                     p.intercept);
        } else {
            fr = fit(p.loss, p.penalty.with_pen_val(p.opt.pen_val), p.work, p.cfg, nullptr,
                     p.intercept);
        }
        p.result["fit"] = fit_block(p, fr);
        return;
    }

    const Vector grid = build_grid(p);
    p.result["grid"] = vector_to_json(grid);

    if (p.opt.subcommand == "path") {
        const auto fits = fitter(p.work, grid, p.intercept, nullptr);
        json path = json::array();
        for (Index k = 0; k < grid.size(); ++k) {
            json entry = fit_block(p, fits[static_cast<std::size_t>(k)]);
            entry["lambda"] = grid(k);
            path.push_back(entry);
        }
        p.result["path"] = path;
        return;
    }

    TunePath tuned;
    if (p.opt.subcommand == "tune-cv") {
        const CvRule rule = p.opt.cv_rule == "min" ? CvRule::min : CvRule::one_se;
        tuned = cross_validate_with(fitter, p.loss, p.work, grid, p.opt.cv_k, p.opt.seed, rule,
                                    p.standardized, p.intercept);
    } else if (p.opt.subcommand == "tune-ic") {
        TunePath path;
        path.grid = grid;
        path.fits = fitter(p.work, grid, p.intercept, nullptr);
        SelectionCriterion crit;
        if (p.opt.criterion == "aic") crit.kind = SelectionCriterion::Kind::aic;
        else if (p.opt.criterion == "bic") crit.kind = SelectionCriterion::Kind::bic;
        else if (p.opt.criterion == "ebic") crit.kind = SelectionCriterion::Kind::ebic;
        else throw InvalidInputError("unknown criterion '" + p.opt.criterion + "'");
        crit.ebic_gamma = p.opt.ebic_gamma;
        const PenaltySpec df_pen =
            p.use_lla ? weighted_penalty_for(p.tspec, Vector{}) : p.penalty;
        tuned = select_by_ic(path, crit, p.loss, df_pen, p.work, std::nullopt, p.intercept);
    } else {
        throw InvalidInputError("unknown subcommand '" + p.opt.subcommand + "'");
    }

    json metrics;
    for (const auto& [name, values] : tuned.metrics) metrics[name] = vector_to_json(values);
    p.result["metrics"] = metrics;
    json per_lambda = json::array();
    for (Index k = 0; k < grid.size(); ++k) {
        const auto& fr = tuned.fits[static_cast<std::size_t>(k)];
        per_lambda.push_back({{"lambda", grid(k)},
                              {"objective", fr.objective},
                              {"n_iter", fr.n_iter},
                              {"converged", fr.converged},
                              {"nnz", entry_count_nonzero(fr.coef)}});
    }
    p.result["path"] = per_lambda;
    p.result["selected"] = {{"index", tuned.selected_index},
                            {"lambda", tuned.selected_lambda()},
                            {"rule", tuned.selection_rule}};
    p.result["fit"] = fit_block(p, tuned.selected_fit());
}

void add_common_options(CLI::App* sub, Options& opt) {
    sub->add_option("--data", opt.data_path, "input CSV (header row required)");
    sub->add_option("--response", opt.response,
                    "response column name(s); repeat or comma-separate for multi-response")
        ->delimiter(',');
    sub->add_option("--weights", opt.weight_column, "sample-weight column name");
    sub->add_option("--offset", opt.offset_column, "offset column name");
    sub->add_option("--out", opt.out_path, "output JSON path (default stdout)");

    sub->add_option("--loss", opt.loss,
                    "least_squares|logistic|multinomial|poisson|huber|quantile|squared_hinge");
    sub->add_option("--huber-delta", opt.huber_delta, "huber knot");
    sub->add_option("--quantile-level", opt.quantile_level, "pinball level in (0,1)");
    sub->add_option("--quantile-smoothing", opt.quantile_smoothing,
                    "smoothing bandwidth (0 = exact, unsupported by the solver)");
    sub->add_option("--classes", opt.classes, "multinomial class count (0 = infer)");

    sub->add_option("--penalty", opt.penalty,
                    "lasso|ridge|generalized_ridge|group_lasso|multi_task_lasso|tv1|"
                    "nuclear_norm|elastic_net|sparse_group_lasso|sparse_fused_lasso");
    sub->add_option("--pen-val", opt.pen_val, "penalty value (fit subcommand)");
    sub->add_option("--mix", opt.mix, "l1 proportion for elastic_net / sparse_* penalties");
    sub->add_option("--groups", opt.groups_path,
                    "groups file: one line per group, comma-separated zero-based indices");
    sub->add_option("--tikhonov", opt.tikhonov_path, "generalized-ridge operator (CSV, no header)");

    sub->add_option("--flavor", opt.flavor, "convex|adaptive|scad|mcp");
    sub->add_option("--adaptive-exponent", opt.adaptive_exponent, "adaptive weight exponent");
    sub->add_option("--scad-a", opt.scad_a, "SCAD shape (> 2)");
    sub->add_option("--mcp-gamma", opt.mcp_gamma, "MCP shape (> 1)");
    sub->add_option("--lla-steps", opt.lla_steps, "max LLA steps");

    sub->add_option("--n-lambda", opt.n_lambda, "grid size");
    sub->add_option("--grid-eps", opt.grid_eps, "grid floor as a fraction of lambda_max");
    sub->add_option("--grid", opt.grid_csv, "explicit comma-separated descending grid");
    sub->add_option("--ridge-eps-norm", opt.ridge_eps_norm, "ridge lambda_max norm target");

    sub->add_option("--cv-k", opt.cv_k, "cross-validation folds");
    sub->add_option("--cv-rule", opt.cv_rule, "min|1se");
    sub->add_option("--criterion", opt.criterion, "aic|bic|ebic");
    sub->add_option("--ebic-gamma", opt.ebic_gamma, "EBIC gamma in [0,1]");
    sub->add_option("--seed", opt.seed, "fold shuffle seed");

    sub->add_option("--max-iter", opt.max_iter, "solver iteration cap");
    sub->add_option("--rel-tol", opt.rel_tol, "solver relative tolerance");

    sub->add_flag("--no-standardize", opt.no_standardize, "skip centering/scaling");
    sub->add_flag("--no-intercept", opt.no_intercept, "fit without an intercept");

    sub->add_option("--config", opt.config_path, "flat key=value config file (flags override)");
}

// Apply config-file values to options the command line left untouched.
void merge_config_file(CLI::App* sub, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config file line " + std::to_string(lineno) +
                             ": expected key=value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        CLI::Option* o = sub->get_option_no_throw("--" + key);
        if (!o)
            throw ParseError("config file line " + std::to_string(lineno) + ": unknown key '" +
                             key + "'");
        if (o->count() > 0) continue; // command line wins
        if (o->get_expected_min() == 0) {
            // flag: truthy values set it
            if (value == "true" || value == "1" || value == "yes") o->add_result("true");
        } else {
            o->add_result(value);
        }
        o->run_callback();
    }
}

void emit_error(const char* code, const std::string& message) {
    json err;
    err["schema_version"] = 1;
    err["error"] = {{"code", code}, {"message", message}};
    std::cout << err.dump(2) << std::endl;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"penalized GLM estimation: losses x penalties/constraints, FISTA path "
                 "solver, adaptive/LLA flavors, CV and information-criterion tuning"};
    app.require_subcommand(1);
    for (const auto& name : {"fit", "path", "tune-cv", "tune-ic"})
        add_common_options(app.add_subcommand(name), opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        emit_error("config", e.what());
        return kConfig;
    }

    Pipeline p;
    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!opt.config_path.empty()) merge_config_file(sub, opt.config_path);
        if (opt.data_path.empty()) throw InvalidInputError("--data is required");
        if (opt.response.empty()) throw InvalidInputError("--response is required");
        p.opt = opt;
        p.opt.subcommand = sub->get_name();
        run_pipeline(p);
    } catch (const IoError& e) {
        emit_error("io", e.what());
        return kIo;
    } catch (const ParseError& e) {
        emit_error("parse", e.what());
        return kParse;
    } catch (const InvalidInputError& e) {
        emit_error("config", e.what());
        return kConfig;
    } catch (const UnsupportedError& e) {
        emit_error("config", e.what());
        return kConfig;
    } catch (const std::exception& e) {
        emit_error("runtime", e.what());
        return kRuntime;
    }

    const std::string payload = p.result.dump(2);
    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path);
        if (!out) {
            emit_error("io", "cannot write '" + opt.out_path + "'");
            return kIo;
        }
        out << payload << "\n";
    } else {
        std::cout << payload << std::endl;
    }
    return kOk;
}
