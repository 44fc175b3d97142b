#include "aetf/cli/app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aetf/capacity.hpp"
#include "aetf/cli/config.hpp"
#include "aetf/cli/csv.hpp"
#include "aetf/cli/records.hpp"
#include "aetf/cli/sweep.hpp"
#include "aetf/frames.hpp"
#include "aetf/gds_search.hpp"
#include "aetf/theory.hpp"
#include "aetf/version.hpp"

namespace aetf::cli {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string flag_name(const std::string& key) {
    std::string name = "--";
    for (char ch : key) name += ch == '_' ? '-' : ch;
    return name;
}

// Turns a --config file into synthetic --key=value tokens injected right
// after the subcommand name. Keys already present on the command line are
// skipped, so explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string config_path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw std::runtime_error("--config requires a path");
            config_path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (config_path.empty()) return args;
    const auto values = parse_config_file(config_path);
    std::set<std::string> given;
    for (const auto& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));
    std::vector<std::string> tokens;
    for (const auto& [key, value] : values) {
        const std::string flag = flag_name(key);
        if (given.count(flag)) continue;
        tokens.push_back(flag + "=" + value);
    }
    const auto at = args.begin() + (args.empty() ? 0 : 1);
    args.insert(at, tokens.begin(), tokens.end());
    return args;
}

const char* frame_class_name(FrameClass c) {
    switch (c) {
        case FrameClass::exact_etf: return "exact-etf";
        case FrameClass::exact_aetf: return "exact-aetf";
        default: return "approximate";
    }
}

std::string join_indices(const std::vector<int>& indices) {
    std::string text;
    for (size_t i = 0; i < indices.size(); ++i) {
        if (i) text += ',';
        text += std::to_string(indices[i]);
    }
    return text;
}

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << content;
    else
        write_file_atomic(out_path, content);
}

struct FrameSourceOpts {
    std::string gds_path;
    std::string indices_text;
    bool iid = false;
    int n_users = 0;
    int m_rows = 0;
    uint64_t frame_seed = 0;
};

void add_frame_source(CLI::App* cmd, FrameSourceOpts& opts, bool allow_iid) {
    cmd->add_option("--gds", opts.gds_path, "GDS cache holding the row set (with --n, --m)");
    cmd->add_option("--indices", opts.indices_text, "inline comma-separated Hadamard row indices");
    if (allow_iid) cmd->add_flag("--iid", opts.iid, "random bipolar frame instead of a row set");
    cmd->add_option("--n", opts.n_users, "number of users N")->required();
    cmd->add_option("--m", opts.m_rows, "number of rows M (for --gds and --iid)");
}

// Builds the index set behind a frame source; null for --iid.
std::optional<IndexSet> resolve_index_set(const FrameSourceOpts& opts, std::ostream& err) {
    if (opts.iid) return std::nullopt;
    if (!opts.indices_text.empty()) {
        const std::vector<int> indices = parse_int_list(opts.indices_text);
        return IndexSet(FrameShape(opts.n_users, static_cast<int>(indices.size())), indices);
    }
    const std::string path = opts.gds_path.empty() ? default_cache_path() : opts.gds_path;
    if (opts.m_rows < 1) throw std::runtime_error("--gds needs --m to select a record");
    const auto records = load_cache(path);
    const auto best = find_best(records, opts.n_users, opts.m_rows);
    if (!best) {
        err << "no cached set for N=" << opts.n_users << " M=" << opts.m_rows << " in " << path
            << "\n";
        return std::nullopt;
    }
    return best->to_index_set();
}

int cmd_search_gds(int n, int m, const ga::GaConfig& cfg, const std::string& cache,
                   std::ostream& out) {
    const FrameShape shape(n, m);
    const ga::GaResult result = ga::run_ga(shape, cfg);
    const GdsRecord rec = make_record(shape, result, cfg);
    const std::string path = cache.empty() ? default_cache_path() : cache;
    append_record(path, rec);
    out << "n=" << n << " m=" << m << " n_plus=" << shape.n_plus << "\n"
        << "indices=" << join_indices(rec.indices) << "\n"
        << "fitness=" << format_double(rec.fitness) << "\n"
        << "residual_at_n_minus=" << format_double(rec.residual_at_n_minus) << "\n"
        << "generations=" << result.generations_run
        << " converged=" << (result.converged ? "yes" : "no") << "\n"
        << "cache=" << path << "\n";
    return result.converged ? 0 : 2;
}

int cmd_verify(const FrameSourceOpts& source, double tol, std::ostream& out, std::ostream& err) {
    const std::optional<IndexSet> set = resolve_index_set(source, err);
    if (!set) return 1;
    const ProfileReport report = verify_profile(*set, tol);
    const WelchReport welch = welch_metrics(build_frame(*set));
    out << "indices=" << join_indices(set->indices) << "\n"
        << "n=" << set->shape.n_users << " m=" << set->shape.m_rows
        << " n_plus=" << set->shape.n_plus << "\n"
        << "classification=" << frame_class_name(report.classification) << "\n"
        << "welch_bound=" << format_double(welch.welch_bound) << "\n"
        << "i_ms=" << format_double(welch.i_ms) << "\n"
        << "i_max=" << format_double(welch.i_max) << "\n"
        << "tightness_residual=" << format_double(welch.tightness_residual) << "\n"
        << "max_dev_welch=" << format_double(report.max_dev_welch) << "\n"
        << "max_dev_low=" << format_double(report.max_dev_low) << "\n"
        << "max_dev_high=" << format_double(report.max_dev_high) << "\n"
        << "alpha_excess=" << format_double(report.target.alpha_excess) << "\n";
    return 0;
}

int cmd_simulate(const FrameSourceOpts& source, CapacityConfig mc, double snr_db,
                 const std::string& iid_mode, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
    BipolarFrame frame{FrameShape(1, 1), {}, std::nullopt, std::nullopt};
    const char* frame_type = "aetf";
    if (source.iid) {
        if (source.m_rows < 1) throw std::runtime_error("--iid needs --m");
        frame = random_bipolar_frame(FrameShape(source.n_users, source.m_rows),
                                     source.frame_seed);
        frame_type = "iid";
        mc.iid_mode =
            iid_mode == "fixed" ? IidMode::fixed_frame : IidMode::fresh_frame_per_trial;
    } else {
        const std::optional<IndexSet> set = resolve_index_set(source, err);
        if (!set) return 1;
        frame = build_frame(*set);
        mc.iid_mode = IidMode::fixed_frame;
    }
    const CapacityEstimate est = monte_carlo(frame, mc);
    const FrameShape& shape = frame.shape;
    std::vector<std::string> cells = {
        frame_type,
        std::to_string(shape.n_users),
        std::to_string(shape.m_rows),
        std::to_string(mc.k_active),
        format_double(static_cast<double>(shape.m_rows) / mc.k_active),
        format_double(shape.gamma()),
        format_double(static_cast<double>(mc.k_active) / shape.n_users),
        format_double(snr_db),
        std::to_string(mc.trials),
        format_double(est.cap_per_user()),
        format_double(est.cap_per_user_stderr()),
        format_double(est.pcap_per_user()),
        format_double(est.pcap_per_user_stderr()),
        std::to_string(est.singular_trial_count)};
    emit(std::string(kSimulateHeader) + "\n" + join_row(cells), out_path, out);
    return 0;
}

int cmd_theory(const std::string& law_name, double beta_inv, std::optional<double> gamma_opt,
               std::optional<double> p_opt, double snr_db, const std::string& out_path,
               std::ostream& out) {
    if (!(beta_inv > 0.0)) throw std::runtime_error("--beta-inv must be positive");
    const double beta = 1.0 / beta_inv;
    std::optional<double> gamma = gamma_opt;
    if (!gamma && p_opt) gamma = *p_opt * beta_inv;
    SpectralLaw law = [&] {
        if (law_name == "mp") return mp_law(beta);
        if (!gamma) throw std::runtime_error("--law manova needs --gamma or --p");
        return manova_law(beta, *gamma);
    }();
    const double snr = db_to_linear(snr_db);
    std::vector<std::string> cells = {law_name,
                                      format_double(beta_inv),
                                      format_double(gamma.value_or(law.gamma)),
                                      format_double(snr_db),
                                      format_double(law_capacity_per_user(law, snr)),
                                      format_double(law_practical_capacity_per_user(law, snr)),
                                      format_double(law.atom_mass),
                                      format_double(law.lambda_minus),
                                      format_double(law.lambda_plus)};
    emit(std::string(kTheoryHeader) + "\n" + join_row(cells), out_path, out);
    return 0;
}

int cmd_export_frame(const FrameSourceOpts& source, const std::string& out_path,
                     std::ostream& out, std::ostream& err) {
    BipolarFrame frame{FrameShape(1, 1), {}, std::nullopt, std::nullopt};
    if (source.iid) {
        if (source.m_rows < 1) throw std::runtime_error("--iid needs --m");
        frame = random_bipolar_frame(FrameShape(source.n_users, source.m_rows),
                                     source.frame_seed);
    } else {
        const std::optional<IndexSet> set = resolve_index_set(source, err);
        if (!set) return 1;
        frame = build_frame(*set);
    }
    std::string text;
    for (int r = 0; r < frame.shape.m_rows; ++r) {
        for (int c = 0; c < frame.shape.n_users; ++c) {
            if (c) text += ',';
            text += frame.sign(r, c) > 0 ? "1" : "-1";
        }
        text += '\n';
    }
    emit(text, out_path, out);
    return 0;
}

}  // namespace

const char* const kSimulateHeader =
    "frame_type,N,M,K,beta_inv,gamma,p,snr_db,trials,cap_per_user,cap_per_user_stderr,"
    "pcap_per_user,pcap_per_user_stderr,singular_trials";

const char* const kTheoryHeader =
    "law,beta_inv,gamma,snr_db,cap_per_user,pcap_per_user,atom_mass,lambda_minus,lambda_plus";

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bipolar AETF toolkit: GDS search, frame metrics, NOMA capacity"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // search-gds
    auto* search = app.add_subcommand("search-gds", "run the GA and cache the best set");
    int search_n = 0, search_m = 0;
    ga::GaConfig ga_cfg;
    std::string search_cache;
    search->add_option("--n", search_n, "number of users N")->required();
    search->add_option("--m", search_m, "number of rows M")->required();
    search->add_option("--pop", ga_cfg.population_size, "population size (even)");
    search->add_option("--generations", ga_cfg.max_generations, "generation budget");
    search->add_option("--seed", ga_cfg.rng_seed, "GA seed");
    search->add_option("--weight-peak", ga_cfg.weight_peak, "fitness weight on the N- bin");
    search->add_option("--weight-rest", ga_cfg.weight_rest, "fitness weight on the full residual");
    search->add_option("--threshold", ga_cfg.success_threshold, "early-stop fitness");
    search->add_option("--out", search_cache, "cache file (default $AETF_GDS_CACHE)");

    // verify
    auto* verify = app.add_subcommand("verify", "profile deviations and Welch metrics of a set");
    FrameSourceOpts verify_src;
    double verify_tol = 1e-12;
    add_frame_source(verify, verify_src, false);
    verify->add_option("--tol", verify_tol, "exactness tolerance");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo capacity of random K-subsets");
    FrameSourceOpts sim_src;
    CapacityConfig sim_mc;
    double sim_snr_db = 10.0;
    std::string sim_iid_mode = "fresh";
    std::string sim_out;
    add_frame_source(simulate, sim_src, true);
    simulate->add_option("--k", sim_mc.k_active, "active users K")->required();
    simulate->add_option("--snr-db", sim_snr_db, "SNR in dB");
    simulate->add_option("--trials", sim_mc.trials, "Monte-Carlo trials");
    simulate->add_option("--seed", sim_mc.seed, "sampling seed");
    simulate->add_option("--frame-seed", sim_src.frame_seed, "iid frame seed (fixed mode)");
    simulate->add_option("--iid-mode", sim_iid_mode, "iid baseline mode")
        ->check(CLI::IsMember({"fixed", "fresh"}));
    simulate->add_option("--epsilon-floor", sim_mc.epsilon_floor,
                         "eigenvalue floor for practical capacity");
    simulate->add_option("--out", sim_out, "CSV file (default stdout)");

    // theory
    auto* theory = app.add_subcommand("theory", "closed-form spectral-law references");
    std::string theory_law;
    double theory_beta_inv = 0.0;
    std::optional<double> theory_gamma, theory_p;
    double theory_snr_db = 10.0;
    std::string theory_out;
    theory->add_option("--law", theory_law, "mp or manova")
        ->required()
        ->check(CLI::IsMember({"mp", "manova"}));
    theory->add_option("--beta-inv", theory_beta_inv, "M/K")->required();
    theory->add_option("--gamma", theory_gamma, "M/N");
    theory->add_option("--p", theory_p, "K/N (gamma = p * beta_inv)");
    theory->add_option("--snr-db", theory_snr_db, "SNR in dB");
    theory->add_option("--out", theory_out, "CSV file (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "grid of capacity curves with references");
    SweepConfig sweep_cfg;
    sweep->add_option("--n-list", sweep_cfg.n_list, "N grid")->delimiter(',');
    sweep->add_option("--beta-inv-list", sweep_cfg.beta_inv_list, "beta_inv grid")
        ->delimiter(',');
    sweep->add_option("--p-list", sweep_cfg.p_list, "activity fractions")->delimiter(',');
    sweep->add_option("--snr-db", sweep_cfg.snr_db, "SNR in dB");
    sweep->add_option("--trials", sweep_cfg.trials, "Monte-Carlo trials per point");
    sweep->add_option("--seed", sweep_cfg.seed, "master seed");
    sweep->add_option("--cache", sweep_cfg.cache_path, "GDS cache (default $AETF_GDS_CACHE)");
    sweep->add_flag("--no-search", sweep_cfg.no_search, "never run the GA on cache misses");
    sweep->add_option("--jobs", sweep_cfg.jobs, "worker threads");
    sweep->add_option("--ga-pop", sweep_cfg.ga_population, "GA population for cache misses");
    sweep->add_option("--ga-generations", sweep_cfg.ga_generations,
                      "GA generation budget for cache misses");
    sweep->add_option("--out", sweep_cfg.out_path, "CSV file (default stdout)");
    sweep->add_option("--svg", sweep_cfg.svg_prefix, "write one SVG per (beta_inv, p) group");

    // export-frame
    auto* export_frame = app.add_subcommand("export-frame", "raw +-1 signs as CSV");
    FrameSourceOpts export_src;
    std::string export_out;
    add_frame_source(export_frame, export_src, true);
    export_frame->add_option("--seed", export_src.frame_seed, "iid frame seed");
    export_frame->add_option("--out", export_out, "file (default stdout)");

    try {
        std::vector<std::string> args = expand_config(raw_args);
        // CLI11 consumes argv in reverse
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(search))
            return cmd_search_gds(search_n, search_m, ga_cfg, search_cache, out);
        if (app.got_subcommand(verify)) return cmd_verify(verify_src, verify_tol, out, err);
        if (app.got_subcommand(simulate)) {
            sim_mc.snr = db_to_linear(sim_snr_db);
            return cmd_simulate(sim_src, sim_mc, sim_snr_db, sim_iid_mode, sim_out, out, err);
        }
        if (app.got_subcommand(theory))
            return cmd_theory(theory_law, theory_beta_inv, theory_gamma, theory_p, theory_snr_db,
                              theory_out, out);
        if (app.got_subcommand(sweep)) return run_sweep(sweep_cfg, out, err);
        if (app.got_subcommand(export_frame))
            return cmd_export_frame(export_src, export_out, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace aetf::cli
