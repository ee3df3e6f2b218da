#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "urnwalk/bayes_infer.hpp"
#include "urnwalk/error.hpp"
#include "urnwalk/io.hpp"
#include "urnwalk/mc_sim.hpp"
#include "urnwalk/tick_ingest.hpp"
#include "urnwalk/urn_core.hpp"

namespace urnwalk::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// ---- helpers -----------------------------------------------------------------

std::string dump(const json& j) { return j.dump(2) + "\n"; }

fs::path manifest_path(const fs::path& primary) {
    fs::path p = primary;
    p += ".manifest.json";
    return p;
}

fs::path sibling(const fs::path& primary, const std::string& suffix) {
    return primary.parent_path() / (primary.stem().string() + suffix);
}

std::string read_input(const fs::path& path) { return io::read_file(path); }

// The argument list with --threads removed; thread count never changes results.
std::vector<std::string> replayable_args(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--threads") {
            ++i;
            continue;
        }
        if (args[i].rfind("--threads=", 0) == 0) continue;
        out.push_back(args[i]);
    }
    return out;
}

struct Manifest {
    std::string command;
    json params = json::object();
    std::vector<std::uint64_t> seeds;
    std::vector<fs::path> inputs;
    std::vector<fs::path> outputs;
};

void write_manifest(const fs::path& primary, const std::vector<std::string>& args, const Manifest& m) {
    json j;
    j["tool"] = "urnwalk";
    j["version"] = kToolVersion;
    j["command"] = m.command;
    j["args"] = replayable_args(args);
    j["params"] = m.params;
    j["seeds"] = m.seeds;
    j["inputs"] = json::array();
    for (const auto& p : m.inputs) {
        j["inputs"].push_back({{"path", p.string()}, {"fnv1a64", io::hex64(io::fnv1a64(read_input(p)))}});
    }
    j["outputs"] = json::array();
    for (const auto& p : m.outputs) {
        j["outputs"].push_back({{"path", p.string()}, {"fnv1a64", io::hex64(io::fnv1a64(io::read_file(p)))}});
    }
    io::write_file_atomic(manifest_path(primary), dump(j));
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = std::min(text.find(',', start), text.size());
        const std::string_view field(text.data() + start, comma - start);
        int value = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
            throw ParameterError(std::string(what) + ": expected comma-separated integers, got '" + text + "'");
        }
        out.push_back(value);
        start = comma + 1;
    }
    return out;
}

json estimate(const Estimate& e) { return {{"value", e.value}, {"err", e.err}}; }

// ---- evolve -----------------------------------------------------------------------

struct EvolveOpts {
    int n = 0;
    double kappa = 0.0;
    fs::path out;
};

int cmd_evolve(const EvolveOpts& o, const std::vector<std::string>& args, std::ostream& out) {
    const ProcessParams params(o.n, o.kappa);
    const Pmf pmf = evolve_pmf(params, o.n);
    std::string csv = "x,p\n";
    for (std::size_t j = 0; j < pmf.probs.size(); ++j) {
        csv += std::to_string(pmf.position(j)) + "," + io::format_double(pmf.probs[j]) + "\n";
    }
    io::write_file_atomic(o.out, csv);

    const MomentSet m = moments(pmf);
    json summary = {{"n", o.n},           {"kappa", o.kappa},       {"epsilon", params.epsilon()},
                    {"mean", m.mean},     {"variance", m.variance}, {"fourth_moment", m.fourth_moment},
                    {"kurtosis", m.kurtosis}};
    out << dump(summary);

    Manifest man{"evolve", {{"n", o.n}, {"kappa", o.kappa}}, {}, {}, {o.out}};
    write_manifest(o.out, args, man);
    return kExitOk;
}

// ---- simulate ---------------------------------------------------------------------

struct SimulateOpts {
    std::string n;
    double kappa = 0.0;
    int paths = 100000;
    std::uint64_t seed = 1;
    std::string acf;
    unsigned threads = 0;
    fs::path out;
    fs::path acf_out;
};

int cmd_simulate(const SimulateOpts& o, const std::vector<std::string>& args, std::ostream& out) {
    const auto n_values = parse_int_list(o.n, "--n");
    std::optional<AcfSpec> acf;
    if (!o.acf.empty()) {
        const auto w = parse_int_list(o.acf, "--acf");
        if (w.size() != 2) throw ParameterError("--acf: expected n,max_lag");
        if (n_values.size() != 1) throw ParameterError("--acf needs a single --n");
        acf = AcfSpec{w[0], w[1]};
    }

    // A single N uses the seed directly; a sweep derives one seed per N.
    std::vector<EnsembleStats> rows;
    if (n_values.size() == 1) {
        rows.push_back(run_ensemble(ProcessParams(n_values[0], o.kappa), o.paths, o.seed, acf, o.threads));
    } else {
        rows = sweep_moments(o.kappa, n_values, o.paths, o.seed, o.threads);
    }

    std::string csv =
        "n,kappa,n_paths,variance,variance_err,variance_per_n,variance_per_n_err,"
        "fourth_moment,fourth_moment_err,kurtosis,kurtosis_err\n";
    json summary = json::array();
    for (const auto& r : rows) {
        const double n = r.n_total;
        csv += std::to_string(r.n_total) + "," + io::format_double(r.kappa) + "," + std::to_string(r.n_paths) +
               "," + io::format_double(r.variance.value) + "," + io::format_double(r.variance.err) + "," +
               io::format_double(r.variance.value / n) + "," + io::format_double(r.variance.err / n) + "," +
               io::format_double(r.fourth_moment.value) + "," + io::format_double(r.fourth_moment.err) + "," +
               io::format_double(r.kurtosis.value) + "," + io::format_double(r.kurtosis.err) + "\n";
        summary.push_back({{"n", r.n_total},
                           {"kappa", r.kappa},
                           {"n_paths", r.n_paths},
                           {"n_subensembles", r.n_subensembles},
                           {"variance", estimate(r.variance)},
                           {"variance_per_n", estimate({r.variance.value / n, r.variance.err / n})},
                           {"fourth_moment", estimate(r.fourth_moment)},
                           {"kurtosis", estimate(r.kurtosis)}});
    }
    io::write_file_atomic(o.out, csv);
    Manifest man{"simulate", {{"n", n_values}, {"kappa", o.kappa}, {"paths", o.paths}}, {o.seed}, {}, {o.out}};

    if (acf) {
        const auto& r = rows.front();
        const fs::path acf_path = o.acf_out.empty() ? sibling(o.out, "_acf.csv") : o.acf_out;
        std::string acsv = "lag,displacement_acf,displacement_acf_err,position_acf,position_acf_err\n";
        for (std::size_t k = 0; k < r.position_acf.size(); ++k) {
            acsv += std::to_string(k + 1) + "," + io::format_double(r.displacement_acf[k].value) + "," +
                    io::format_double(r.displacement_acf[k].err) + "," +
                    io::format_double(r.position_acf[k].value) + "," + io::format_double(r.position_acf[k].err) +
                    "\n";
        }
        io::write_file_atomic(acf_path, acsv);
        man.params["acf"] = {{"n", acf->n}, {"max_lag", acf->max_lag}};
        man.outputs.push_back(acf_path);
        summary.front()["acf_csv"] = acf_path.string();
    }
    out << dump(summary.size() == 1 ? summary.front() : summary);
    write_manifest(o.out, args, man);
    return kExitOk;
}

// ---- ingest -----------------------------------------------------------------------

struct IngestOpts {
    fs::path prices;
    std::string tick = "0.1";
    fs::path out;
};

int cmd_ingest(const IngestOpts& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const Decimal tick = Decimal::parse(o.tick);
    if (tick.mantissa <= 0) throw ParameterError("--tick must be positive");
    std::istringstream in(read_input(o.prices));
    const PriceSeries series = read_price_csv(in, tick);
    const TickSeries ticks = decompose(series);
    if (ticks.ticks.empty()) err << "warning: prices never change; no ticks written\n";

    std::ostringstream csv;
    write_ticks_csv(csv, ticks);
    io::write_file_atomic(o.out, csv.str());

    std::size_t up = 0;
    for (auto t : ticks.ticks) up += t > 0 ? 1 : 0;
    out << dump({{"prices", series.prices.size()},
                 {"ticks", ticks.ticks.size()},
                 {"up", up},
                 {"down", ticks.ticks.size() - up}});
    write_manifest(o.out, args, {"ingest", {{"tick", tick.to_string()}}, {}, {o.prices}, {o.out}});
    return kExitOk;
}

// ---- stats --------------------------------------------------------------------------

struct StatsOpts {
    fs::path ticks;
    std::string mode = "hist";
    int n = 0;
    int acf_n = 0;
    int acf_lags = 0;
    int subensembles = 100;
    fs::path out;
};

TickSeries load_ticks(const fs::path& path) {
    std::istringstream in(read_input(path));
    return read_ticks_csv(in);
}

int cmd_stats(const StatsOpts& o, const std::vector<std::string>& args, std::ostream& out) {
    const TickSeries t = load_ticks(o.ticks);
    std::ostringstream csv;
    json params = {{"mode", o.mode}, {"subensembles", o.subensembles}};
    json summary;
    if (o.mode == "hist") {
        if (o.n < 1) throw ParameterError("stats --mode hist needs --n >= 1");
        const auto h = build_histogram(t.ticks, o.n, o.subensembles);
        write_hist_csv(csv, h);
        params["n"] = o.n;
        summary = {{"mode", "hist"}, {"n", o.n}, {"n_samples", h.n_samples}};
    } else {
        if (o.acf_n < 1 || o.acf_lags < 1) throw ParameterError("stats --mode acf needs --acf-n and --acf-lags");
        const auto a = build_acf(t.ticks, o.acf_n, o.acf_lags, o.subensembles);
        write_acf_csv(csv, a);
        params["acf_n"] = o.acf_n;
        params["acf_lags"] = o.acf_lags;
        summary = {{"mode", "acf"}, {"acf_n", o.acf_n}, {"acf_lags", o.acf_lags}, {"n_samples", a.n_samples}};
    }
    io::write_file_atomic(o.out, csv.str());
    out << dump(summary);
    write_manifest(o.out, args, {"stats", params, {}, {o.ticks}, {o.out}});
    return kExitOk;
}

// ---- fit ----------------------------------------------------------------------------

struct FitOpts {
    fs::path ticks;
    fs::path hist;
    fs::path acf_data;
    int n = 0;
    std::string mode = "hist";
    int acf_n = 0;
    int acf_lags = 0;
    int subensembles = 100;
    int mcmc_steps = 100000;
    int burnin = 10000;
    double proposal_std = 0.0;
    std::uint64_t seed = 1;
    fs::path out;
    fs::path samples_out;
};

int cmd_fit(const FitOpts& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const int given = !o.ticks.empty() + !o.hist.empty() + !o.acf_data.empty();
    if (given != 1) throw ParameterError("fit: give exactly one of --ticks, --hist, --acf-data");
    if (o.n < 1) throw ParameterError("fit: --n must be >= 1");
    const std::string mode = !o.hist.empty() ? "hist" : !o.acf_data.empty() ? "acf" : o.mode;

    McmcConfig config;
    config.n_steps = o.mcmc_steps;
    config.n_burnin = o.burnin;
    if (o.proposal_std > 0) config.proposal_std = o.proposal_std;
    config.seed = o.seed;
    config.validate();

    Manifest man;
    man.command = "fit";
    man.seeds = {o.seed};
    man.params = {{"mode", mode},          {"n", o.n},          {"mcmc_steps", o.mcmc_steps},
                  {"burnin", o.burnin},    {"subensembles", o.subensembles}};
    if (o.proposal_std > 0) man.params["proposal_std"] = o.proposal_std;

    FitTarget target;
    std::size_t data_samples = 0;
    json excluded = json::array();
    if (mode == "hist") {
        EmpiricalHist h;
        if (!o.hist.empty()) {
            std::istringstream in(read_input(o.hist));
            h = read_hist_csv(in);
            man.inputs.push_back(o.hist);
        } else {
            h = build_histogram(load_ticks(o.ticks).ticks, o.n, o.subensembles);
            man.inputs.push_back(o.ticks);
        }
        const auto sel = select_bins(h);
        for (auto j : sel.excluded_with_data) excluded.push_back(h.position(j));
        if (!excluded.empty()) {
            err << "note: " << excluded.size() << " bin(s) with data but zero uncertainty left out of the fit: "
                << excluded.dump() << "\n";
        }
        data_samples = h.n_samples;
        target = hist_target(h, o.n);
    } else if (mode == "acf") {
        if (o.acf_n < 1) throw ParameterError("fit --mode acf needs --acf-n");
        const int lags = o.acf_lags > 0 ? o.acf_lags : o.n - o.acf_n;
        if (o.acf_n + lags != o.n) {
            throw ParameterError("fit --mode acf: need N = n + L, got N=" + std::to_string(o.n) +
                                 ", n=" + std::to_string(o.acf_n) + ", L=" + std::to_string(lags));
        }
        EmpiricalAcf a;
        if (!o.acf_data.empty()) {
            std::istringstream in(read_input(o.acf_data));
            a = read_acf_csv(in, o.acf_n);
            man.inputs.push_back(o.acf_data);
        } else {
            a = build_acf(load_ticks(o.ticks).ticks, o.acf_n, lags, o.subensembles);
            man.inputs.push_back(o.ticks);
        }
        data_samples = a.n_samples;
        man.params["acf_n"] = o.acf_n;
        man.params["acf_lags"] = lags;
        target = acf_target(a, o.n, o.acf_n, lags);
    } else {
        throw ParameterError("fit: --mode must be hist or acf");
    }

    const PosteriorSummary s = posterior_mcmc(target, config);
    const double ln_bf = s.log_evidence + target.discrepancy(0.0);
    if (!std::isfinite(ln_bf)) throw NumericalError("fit: Bayes factor is not finite");
    if (s.acceptance_warning) {
        err << "warning: acceptance rate " << s.acceptance_rate << " outside [0.05, 0.95]\n";
    }

    const fs::path samples_path = o.samples_out.empty() ? sibling(o.out, "_samples.csv") : o.samples_out;
    std::string scsv = "step,eps\n";
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        scsv += std::to_string(i) + "," + io::format_double(s.samples[i]) + "\n";
    }
    io::write_file_atomic(samples_path, scsv);

    json summary = {{"mode", mode},
                    {"n", o.n},
                    {"data_samples", data_samples},
                    {"eps_mean", s.eps_mean},
                    {"eps_std", s.eps_std},
                    {"eps_mean_sem", s.eps_mean_sem},
                    {"kappa_mean", s.kappa_mean},
                    {"kappa_std", s.kappa_std},
                    {"acceptance_rate", s.acceptance_rate},
                    {"acceptance_warning", s.acceptance_warning},
                    {"proposal_std", s.proposal_std},
                    {"log_evidence", s.log_evidence},
                    {"ln_bayes_factor", ln_bf},
                    {"grid_eps_mean", s.grid_eps_mean},
                    {"grid_eps_std", s.grid_eps_std},
                    {"eps_map", s.eps_map},
                    {"excluded_bins", excluded},
                    {"samples_csv", samples_path.string()}};
    io::write_file_atomic(o.out, dump(summary));
    out << dump(summary);
    man.outputs = {o.out, samples_path};
    write_manifest(o.out, args, man);
    return kExitOk;
}

// ---- synth ---------------------------------------------------------------------------

struct SynthOpts {
    int n = 0;
    double kappa = 0.0;
    std::size_t blocks = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    fs::path out;
};

int cmd_synth(const SynthOpts& o, const std::vector<std::string>& args, std::ostream& out) {
    const ProcessParams params(o.n, o.kappa);
    TickSeries t{synthetic_ticks(params, o.blocks, o.seed, o.threads)};
    std::ostringstream csv;
    write_ticks_csv(csv, t);
    io::write_file_atomic(o.out, csv.str());
    out << dump({{"n", o.n}, {"kappa", o.kappa}, {"blocks", o.blocks}, {"ticks", t.ticks.size()}});
    write_manifest(o.out, args,
                   {"synth", {{"n", o.n}, {"kappa", o.kappa}, {"blocks", o.blocks}}, {o.seed}, {}, {o.out}});
    return kExitOk;
}

// ---- replay -------------------------------------------------------------------------

int cmd_replay(const fs::path& manifest, unsigned threads, std::ostream& out, std::ostream& err) {
    json m;
    try {
        m = json::parse(io::read_file(manifest));
    } catch (const json::exception& e) {
        throw DataError("replay: " + manifest.string() + " is not valid JSON: " + e.what());
    }
    if (!m.contains("args") || !m["args"].is_array() || !m.contains("outputs")) {
        throw DataError("replay: " + manifest.string() + " is not a run manifest");
    }
    auto args = m["args"].get<std::vector<std::string>>();
    if (args.empty() || args.front() == "replay") throw DataError("replay: manifest has no replayable command");

    for (const auto& in : m.value("inputs", json::array())) {
        const auto path = in.at("path").get<std::string>();
        if (io::hex64(io::fnv1a64(io::read_file(path))) != in.at("fnv1a64").get<std::string>()) {
            throw DataError("replay: input " + path + " changed since the recorded run");
        }
    }
    if (threads > 0 && (args.front() == "simulate" || args.front() == "synth")) {
        args.push_back("--threads");
        args.push_back(std::to_string(threads));
    }

    std::ostringstream sink;
    const int code = run(args, sink, err);
    if (code != kExitOk) return code;

    int mismatches = 0;
    for (const auto& o : m["outputs"]) {
        const auto path = o.at("path").get<std::string>();
        if (io::hex64(io::fnv1a64(io::read_file(path))) != o.at("fnv1a64").get<std::string>()) {
            err << "replay: output " << path << " differs from the recorded run\n";
            ++mismatches;
        }
    }
    out << dump({{"command", m.value("command", "")},
                 {"outputs", m["outputs"].size()},
                 {"identical", mismatches == 0}});
    return mismatches == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Correlated urn random walk: exact distributions, simulation, tick data fits"};
    app.name("urnwalk");
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    const char* threads_help = "Worker threads (0: URNWALK_THREADS or all cores); results do not depend on it";

    EvolveOpts ev;
    auto* evolve = app.add_subcommand("evolve", "Exact PMF of x_N by recursion");
    evolve->add_option("--n", ev.n, "Number of draws N")->required();
    evolve->add_option("--kappa", ev.kappa, "Correlation kappa in [-1/2, 1/2]")->required();
    evolve->add_option("--out", ev.out, "PMF CSV (x,p)")->required();

    SimulateOpts sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo ensemble moments and auto-correlations");
    simulate->add_option("--n", sim.n, "N, or a comma list of N for a sweep")->required();
    simulate->add_option("--kappa", sim.kappa, "Correlation kappa")->required();
    simulate->add_option("--paths", sim.paths, "Paths per ensemble")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
    simulate->add_option("--acf", sim.acf, "n,max_lag window for auto-correlations");
    simulate->add_option("--acf-out", sim.acf_out, "ACF CSV (default <out stem>_acf.csv)");
    simulate->add_option("--threads", sim.threads, threads_help);
    simulate->add_option("--out", sim.out, "Moments CSV")->required();

    IngestOpts ing;
    auto* ingest = app.add_subcommand("ingest", "Decompose a price CSV into unit ticks");
    ingest->add_option("--prices", ing.prices, "Price CSV (first column; header optional)")->required();
    ingest->add_option("--tick", ing.tick, "Minimum price increment")->capture_default_str();
    ingest->add_option("--out", ing.out, "Tick CSV (one +1/-1 per line)")->required();

    StatsOpts st;
    auto* stats = app.add_subcommand("stats", "Empirical histogram or auto-correlation of ticks");
    stats->add_option("--ticks", st.ticks, "Tick CSV")->required();
    stats->add_option("--mode", st.mode, "hist or acf")->check(CLI::IsMember({"hist", "acf"}))->capture_default_str();
    stats->add_option("--n", st.n, "Block length N (hist)");
    stats->add_option("--acf-n", st.acf_n, "Base step n (acf)");
    stats->add_option("--acf-lags", st.acf_lags, "Largest lag L (acf)");
    stats->add_option("--subensembles", st.subensembles, "Sub-ensembles for uncertainties")->capture_default_str();
    stats->add_option("--out", st.out, "Histogram or ACF CSV")->required();

    FitOpts fo;
    auto* fit = app.add_subcommand("fit", "Posterior of kappa and Bayes factor against the Bernoulli walk");
    fit->add_option("--ticks", fo.ticks, "Tick CSV");
    fit->add_option("--hist", fo.hist, "Histogram CSV from `stats --mode hist`");
    fit->add_option("--acf-data", fo.acf_data, "ACF CSV from `stats --mode acf`");
    fit->add_option("--n", fo.n, "Number of draws N")->required();
    fit->add_option("--mode", fo.mode, "hist or acf")->check(CLI::IsMember({"hist", "acf"}))->capture_default_str();
    fit->add_option("--acf-n", fo.acf_n, "Base step n (acf)");
    fit->add_option("--acf-lags", fo.acf_lags, "Largest lag L (acf; default N - n)");
    fit->add_option("--subensembles", fo.subensembles, "Sub-ensembles when building from ticks")
        ->capture_default_str();
    fit->add_option("--mcmc-steps", fo.mcmc_steps, "Retained MCMC steps")->capture_default_str();
    fit->add_option("--burnin", fo.burnin, "Burn-in steps")->capture_default_str();
    fit->add_option("--proposal-std", fo.proposal_std, "Initial proposal width in eps (default prior width / 20)");
    fit->add_option("--seed", fo.seed, "Chain seed")->capture_default_str();
    fit->add_option("--out", fo.out, "JSON summary")->required();
    fit->add_option("--samples-out", fo.samples_out, "Posterior samples CSV (default <out stem>_samples.csv)");

    SynthOpts sy;
    auto* synth = app.add_subcommand("synth", "Synthetic ticks: independent N-step model paths, concatenated");
    synth->add_option("--n", sy.n, "Block length N")->required();
    synth->add_option("--kappa", sy.kappa, "Correlation kappa")->required();
    synth->add_option("--blocks", sy.blocks, "Number of blocks")->capture_default_str();
    synth->add_option("--seed", sy.seed, "Base seed")->capture_default_str();
    synth->add_option("--threads", sy.threads, threads_help);
    synth->add_option("--out", sy.out, "Tick CSV")->required();

    fs::path manifest;
    unsigned replay_threads = 0;
    auto* replay = app.add_subcommand("replay", "Re-run a manifest and check outputs are byte-identical");
    replay->add_option("--manifest", manifest, "Manifest written by an earlier run")->required();
    replay->add_option("--threads", replay_threads, threads_help);

    std::vector<const char*> argv{"urnwalk"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*evolve) return cmd_evolve(ev, args, out);
        if (*simulate) return cmd_simulate(sim, args, out);
        if (*ingest) return cmd_ingest(ing, args, out, err);
        if (*stats) return cmd_stats(st, args, out);
        if (*fit) return cmd_fit(fo, args, out, err);
        if (*synth) return cmd_synth(sy, args, out);
        if (*replay) return cmd_replay(manifest, replay_threads, out, err);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace urnwalk::cli
