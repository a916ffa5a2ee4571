#include "stbc/cli.hpp"

#include "stbc/channel.hpp"
#include "stbc/constellation.hpp"
#include "stbc/constructions.hpp"
#include "stbc/design_json.hpp"
#include "stbc/diversity.hpp"
#include "stbc/mmi.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace stbc::cli {

using nlohmann::json;

namespace {

enum class Check { text, number, count, member };

struct OptSpec {
    std::string name;
    std::string fallback; ///< empty: optional without default
    std::string help;
    Check check = Check::text;
    std::vector<std::string> members = {};
    bool required = false;
};

struct VerbSpec {
    std::string verb;
    std::string help;
    std::vector<OptSpec> options;
    std::optional<OptSpec> positional = std::nullopt;
};

const std::vector<std::string> kProperties{"sd", "iq", "sd-strict", "diversity-necessary", "ufsdd", "rfsdd", "full-diversity"};

std::vector<OptSpec> set_options(bool with_theta_default) {
    return {{"kind", with_theta_default ? "qam" : "", "signal set family", Check::member, {"qam", "psk"}},
            {"m", "4", "signal set size", Check::count},
            {"theta", with_theta_default ? "0" : "", "rotation in degrees", Check::number}};
}

std::vector<OptSpec> concat(std::vector<OptSpec> a, const std::vector<OptSpec>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

const std::vector<VerbSpec>& verbs() {
    static const std::vector<VerbSpec> v{
        {"construct",
         "build a design and write it as JSON",
         {{"name", "", "catalog design name"},
          {"stage", "", "iterative square GLCOD stage", Check::count},
          {"n", "", "antenna count (glcod, ciod)", Check::count},
          {"n1", "", "first block antennas (gciod)", Check::count},
          {"n2", "", "second block antennas (gciod)", Check::count},
          {"from", "", "design JSON file to start from (family 'file')"},
          {"delete", "", "comma-separated columns to delete"},
          {"stack", "1", "vertical copies with fresh symbols", Check::count}},
         OptSpec{"family", "catalog", "catalog | glcod | ciod | gciod | file", Check::member,
                 {"catalog", "glcod", "ciod", "gciod", "file"}}},
        {"verify",
         "classify a design; exit 0 iff --property holds",
         concat({{"design", "", "design JSON file or catalog name", Check::text, {}, true},
                 {"property", "sd-strict", "property gating the exit code", Check::member, kProperties},
                 {"tol", "1e-9", "algebraic tolerance", Check::number}},
                set_options(false))},
        {"rotate",
         "optimal rotation for CPD or GCPD",
         {{"kind", "qam", "signal set family", Check::member, {"qam"}},
          {"m", "4", "QAM size", Check::count},
          {"objective", "cpd", "cpd | gcpd", Check::member, {"cpd", "gcpd"}},
          {"n1", "1", "GCPD first exponent block", Check::count},
          {"n2", "1", "GCPD second exponent block", Check::count}}},
        {"codinggain",
         "brute-force coding gain",
         concat({{"design", "", "design JSON file or catalog name", Check::text, {}, true},
                 {"scale", "1", "power normalization multiplier, or 'auto'"},
                 {"mode", "exhaustive", "exhaustive | single-symbol", Check::member, {"exhaustive", "single-symbol"}}},
                set_options(true))},
        {"ber",
         "Monte Carlo bit error rate",
         concat({{"design", "", "design JSON file or catalog name", Check::text, {}, true},
                 {"channel", "quasistatic", "quasistatic | rapid", Check::member, {"quasistatic", "rapid"}},
                 {"rx", "1", "receive antennas", Check::count},
                 {"snr", "0:2:20", "SNR grid in dB, a:step:b or a,b,c"},
                 {"min-errors", "200", "bit errors per point", Check::count},
                 {"min-frames", "1000", "frames per point", Check::count},
                 {"max-frames", "10000000", "frame cap per point", Check::count},
                 {"seed", "42", "master seed", Check::count},
                 {"decoder", "sd", "sd | jointml", Check::member, {"sd", "jointml"}}},
                set_options(true))},
        {"mmi",
         "maximum mutual information curves",
         {{"scheme", "channel", "channel | glcod | gciod", Check::member, {"channel", "glcod", "gciod"}},
          {"n", "2", "transmit antennas", Check::count},
          {"rx", "1", "receive antennas", Check::count},
          {"k", "", "symbols per block (total for gciod)", Check::count},
          {"l", "", "delay (glcod)", Check::count},
          {"n1", "", "gciod first block antennas", Check::count},
          {"n2", "", "gciod second block antennas", Check::count},
          {"l1", "", "gciod first block delay", Check::count},
          {"l2", "", "gciod second block delay", Check::count},
          {"snr", "0:5:30", "SNR grid in dB"},
          {"samples", "100000", "Monte Carlo samples (channel)", Check::count},
          {"seed", "42", "master seed (channel)", Check::count}}},
        {"rapid",
         "rapid-fading single-symbol decodability and diversity",
         concat({{"design", "", "design JSON file or catalog name", Check::text, {}, true},
                 {"r", "", "target diversity (default L)", Check::count}},
                set_options(true))},
    };
    return v;
}

const VerbSpec& verb_spec(const std::string& verb) {
    for (const auto& v : verbs())
        if (v.verb == verb) return v;
    throw UsageError("unknown verb '" + verb + "'");
}

CLI::Validator count_validator() {
    return CLI::Validator(
        [](std::string& s) -> std::string {
            if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
                return "expected a non-negative integer, got '" + s + "'";
            return {};
        },
        "COUNT");
}

void attach(CLI::Option* opt, const OptSpec& spec) {
    if (!spec.fallback.empty()) opt->default_str(spec.fallback);
    if (spec.required) opt->required();
    switch (spec.check) {
    case Check::number: opt->check(CLI::Number); break;
    case Check::count: opt->check(count_validator()); break;
    case Check::member: opt->check(CLI::IsMember(spec.members)); break;
    case Check::text: break;
    }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : sep) + p;
    return s;
}

// ---------------------------------------------------------------- helpers

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("bad index list '" + text + "'");
        out.push_back(std::stoul(item));
    }
    return out;
}

LinearDesign load_design_arg(const std::string& arg) {
    if (std::filesystem::exists(arg)) return load_design(arg);
    const auto names = catalog_names();
    if (std::find(names.begin(), names.end(), arg) != names.end()) return catalog(arg);
    throw Error("'" + arg + "' is neither a design file nor a catalog name (" + join(names, ", ") + ")");
}

std::optional<SignalSet> set_from(const Command& cmd) {
    if (!cmd.has("kind")) return std::nullopt;
    const SetKind kind = cmd.get("kind") == "psk" ? SetKind::psk : SetKind::qam;
    SignalSet set = make_signal_set(kind, cmd.get_count("m"));
    if (cmd.has("theta")) set = rotate(set, cmd.get_double("theta"));
    return set;
}

json meta_json(const Command& cmd) {
    json opts = json::object();
    for (const auto& [k, v] : cmd.options) opts[k] = v;
    return {{"tool", kToolName}, {"version", kVersion}, {"command", cmd.command_line()}, {"options", opts}};
}

void csv_meta(std::ostream& os, const Command& cmd) {
    os << "# " << kToolName << ' ' << kVersion << '\n';
    os << "# command: " << cmd.command_line() << '\n';
    for (const auto& [k, v] : cmd.options) os << "# " << k << ": " << v << '\n';
}

json sd_report_json(const SdReport& r) {
    json v = json::array();
    for (const auto& p : r.violations) v.push_back({{"k", p.k}, {"l", p.l}, {"residual", p.residual}});
    return {{"holds", r.holds}, {"violation_count", r.violation_count}, {"max_residual", r.max_residual}, {"violations", v}};
}

class Sink {
public:
    Sink(const Command& cmd, std::ostream& fallback) : os_(&fallback) {
        if (cmd.output_path) {
            file_.open(*cmd.output_path);
            if (!file_) throw Error("cannot write " + *cmd.output_path);
            os_ = &file_;
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

// ---------------------------------------------------------------- verbs

int do_construct(const Command& cmd, std::ostream& out) {
    const std::string& family = cmd.get("family");
    std::optional<GciodSpec> spec;
    LinearDesign design = [&]() -> LinearDesign {
        if (family == "catalog") {
            if (!cmd.has("name")) throw UsageError("construct catalog needs --name");
            return catalog(cmd.get("name"));
        }
        if (family == "glcod") {
            if (cmd.has("stage")) return square_glcod(unsigned(cmd.get_count("stage")));
            if (cmd.has("n")) return glcod_for_antennas(cmd.get_count("n"));
            throw UsageError("construct glcod needs --stage or --n");
        }
        if (family == "ciod") {
            if (!cmd.has("n")) throw UsageError("construct ciod needs --n");
            return square_ciod(cmd.get_count("n"));
        }
        if (family == "gciod") {
            if (!cmd.has("n1") || !cmd.has("n2")) throw UsageError("construct gciod needs --n1 and --n2");
            auto g = compose_with_stacking(glcod_for_antennas(cmd.get_count("n1")), glcod_for_antennas(cmd.get_count("n2")));
            spec = g.spec;
            return g.design;
        }
        if (!cmd.has("from")) throw UsageError("construct file needs --from");
        return load_design(cmd.get("from"));
    }();
    if (cmd.has("delete")) {
        design = delete_columns(design, parse_index_list(cmd.get("delete")));
        spec.reset();
    }
    if (cmd.get_count("stack") > 1) {
        design = stack_glcod(design, cmd.get_count("stack"));
        spec.reset();
    }
    json j = design_to_json(design);
    j["rate"] = design.rate().str();
    if (spec)
        j["gciod"] = {{"N1", spec->N1}, {"N2", spec->N2}, {"L1", spec->L1}, {"L2", spec->L2}, {"K", spec->K}};
    j["meta"] = meta_json(cmd);
    Sink sink(cmd, out);
    *sink << j.dump(1) << '\n';
    return ok;
}

int do_verify(const Command& cmd, std::ostream& out) {
    const LinearDesign design = load_design_arg(cmd.get("design"));
    const auto set = set_from(cmd);
    const double tol = cmd.get_double("tol");
    const DesignClass c = classify(design, set ? &*set : nullptr, tol);
    json j{{"design", design.name()},
           {"L", design.L()},
           {"N", design.N()},
           {"K", design.K()},
           {"rate", design.rate().str()},
           {"is_sd_general", c.is_sd_general},
           {"is_iq_orthogonal", c.is_iq_orthogonal},
           {"is_sd_strict", c.is_sd_strict},
           {"diversity_necessary", c.diversity_necessary},
           {"ufsdd", c.ufsdd},
           {"restricted", c.restricted},
           {"weight_gram_ranks", c.weight_gram_ranks},
           {"rank_deficient_symbols", c.rank_deficient_symbols},
           {"sd_general", sd_report_json(c.sd_general)},
           {"iq_orthogonality", sd_report_json(c.iq_orthogonality)}};
    j["rfsdd_with_set"] = c.rfsdd_with_set ? json(*c.rfsdd_with_set) : json(nullptr);
    j["set_cpd"] = c.set_cpd ? json(*c.set_cpd) : json(nullptr);

    const std::string& prop = cmd.get("property");
    bool holds = false;
    if (prop == "sd") holds = c.is_sd_general;
    else if (prop == "iq") holds = c.is_iq_orthogonal;
    else if (prop == "sd-strict") holds = c.is_sd_strict;
    else if (prop == "diversity-necessary") holds = c.diversity_necessary;
    else if (prop == "ufsdd") holds = c.ufsdd;
    else if (prop == "rfsdd") {
        if (!set) throw UsageError("--property rfsdd needs a signal set (--kind, --m, --theta)");
        holds = c.rfsdd_with_set.value_or(false);
    } else {
        if (!set) throw UsageError("--property full-diversity needs a signal set (--kind, --m, --theta)");
        holds = verify_full_diversity(design, *set, GainMode::exhaustive, tol);
        j["full_diversity"] = holds;
    }
    j["property"] = prop;
    j["property_holds"] = holds;
    j["meta"] = meta_json(cmd);
    Sink sink(cmd, out);
    *sink << j.dump(2) << '\n';
    return holds ? ok : property_fails;
}

int do_rotate(const Command& cmd, std::ostream& out) {
    const std::size_t m = cmd.get_count("m");
    const SignalSet set = make_signal_set(SetKind::qam, m);
    const double four_d2 = 4.0 * *set.d * *set.d;
    const auto n1 = unsigned(cmd.get_count("n1")), n2 = unsigned(cmd.get_count("n2"));
    double theta = 0, normalized = 0;
    std::string x0;
    if (cmd.get("objective") == "cpd") {
        const auto opt = optimal_rotation_cpd();
        theta = opt.theta_deg;
        normalized = opt.cpd_over_4d2;
    } else if (m == 4) {
        const auto opt = optimal_rotation_gcpd_qpsk(n1, n2);
        theta = opt.theta_deg;
        normalized = opt.gcpd_over_4d2;
        x0 = format_number(opt.x0);
    } else {
        // no closed form beyond QPSK: 0.01 degree grid
        double best = -1;
        for (int step = 0; step <= 9000; ++step) {
            const double t = step * 0.01;
            const double g = gcpd(rotate(set, t), n1, n2);
            if (g > best) {
                best = g;
                theta = t;
            }
        }
        normalized = best / four_d2;
    }
    Sink sink(cmd, out);
    csv_meta(*sink, cmd);
    *sink << "objective,n1,n2,theta_deg,x0,normalized,absolute\n";
    *sink << cmd.get("objective") << ',' << n1 << ',' << n2 << ',' << format_number(theta) << ',' << x0 << ','
          << format_number(normalized) << ',' << format_number(normalized * four_d2) << '\n';
    return ok;
}

int do_codinggain(const Command& cmd, std::ostream& out) {
    const LinearDesign design = load_design_arg(cmd.get("design"));
    const SignalSet set = *set_from(cmd);
    const double scale = cmd.get("scale") == "auto" ? power_scale(design, set) : cmd.get_double("scale");
    const GainMode mode = cmd.get("mode") == "exhaustive" ? GainMode::exhaustive : GainMode::single_symbol;
    const GainReport r = coding_gain(design, set, mode, scale);
    json j{{"design", design.name()},
           {"set", set.label},
           {"rotation_deg", set.rotation_deg},
           {"scale", scale},
           {"mode", to_string(r.mode)},
           {"full_diversity", r.full_diversity},
           {"coding_gain", r.coding_gain},
           {"min_rank", r.min_rank},
           {"det_plus_gain", r.det_plus_gain},
           {"argmin_pair", {r.argmin_first, r.argmin_second}},
           {"pairs_checked", r.pairs_checked},
           {"meta", meta_json(cmd)}};
    Sink sink(cmd, out);
    *sink << j.dump(2) << '\n';
    return ok;
}

int do_ber(const Command& cmd, std::ostream& out) {
    const LinearDesign design = load_design_arg(cmd.get("design"));
    const SignalSet set = *set_from(cmd);
    ChannelModel model;
    model.kind = cmd.get("channel") == "rapid" ? ChannelKind::rapid : ChannelKind::quasi_static;
    model.N = design.N();
    model.M = cmd.get_count("rx");
    model.L = design.L();
    SimConfig config;
    config.snr_grid_db = parse_grid(cmd.get("snr"));
    config.min_bit_errors = cmd.get_count("min-errors");
    config.min_frames = cmd.get_count("min-frames");
    config.max_frames = cmd.get_count("max-frames");
    config.seed = std::stoull(cmd.get("seed"));
    config.decoder = cmd.get("decoder") == "sd" ? Decoder::single_symbol : Decoder::joint_ml;
    const BerCurve curve = simulate_ber(design, set, model, config);

    Sink sink(cmd, out);
    csv_meta(*sink, cmd);
    *sink << "# snr convention: E[tr(S^H S)] = L, unit-variance noise, snr_db = 10 log10(rho) per receive antenna\n";
    *sink << "# throughput_bits: " << format_number(curve.throughput_bits) << '\n';
    if (curve.rate_mismatched) *sink << "# rate_mismatched: signal set size is not a power of two\n";
    *sink << "snr_db,ber,bit_errors,bits\n";
    for (const auto& p : curve.points)
        *sink << format_number(p.snr_db) << ',' << format_number(p.ber) << ',' << p.bit_errors << ',' << p.bits << '\n';
    return ok;
}

int do_mmi(const Command& cmd, std::ostream& out) {
    const std::string& scheme = cmd.get("scheme");
    const std::size_t M = cmd.get_count("rx");
    const auto grid = parse_grid(cmd.get("snr"));
    auto need = [&](const char* key) {
        if (!cmd.has(key)) throw UsageError("mmi --scheme " + scheme + " needs --" + key);
        return cmd.get_count(key);
    };
    Sink sink(cmd, out);
    csv_meta(*sink, cmd);
    *sink << "# snr convention: total transmit power rho, snr_db = 10 log10(rho); bits per channel use\n";
    *sink << "snr_db,bits,stderr\n";
    GciodSpec spec;
    if (scheme == "gciod") {
        spec.N1 = need("n1");
        spec.N2 = need("n2");
        spec.L1 = need("l1");
        spec.L2 = need("l2");
        spec.K = need("k");
    }
    for (double db : grid) {
        const double rho = std::pow(10.0, db / 10.0);
        double bits = 0, se = 0;
        if (scheme == "channel") {
            const auto est = capacity_mimo_mc(cmd.get_count("n"), M, rho, cmd.get_count("samples"), std::stoull(cmd.get("seed")));
            bits = est.mean;
            se = est.stderr_;
        } else if (scheme == "glcod") {
            bits = mmi_glcod(cmd.get_count("n"), M, need("k"), need("l"), rho);
        } else {
            bits = mmi_gciod(spec, M, rho);
        }
        *sink << format_number(db) << ',' << format_number(bits) << ',' << format_number(se) << '\n';
    }
    return ok;
}

int do_rapid(const Command& cmd, std::ostream& out) {
    const LinearDesign design = load_design_arg(cmd.get("design"));
    const SignalSet set = *set_from(cmd);
    const ExtendedDesign ext = extend(design);
    const SdReport sd = check_rapid_sd(ext);
    const std::size_t r = cmd.has("r") ? cmd.get_count("r") : design.L();
    const auto div = check_rapid_full_diversity(ext, set, r);
    json j{{"design", design.name()},
           {"set", set.label},
           {"rotation_deg", set.rotation_deg},
           {"single_symbol_decodable", sd.holds},
           {"report", sd.holds ? "single-symbol decodable in rapid fading" : "not SD in rapid fading"},
           {"sd", sd_report_json(sd)},
           {"target_diversity", r},
           {"full_diversity", div.holds},
           {"row_count_ok", div.row_count_ok},
           {"every_weight_rank_r", div.every_weight_rank_r},
           {"nonzero_cpd", div.nonzero_cpd},
           {"set_cpd", div.set_cpd},
           {"design_rate", design.rate().str()},
           {"max_rapid_rate", max_rapid_rate(design.L()).str()},
           {"meta", meta_json(cmd)}};
    Sink sink(cmd, out);
    *sink << j.dump(2) << '\n';
    return ok;
}

} // namespace

// ---------------------------------------------------------------- Command

const std::string& Command::get(const std::string& key) const {
    const auto it = options.find(key);
    if (it == options.end() || it->second.empty()) throw UsageError("missing option --" + key);
    return it->second;
}

bool Command::has(const std::string& key) const {
    const auto it = options.find(key);
    return it != options.end() && !it->second.empty();
}

double Command::get_double(const std::string& key) const {
    const std::string& s = get(key);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError("--" + key + ": malformed number '" + s + "'");
    return v;
}

std::size_t Command::get_count(const std::string& key) const {
    const std::string& s = get(key);
    if (s.find_first_not_of("0123456789") != std::string::npos) throw UsageError("--" + key + ": expected a count");
    return std::stoull(s);
}

std::string Command::command_line() const {
    std::string s = std::string(kToolName) + ' ' + verb;
    const VerbSpec& spec = verb_spec(verb);
    if (spec.positional) s += ' ' + options.at(spec.positional->name);
    for (const auto& [k, v] : options) {
        if (v.empty() || (spec.positional && k == spec.positional->name)) continue;
        s += " --" + k + ' ' + v;
    }
    if (output_path) s += " -o " + *output_path;
    return s;
}

// ---------------------------------------------------------------- parse / execute

Command parse(const std::vector<std::string>& argv) {
    CLI::App app{"space-time block code laboratory", kToolName};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", kVersion);

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::string> outputs;
    std::map<std::string, CLI::App*> subs;
    for (const auto& v : verbs()) {
        CLI::App* sub = app.add_subcommand(v.verb, v.help);
        subs[v.verb] = sub;
        auto& store = values[v.verb];
        if (v.positional) attach(sub->add_option(v.positional->name, store[v.positional->name], v.positional->help), *v.positional);
        for (const auto& o : v.options) attach(sub->add_option("--" + o.name, store[o.name], o.help), o);
        sub->add_option("-o,--output", outputs[v.verb], "output file (default stdout)");
    }

    if (!argv.empty() && !argv.front().empty() && argv.front().front() != '-' &&
        std::none_of(verbs().begin(), verbs().end(), [&](const VerbSpec& v) { return v.verb == argv.front(); }))
        throw UsageError("unknown verb '" + argv.front() + "'");

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    Command cmd;
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        cmd.verb = "help";
        cmd.help_text = app.help();
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) cmd.help_text = sub->help();
        return cmd;
    } catch (const CLI::CallForVersion&) {
        cmd.verb = "help";
        cmd.help_text = std::string(kToolName) + ' ' + kVersion + '\n';
        return cmd;
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()));
    }

    for (const auto& [name, sub] : subs) {
        if (!sub->parsed()) continue;
        cmd.verb = name;
        const VerbSpec& spec = verb_spec(name);
        auto fill = [&](const OptSpec& o) {
            std::string v = values[name][o.name];
            cmd.options[o.name] = v.empty() ? o.fallback : v;
        };
        if (spec.positional) fill(*spec.positional);
        for (const auto& o : spec.options) fill(o);
        if (!outputs[name].empty()) cmd.output_path = outputs[name];
    }
    return cmd;
}

int execute(const Command& cmd, std::ostream& out, std::ostream& /*err*/) {
    if (cmd.help_text) {
        out << *cmd.help_text;
        return ok;
    }
    if (cmd.verb == "construct") return do_construct(cmd, out);
    if (cmd.verb == "verify") return do_verify(cmd, out);
    if (cmd.verb == "rotate") return do_rotate(cmd, out);
    if (cmd.verb == "codinggain") return do_codinggain(cmd, out);
    if (cmd.verb == "ber") return do_ber(cmd, out);
    if (cmd.verb == "mmi") return do_mmi(cmd, out);
    if (cmd.verb == "rapid") return do_rapid(cmd, out);
    throw UsageError("unknown verb '" + cmd.verb + "'");
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    try {
        return execute(parse(argv), out, err);
    } catch (const UsageError& e) {
        err << kToolName << ": " << e.what() << "\nrun '" << kToolName << " --help' for usage\n";
        return usage_error;
    } catch (const std::exception& e) {
        err << kToolName << ": error: " << e.what() << '\n';
        return runtime_error;
    }
}

std::vector<double> parse_grid(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size() || !std::isfinite(v)) throw UsageError("malformed grid '" + text + "'");
        return v;
    };
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw UsageError("grid must be start:step:stop, got '" + text + "'");
        const double a = number(parts[0]), step = number(parts[1]), b = number(parts[2]);
        if (!(step > 0) || b < a) throw UsageError("grid needs a positive step and stop >= start");
        const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < n; ++i) out.push_back(a + double(i) * step);
        return out;
    }
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
    if (out.empty()) throw UsageError("empty grid");
    return out;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace stbc::cli
