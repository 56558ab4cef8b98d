// lpcompact command-line front end: parse declarative instance files,
// dispatch the analyses, and emit deterministic JSON reports and CSV
// profiles. Exit codes: 0 ok, 1 verification failures, 2 parse error,
// 3 dimension mismatch, 4 missing tail certificate.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpcompact/cfun.hpp"
#include "lpcompact/diagonal_operator.hpp"
#include "lpcompact/fixtures.hpp"
#include "lpcompact/hilbert.hpp"
#include "lpcompact/reports.hpp"
#include "lpcompact/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitNoCertificate = 4;

struct CliConfig {
    std::string input;
    std::string p_override;
    std::string eps_csv = "0.5,0.3,0.2";
    std::uint64_t seed = 1;
    int restarts = 32;
    int iters = 200;
    std::string out_dir = "out";
    std::string s0_label;
    std::size_t samples = 64;
};

std::vector<double> parse_eps_grid(const std::string& csv) {
    std::vector<double> grid;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const double e = std::stod(item);
        if (!(e > 0.0)) throw std::invalid_argument("--eps entries must be positive");
        grid.push_back(e);
    }
    if (grid.empty()) throw std::invalid_argument("--eps produced an empty grid");
    return grid;
}

void report_parse_error(const std::string& path, const std::string& text, std::size_t byte,
                        const std::string& what) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::cerr << path << ":" << line << ":" << col << ": parse error: " << what << "\n";
}

json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << path << ": cannot open input file\n";
        std::exit(kExitParse);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        report_parse_error(path, text, e.byte > 0 ? e.byte - 1 : 0, e.what());
        std::exit(kExitParse);
    }
}

lpc::cplx parse_complex(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("complex entries must be numbers or [re, im] pairs");
}

Eigen::VectorXcd parse_vector(const json& j, Eigen::Index expected) {
    if (!j.is_array()) throw std::invalid_argument("vector entries must be arrays");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_complex(j[i]);
    if (expected >= 0 && v.size() != expected)
        throw lpc::DimensionMismatchError("vector has " + std::to_string(v.size()) + " entries, expected " +
                                          std::to_string(expected));
    return v;
}

Eigen::MatrixXcd parse_matrix_row_major(const json& j, int d) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(d) * d)
        throw lpc::DimensionMismatchError("matrix must be a row-major array of d*d entries");
    Eigen::MatrixXcd m(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = parse_complex(j[static_cast<std::size_t>(r) * d + c]);
    return m;
}

lpc::Exponent exponent_from(const json& j) {
    if (j.is_string()) return lpc::parse_exponent(j.get<std::string>());
    if (j.is_number()) return lpc::Exponent(j.get<double>());
    throw std::invalid_argument("p must be a number or the string \"inf\"");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

lpc::AscentOptions options_from(const CliConfig& cfg) {
    lpc::AscentOptions opt;
    opt.seed = cfg.seed;
    opt.restarts = cfg.restarts;
    opt.iters = cfg.iters;
    opt.dual_samples = cfg.samples;
    return opt;
}

lpc::RunMeta meta_from(const CliConfig& cfg, const std::string& command, const std::vector<double>& eps) {
    lpc::RunMeta meta;
    meta.command = command;
    meta.input_path = cfg.input;
    meta.seed = cfg.seed;
    meta.restarts = cfg.restarts;
    meta.iters = cfg.iters;
    meta.eps_grid = eps;
    return meta;
}

// ---------------------------------------------------------------------------
// analyze: OperatorSeq membership report
// ---------------------------------------------------------------------------
int cmd_analyze(const CliConfig& cfg) {
    const json spec = load_json(cfg.input);
    const auto eps = parse_eps_grid(cfg.eps_csv);
    const lpc::AscentOptions opt = options_from(cfg);
    const lpc::RunMeta meta = meta_from(cfg, "analyze", eps);

    const lpc::Exponent p = !cfg.p_override.empty() ? lpc::parse_exponent(cfg.p_override)
                                                    : exponent_from(spec.at("p"));
    const json& space = spec.at("space");
    const std::string kind = space.at("space").get<std::string>();
    const json& terms = spec.at("terms");
    if (!terms.is_array()) throw std::invalid_argument("terms must be an array");

    lpc::MembershipReport rep;
    std::vector<std::pair<std::size_t, double>> profile;
    if (kind == "cn") {
        const int n = space.at("n").get<int>();
        const lpc::Exponent r = exponent_from(space.at("r"));
        std::vector<Eigen::VectorXcd> elems;
        for (const auto& t : terms) elems.push_back(parse_vector(t, n));
        lpc::OperatorSeq<lpc::CnSpace> seq(lpc::CnSpace(n, r), std::move(elems), p);
        rep = lpc::classify(seq, eps, opt);
    } else if (kind == "cgrid") {
        std::vector<std::string> labels;
        const json& pts = space.at("points");
        if (pts.is_number()) {
            for (int i = 0; i < pts.get<int>(); ++i) labels.push_back("s" + std::to_string(i));
        } else {
            for (const auto& l : pts) labels.push_back(l.get<std::string>());
        }
        std::vector<Eigen::VectorXcd> elems;
        for (const auto& t : terms) elems.push_back(parse_vector(t, static_cast<Eigen::Index>(labels.size())));
        lpc::OperatorSeq<lpc::GridFunctionSpace> seq(lpc::GridFunctionSpace(labels), std::move(elems), p);
        rep = lpc::classify(seq, eps, opt);
    } else if (kind == "mat") {
        const int d = space.at("d").get<int>();
        std::vector<Eigen::MatrixXcd> elems;
        for (const auto& t : terms) elems.push_back(parse_matrix_row_major(t, d));
        lpc::OperatorSeq<lpc::MatrixSpace> seq(lpc::MatrixSpace(d), std::move(elems), p);
        rep = lpc::classify(seq, eps, opt);
    } else {
        throw std::invalid_argument("unknown space kind '" + kind + "'");
    }

    const std::filesystem::path out(cfg.out_dir);
    write_file(out / "report.json", lpc::membership_json(rep, meta).dump());
    write_file(out / "tails.csv", lpc::tail_profile_csv(rep.shadow_tail_profile));
    std::cout << "analyze: wrote " << (out / "report.json").string() << " and tails.csv\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// numrange: joint numerical range and radius report
// ---------------------------------------------------------------------------
int cmd_numrange(const CliConfig& cfg) {
    const json spec = load_json(cfg.input);
    const auto eps = parse_eps_grid(cfg.eps_csv);
    const lpc::AscentOptions opt = options_from(cfg);
    const lpc::RunMeta meta = meta_from(cfg, "numrange", eps);

    const int d = spec.at("d").get<int>();
    const lpc::Exponent p = !cfg.p_override.empty() ? lpc::parse_exponent(cfg.p_override)
                                                    : exponent_from(spec.at("p"));
    std::vector<Eigen::MatrixXcd> ops;
    for (const auto& t : spec.at("operators")) ops.push_back(parse_matrix_row_major(t, d));
    const lpc::OperatorTuple tuple(d, std::move(ops), p);

    const auto rep = lpc::build_radius_report(tuple, opt);
    const auto sample = lpc::numerical_range_sample(tuple, std::max<std::size_t>(cfg.samples, 1), cfg.seed, opt);

    lpc::JsonValue j = lpc::radius_json(rep, tuple, meta);
    j.set("range_sample_omega", sample.omega_with_pool);
    j.set("range_sample_count", sample.points.size());
    j.set("range_tails", lpc::range_tail_json(lpc::range_tail_report(tuple, sample, eps, cfg.seed)));

    const std::filesystem::path out(cfg.out_dir);
    write_file(out / "radius.json", j.dump());
    write_file(out / "range.csv", lpc::range_sample_csv(sample, tuple.size(), tuple.d));
    std::cout << "numrange: wrote " << (out / "radius.json").string() << " and range.csv\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// cfun: grid-function continuity and compactness report
// ---------------------------------------------------------------------------
int cmd_cfun(const CliConfig& cfg) {
    const json spec = load_json(cfg.input);
    const auto eps = parse_eps_grid(cfg.eps_csv);
    const lpc::RunMeta meta = meta_from(cfg, "cfun", eps);

    const lpc::Exponent p = !cfg.p_override.empty() ? lpc::parse_exponent(cfg.p_override)
                                                    : exponent_from(spec.at("p"));
    lpc::Grid grid;
    for (const auto& pt : spec.at("points")) {
        lpc::GridPoint g;
        g.label = pt.at("label").get<std::string>();
        for (const auto& c : pt.at("coords")) g.coords.push_back(c.get<double>());
        grid.points.push_back(std::move(g));
    }
    for (const auto& e : spec.at("adjacency"))
        grid.adjacency.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());

    std::vector<Eigen::VectorXcd> comps;
    for (const auto& c : spec.at("components")) comps.push_back(parse_vector(c, grid.size()));
    const lpc::GridFunctionSeq f(std::move(grid), std::move(comps), p);

    int s0 = 0;
    if (!cfg.s0_label.empty())
        s0 = f.grid.index_of(cfg.s0_label);
    else if (spec.contains("s0"))
        s0 = spec.at("s0").is_string() ? f.grid.index_of(spec.at("s0").get<std::string>())
                                       : spec.at("s0").get<int>();

    lpc::JsonValue j = lpc::JsonValue::object();
    j.set("meta", lpc::meta_json(meta));
    lpc::JsonValue input = lpc::JsonValue::object();
    input.set("points", f.grid.size());
    input.set("components", f.size());
    input.set("p", p.str());
    j.set("input", std::move(input));

    const auto modulus = lpc::modulus_of_continuity(f, p);
    lpc::JsonValue mod = lpc::JsonValue::array();
    for (const auto& [delta, omega] : modulus) {
        lpc::JsonValue row = lpc::JsonValue::object();
        row.set("delta", delta);
        row.set("omega", omega);
        mod.push(std::move(row));
    }
    j.set("modulus", std::move(mod));

    const std::filesystem::path out(cfg.out_dir);
    write_file(out / "modulus.csv", lpc::modulus_csv(modulus));

    bool premise_failed = false;
    if (!p.is_inf()) {
        std::vector<std::size_t> cutoffs(f.size() + 1);
        for (std::size_t m = 0; m <= f.size(); ++m) cutoffs[m] = m;
        const auto tails = lpc::image_tail_profile(f, cutoffs);
        write_file(out / "image_tails.csv", lpc::tail_profile_csv(tails));

        lpc::JsonValue checks = lpc::JsonValue::array();
        for (double e : eps) {
            try {
                const auto rep = lpc::continuity_bound_check(f, s0, e);
                checks.push(lpc::continuity_bound_json(rep));
            } catch (const lpc::NoCertificateError&) {
                premise_failed = true;
                lpc::JsonValue fail = lpc::JsonValue::object();
                fail.set("epsilon", e);
                fail.set("no_certificate", true);
                checks.push(std::move(fail));
            }
        }
        j.set("bound_checks", std::move(checks));
        j.set("classification", premise_failed ? "non-compact-type" : "compact-type");
    } else {
        const auto eq = lpc::equicontinuity_check_pinf(f, eps);
        lpc::JsonValue nets = lpc::JsonValue::array();
        for (const auto& n : eq.nets) {
            lpc::JsonValue row = lpc::JsonValue::object();
            row.set("epsilon", n.epsilon);
            row.set("net_size", n.net_size);
            nets.push(std::move(row));
        }
        j.set("component_nets", std::move(nets));
        bool compressible = true;
        for (const auto& n : eq.nets) compressible = compressible && n.net_size < f.size();
        j.set("classification", compressible || f.size() == 1 ? "compact-type" : "non-compact-type");
    }

    write_file(out / "cfun.json", j.dump());
    std::cout << "cfun: wrote " << (out / "cfun.json").string() << "\n";
    return premise_failed ? kExitNoCertificate : kExitOk;
}

// ---------------------------------------------------------------------------
// verify: seeded self-check battery
// ---------------------------------------------------------------------------
int cmd_verify(const CliConfig& cfg) {
    const auto eps = parse_eps_grid(cfg.eps_csv);
    const lpc::AscentOptions opt = options_from(cfg);
    const lpc::RunMeta meta = meta_from(cfg, "verify", eps);

    const auto results = lpc::run_verification(opt);
    bool all_pass = true;
    lpc::JsonValue rows = lpc::JsonValue::array();
    std::printf("%-32s %-6s %-12s %-12s\n", "check", "pass", "worst", "tolerance");
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::printf("%-32s %-6s %-12.3e %-12.3e\n", r.name.c_str(), r.pass ? "yes" : "NO", r.worst, r.tolerance);
        lpc::JsonValue row = lpc::JsonValue::object();
        row.set("name", r.name);
        row.set("pass", r.pass);
        row.set("worst", r.worst);
        row.set("tolerance", r.tolerance);
        row.set("detail", r.detail);
        rows.push(std::move(row));
    }
    lpc::JsonValue j = lpc::JsonValue::object();
    j.set("meta", lpc::meta_json(meta));
    j.set("checks", std::move(rows));
    j.set("all_pass", all_pass);
    write_file(std::filesystem::path(cfg.out_dir) / "verify.json", j.dump());
    if (!all_pass) {
        std::cout << "verify: FAILURES listed above\n";
        return kExitVerifyFailed;
    }
    std::cout << "verify: all checks passed\n";
    return kExitOk;
}

int dispatch(const std::string& command, const CliConfig& cfg) {
    try {
        if (command == "analyze") return cmd_analyze(cfg);
        if (command == "numrange") return cmd_numrange(cfg);
        if (command == "cfun") return cmd_cfun(cfg);
        return cmd_verify(cfg);
    } catch (const lpc::DimensionMismatchError& e) {
        std::cerr << "dimension mismatch: " << e.what() << "\n";
        return kExitDimension;
    } catch (const lpc::NoCertificateError& e) {
        std::cerr << "no certificate: " << e.what() << "\n";
        return kExitNoCertificate;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitParse;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lpcompact: diagonal operators on sequence spaces, compactness certificates, "
                 "and joint numerical ranges"};
    app.require_subcommand(1);

    CliConfig cfg;
    const auto add_common = [&cfg](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("--input", cfg.input, "instance JSON file");
        if (needs_input) in->required();
        sub->add_option("--p", cfg.p_override, "exponent override (number, ratio like 4/3, or inf)");
        sub->add_option("--eps", cfg.eps_csv, "comma-separated tolerance grid");
        sub->add_option("--seed", cfg.seed, "64-bit seed recorded in every report");
        sub->add_option("--restarts", cfg.restarts, "optimizer restarts");
        sub->add_option("--iters", cfg.iters, "optimizer iterations per restart");
        sub->add_option("--samples", cfg.samples, "dual-ball / range sample count");
        sub->add_option("--out", cfg.out_dir, "output directory");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "membership report for a vector-valued sequence");
    add_common(analyze, true);
    CLI::App* numrange = app.add_subcommand("numrange", "joint numerical range and radius of an operator tuple");
    add_common(numrange, true);
    CLI::App* cfun = app.add_subcommand("cfun", "continuity and compactness of a grid-function sequence");
    add_common(cfun, true);
    cfun->add_option("--s0", cfg.s0_label, "base point label for the neighbourhood bound check");
    CLI::App* verify = app.add_subcommand("verify", "run the seeded identity and inequality battery");
    add_common(verify, false);

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    return dispatch(command, cfg);
}
