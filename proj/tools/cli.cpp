#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "commdiag/eigen.hpp"
#include "commdiag/errors.hpp"
#include "commdiag/generator.hpp"
#include "commdiag/matrix_io.hpp"
#include "commdiag/partition.hpp"
#include "commdiag/permutation.hpp"
#include "commdiag/simdiag.hpp"
#include "commdiag/svd.hpp"
#include "commdiag/worked_examples.hpp"
#include "report.hpp"

namespace commdiag::cli {

namespace {

struct Options {
    ToleranceConfig tol;
    std::string format = "text";
    std::string out_prefix;

    std::string path_a;
    std::string path_b;
    std::string path_p;
    std::string path_q;
    std::string report_path;
    std::string spec;
    bool sorted = false;
    bool force_full = false;
    bool conjugate_mode = false;
    bool star = false;
};

Matrix load(Report& report, const std::string& role, const std::string& path) {
    const std::string bytes = read_text_file(path);
    report.add_input(role, path, bytes);
    try {
        return parse_matrix(bytes);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), e.column(), path + ": " + e.detail());
    }
}

void require_square_pair(const Matrix& a, const Matrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw DimensionError("inputs must be square matrices of the same order");
    }
}

void write_output(Report& report, const Options& opt, const std::string& suffix, const Matrix& m,
                  const std::vector<std::string>& notes) {
    if (opt.out_prefix.empty()) return;
    const std::string path = opt.out_prefix + "_" + suffix;
    write_matrix_file(path, m, notes);
    report.details()["outputs"][suffix] = path;
}

json cluster_sizes(const SpectralPartition& p) {
    json arr = json::array();
    for (std::size_t s : p.sizes()) arr.push_back(s);
    return arr;
}

void cmd_commute(Report& report, const Options& opt) {
    const Matrix a = load(report, "a", opt.path_a);
    const Matrix b = load(report, "b", opt.path_b);
    require_square_pair(a, b);
    const CommuteCheck c = check_commute(a, b, opt.tol);
    report.add_residual("commutator", c.residual, opt.tol.rtol);
    report.details()["star_commutator"] = check_star_commute(a, b, opt.tol).residual;
}

void cmd_eigen(Report& report, const Options& opt) {
    const Matrix a = load(report, "a", opt.path_a);
    if (!a.is_square()) throw DimensionError("eigen needs a square matrix");
    const EigenDecomposition d = eigendecompose(a, opt.tol);
    report.add_residual("eigen", d.residual, opt.tol.rtol);
    report.add_spectrum("eigenvalues", spectrum_json(d.eigenvalues));
    report.details()["cond_estimate"] = d.cond_estimate;
    report.details()["is_normal"] = is_normal(a, opt.tol);
    report.details()["cluster_sizes"] = cluster_sizes(cluster_eigenvalues(d.eigenvalues, opt.tol));
    write_output(report, opt, "s", d.s, {"eigenvector matrix of " + opt.path_a});
}

void cmd_simdiag(Report& report, const Options& opt) {
    const Matrix a = load(report, "a", opt.path_a);
    const Matrix b = load(report, "b", opt.path_b);
    require_square_pair(a, b);
    const CommuteCheck c = check_commute(a, b, opt.tol);
    report.add_residual("commutator", c.residual, opt.tol.rtol);
    if (!c.ok) return;

    SimDiagOptions sd;
    sd.force_full_pipeline = opt.force_full;
    const SimDiagResult r = simultaneous_diagonalize(a, b, opt.tol, sd);
    report.add_residual("residual_a", r.residual_a, opt.tol.rtol);
    report.add_residual("residual_b", r.residual_b, opt.tol.rtol);
    report.add_spectrum("diag_a", spectrum_json(r.diag_a));
    report.add_spectrum("diag_b", spectrum_json(r.diag_b));
    report.details()["used_shortcut"] = r.used_shortcut;
    report.details()["cluster_sizes_a"] = cluster_sizes(r.partition_a);
    write_output(report, opt, "s", r.s_common, {"common eigenvector matrix of " + opt.path_a + " and " + opt.path_b});
}

void cmd_svd(Report& report, const Options& opt) {
    const Matrix a = load(report, "a", opt.path_a);
    const Matrix b = load(report, "b", opt.path_b);
    require_square_pair(a, b);
    const CommuteCheck c = check_commute(a, b, opt.tol);
    const CommuteCheck s = check_star_commute(a, b, opt.tol);
    report.add_residual("commutator", c.residual, opt.tol.rtol);
    report.add_residual("star_commutator", s.residual, opt.tol.rtol);
    if (!c.ok || !s.ok) return;

    SvdOptions so;
    so.sort_descending = opt.sorted;
    const CommutingSvdResult r = svd_commuting_pair(a, b, opt.tol, so);
    const double n = static_cast<double>(a.rows());
    report.add_residual("reconstruction_a", r.residual_a, opt.tol.rtol);
    report.add_residual("reconstruction_b", r.residual_b, opt.tol.rtol);
    report.add_residual("u_unitarity", unitarity_defect(r.u), opt.tol.rtol * n);
    report.add_residual("v_a_unitarity", unitarity_defect(r.v_a), opt.tol.rtol * n);
    report.add_residual("v_b_unitarity", unitarity_defect(r.v_b), opt.tol.rtol * n);
    report.add_spectrum("sigma_a", spectrum_json(r.sigma_a));
    report.add_spectrum("sigma_b", spectrum_json(r.sigma_b));
    report.details()["sorted"] = opt.sorted;
    write_output(report, opt, "u", r.u, {"shared left singular vectors"});
    write_output(report, opt, "v_a", r.v_a, {"right singular vectors of " + opt.path_a});
    write_output(report, opt, "v_b", r.v_b, {"right singular vectors of " + opt.path_b});
}

void cmd_permute(Report& report, const Options& opt) {
    const Matrix a = load(report, "a", opt.path_a);
    const PermutationSpec p = PermutationSpec::from_matrix(load(report, "p", opt.path_p));
    json image = p.image();
    report.details()["p_image"] = image;

    Matrix permuted;
    const bool general = !opt.path_q.empty();
    if (general) {
        const PermutationSpec q = PermutationSpec::from_matrix(load(report, "q", opt.path_q));
        report.details()["q_image"] = q.image();
        if (p.size() != a.rows() || q.size() != a.cols()) throw DimensionError("permutation orders do not match the matrix");
        permuted = general_permute(a, p, q);
    } else {
        if (!a.is_square() || p.size() != a.rows()) throw DimensionError("conjugation needs a square matrix of the permutation's order");
        permuted = conjugate(a, p);
    }
    report.details()["mode"] = general ? "general" : "conjugate";

    const std::vector<double> sv = singular_values(a, opt.tol);
    const std::vector<double> sv_hat = singular_values(permuted, opt.tol);
    ComplexVector sv_c(sv.begin(), sv.end());
    ComplexVector sv_hat_c(sv_hat.begin(), sv_hat.end());
    ComplexVector joined = sv_c;
    joined.insert(joined.end(), sv_hat_c.begin(), sv_hat_c.end());
    report.add_residual("singular_pairing_gap", greedy_pairing_gap(sv_c, sv_hat_c), cluster_radius(joined, opt.tol));
    report.add_spectrum("singular_values", spectrum_json(sv_hat));

    if (!general) {
        const InvarianceReport inv = invariance_report(a, permuted, opt.tol);
        ComplexVector ev = eigenvalues(a, opt.tol);
        ComplexVector ev_hat = eigenvalues(permuted, opt.tol);
        ComplexVector both = ev;
        both.insert(both.end(), ev_hat.begin(), ev_hat.end());
        report.add_residual("eigen_pairing_gap", inv.eigen_gap, cluster_radius(both, opt.tol));
        report.add_spectrum("eigenvalues", spectrum_json(ev_hat));
    }

    if (opt.out_prefix.empty()) {
        report.details()["matrix"] = render_matrix(permuted);
    } else {
        write_output(report, opt, "permuted", permuted, {general ? "P A Q" : "P A P^T"});
    }
}

EigenvalueMode parse_mode(const std::string& s) {
    if (s == "complex") return EigenvalueMode::complex;
    if (s == "real") return EigenvalueMode::real;
    if (s == "nonneg") return EigenvalueMode::nonneg;
    throw InvalidSpec("eigenvalue_mode must be complex, real or nonneg, got '" + s + "'");
}

PairSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidSpec(std::string("spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidSpec("spec must be a JSON object");

    static const std::vector<std::string> known = {"n", "multiplicities_a", "eigenvalue_mode", "basis_mode", "seed",
                                                   "zero_eigenvalue"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) throw InvalidSpec("unknown spec key '" + key + "'");
    }

    PairSpec spec;
    try {
        spec.n = j.at("n").get<std::size_t>();
        spec.multiplicities_a = j.contains("multiplicities_a") ? j["multiplicities_a"].get<std::vector<std::size_t>>()
                                                               : std::vector<std::size_t>(spec.n, 1);
        spec.eigenvalue_mode = parse_mode(j.value("eigenvalue_mode", std::string("complex")));
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.zero_eigenvalue = j.value("zero_eigenvalue", false);
        if (j.contains("basis_mode")) {
            const json& bm = j["basis_mode"];
            const std::string kind = bm.is_string() ? bm.get<std::string>() : bm.at("kind").get<std::string>();
            if (kind == "unitary") {
                spec.basis_mode.kind = BasisKind::unitary;
            } else if (kind == "general") {
                spec.basis_mode.kind = BasisKind::general;
                spec.basis_mode.cond_target = bm.is_object() ? bm.value("cond_target", 1.0) : 1.0;
            } else {
                throw InvalidSpec("basis_mode must be unitary or general, got '" + kind + "'");
            }
        }
    } catch (const json::exception& e) {
        throw InvalidSpec(std::string("malformed spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

void cmd_gen(Report& report, const Options& opt) {
    const bool inline_json = opt.spec.find('{') != std::string::npos;
    const std::string text = inline_json ? opt.spec : read_text_file(opt.spec);
    if (!inline_json) report.add_input("spec", opt.spec, text);
    const PairSpec spec = parse_spec(text);

    const MatrixPair pair = opt.star ? generate_star_commuting_pair(spec) : generate_commuting_pair(spec);
    report.details()["algorithm"] = std::string(kGeneratorAlgorithm);
    report.details()["kind"] = opt.star ? "star_commuting" : "commuting";
    report.details()["seed"] = spec.seed;
    report.details()["n"] = spec.n;
    report.details()["multiplicities_a"] = spec.multiplicities_a;

    report.add_residual("commutator", check_commute(pair.a, pair.b, opt.tol).residual, opt.tol.rtol);
    if (opt.star) report.add_residual("star_commutator", check_star_commute(pair.a, pair.b, opt.tol).residual, opt.tol.rtol);

    if (opt.out_prefix.empty()) {
        report.details()["a"] = render_matrix(pair.a);
        report.details()["b"] = render_matrix(pair.b);
        return;
    }
    const std::vector<std::string> notes = {"generated by " + std::string(kGeneratorAlgorithm) + ", seed " +
                                            std::to_string(spec.seed)};
    write_output(report, opt, "a", pair.a, notes);
    write_output(report, opt, "b", pair.b, notes);
}

void cmd_fixtures(Report& report, const Options& opt) {
    if (opt.out_prefix.empty()) throw InvalidSpec("fixtures needs --out DIR");
    std::error_code ec;
    std::filesystem::create_directories(opt.out_prefix, ec);
    if (ec) throw IoError("cannot create '" + opt.out_prefix + "': " + ec.message());
    json written = json::array();
    for (const auto& f : worked::all_fixtures()) {
        const std::string path = (std::filesystem::path(opt.out_prefix) / f.name).string();
        write_matrix_file(path, f.value, f.notes);
        written.push_back(path);
    }
    report.details()["written"] = written;
}

int run_parsed(const std::string& command, const Options& opt, const std::vector<std::string>& args,
               std::ostream& out, std::ostream& err);

void cmd_verify(Report& report, const Options& opt, std::ostream& err) {
    const std::string text = read_text_file(opt.report_path);
    report.add_input("report", opt.report_path, text);
    json stored;
    try {
        stored = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(1, 1, opt.report_path + " is not a JSON report: " + e.what());
    }
    if (!stored.is_object() || !stored.contains("invocation") || !stored.contains("status")) {
        throw ParseError(1, 1, opt.report_path + " is not a report produced with --format json");
    }

    // 1. the stored status must agree with its residuals
    bool consistent = true;
    bool within = true;
    const json residuals = stored.value("residuals", json::object());
    for (const auto& [name, value] : residuals.items()) {
        const json t = stored.value("thresholds", json::object()).value(name, json());
        if (!value.is_number() || !t.is_number()) {
            consistent = false;
            continue;
        }
        within = within && value.get<double>() <= t.get<double>();
    }
    const std::string stored_status = stored["status"].get<std::string>();
    if (stored.contains("error")) {
        consistent = consistent && stored_status != "ok";
    } else {
        consistent = consistent && (stored_status == "ok") == within;
    }

    // 2. inputs unchanged
    bool digests_match = true;
    const json inputs = stored.value("inputs", json::object());
    for (const auto& [role, info] : inputs.items()) {
        try {
            digests_match = digests_match && digest(read_text_file(info.at("path").get<std::string>())) ==
                                                 info.at("digest").get<std::string>();
        } catch (const IoError&) {
            digests_match = false;
        }
    }

    // 3. re-running gives the same report, byte for byte
    std::vector<std::string> args = stored["invocation"].get<std::vector<std::string>>();
    bool reproduced = false;
    if (!args.empty() && args.front() != "verify") {
        std::vector<std::string> rerun;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--out" || args[i] == "--format") {
                ++i;
                continue;
            }
            rerun.push_back(args[i]);
        }
        rerun.push_back("--format");
        rerun.push_back("json");
        std::ostringstream fresh;
        std::ostringstream sink;
        run(rerun, fresh, sink);
        json fresh_json = json::parse(fresh.str(), nullptr, false);
        json expected = stored;
        if (fresh_json.is_object()) {
            // output paths and the recorded invocation legitimately differ
            fresh_json["details"].erase("outputs");
            expected["details"].erase("outputs");
            fresh_json.erase("invocation");
            expected.erase("invocation");
            reproduced = render_json(fresh_json) == render_json(expected);
        }
        if (!reproduced) err << "verify: re-running " << args.front() << " gave a different report\n";
    }

    report.details()["consistent"] = consistent;
    report.details()["digests_match"] = digests_match;
    report.details()["reproduced"] = reproduced;
    report.details()["stored_status"] = stored_status;
    report.add_residual("failed_checks", static_cast<double>(!consistent) + !digests_match + !reproduced, 0.0);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simultaneous diagonalization and SVD of commuting matrix pairs", "commdiag"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--rtol", opt.tol.rtol, "relative residual tolerance")->envname("SIMDIAG_TOL");
    app.add_option("--atol", opt.tol.atol, "absolute floor");
    app.add_option("--cluster-tol", opt.tol.cluster_tol, "eigenvalue grouping radius, relative to the spectral scale");
    app.add_option("--cond-max", opt.tol.cond_max, "largest admissible eigenvector condition estimate");
    app.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", opt.out_prefix, "prefix (directory for 'fixtures') for written matrix files");

    auto* commute = app.add_subcommand("commute", "check AB = BA");
    commute->add_option("A", opt.path_a)->required();
    commute->add_option("B", opt.path_b)->required();

    auto* eigen = app.add_subcommand("eigen", "eigendecomposition of one matrix");
    eigen->add_option("A", opt.path_a)->required();

    auto* simdiag = app.add_subcommand("simdiag", "common eigenvector matrix of a commuting pair");
    simdiag->add_option("A", opt.path_a)->required();
    simdiag->add_option("B", opt.path_b)->required();
    simdiag->add_flag("--force-full", opt.force_full, "run the block construction even for simple spectra");

    auto* svd = app.add_subcommand("svd", "SVD of a commuting, star-commuting pair with a shared U");
    svd->add_option("A", opt.path_a)->required();
    svd->add_option("B", opt.path_b)->required();
    svd->add_flag("--sorted", opt.sorted, "order columns by descending sigma_a");

    auto* permute = app.add_subcommand("permute", "permute rows and columns, check spectral invariance");
    permute->add_option("A", opt.path_a)->required();
    permute->add_option("P", opt.path_p, "permutation matrix file")->required();
    auto* conj_flag = permute->add_flag("--conjugate", opt.conjugate_mode, "P A P^T (default)");
    auto* general_opt = permute->add_option("--general", opt.path_q, "P A Q with Q read from this file");
    conj_flag->excludes(general_opt);

    auto* gen = app.add_subcommand("gen", "generate a seeded commuting pair");
    gen->add_option("--spec", opt.spec, "JSON spec, inline or a file path")->required();
    gen->add_flag("--star", opt.star, "real symmetric A, star-commuting pair");

    auto* verify = app.add_subcommand("verify", "re-check a JSON report");
    verify->add_option("REPORT", opt.report_path)->required();

    auto* fixtures = app.add_subcommand("fixtures", "write the bundled example matrices to --out DIR");
    (void)fixtures;

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    return run_parsed(command, opt, args, out, err);
}

namespace {

int run_parsed(const std::string& command, const Options& opt, const std::vector<std::string>& args,
               std::ostream& out, std::ostream& err) {
    Report report(command, opt.tol);
    report.set_invocation(args);
    try {
        opt.tol.validate();
        if (command == "commute") cmd_commute(report, opt);
        else if (command == "eigen") cmd_eigen(report, opt);
        else if (command == "simdiag") cmd_simdiag(report, opt);
        else if (command == "svd") cmd_svd(report, opt);
        else if (command == "permute") cmd_permute(report, opt);
        else if (command == "gen") cmd_gen(report, opt);
        else if (command == "fixtures") cmd_fixtures(report, opt);
        else if (command == "verify") cmd_verify(report, opt, err);
    } catch (const Error& e) {
        report.fail(e);
        err << command << ": " << e.what() << "\n";
    }

    if (opt.format == "json") {
        out << render_json(report.to_json());
    } else {
        out << report.to_text();
    }
    return report.exit_code();
}

}  // namespace

}  // namespace commdiag::cli
