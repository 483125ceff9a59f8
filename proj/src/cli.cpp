#include "qjacobi/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qjacobi/imaging.hpp"
#include "qjacobi/jacobi.hpp"
#include "qjacobi/oracle.hpp"
#include "qjacobi/random.hpp"
#include "text_format.hpp"

namespace qjacobi::cli {

namespace {

constexpr double kOracleTolerance = 1e-8;

struct SolverFlags {
    double tol = 1e-12;
    int max_sweeps = 30;
    std::string pivot = "cyclic";
    std::uint64_t seed = 1;

    JacobiConfig config() const {
        JacobiConfig cfg;
        cfg.tol = tol;
        cfg.max_sweeps = max_sweeps;
        cfg.pivot = pivot == "classical" ? Pivot::ClassicalMaxPivot : Pivot::Cyclic;
        return cfg;
    }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--tol", f.tol, "Relative off-norm tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-sweeps", f.max_sweeps, "Sweep limit")->check(CLI::PositiveNumber);
    cmd->add_option("--pivot", f.pivot, "Pivot strategy")->check(CLI::IsMember({"cyclic", "classical"}));
    cmd->add_option("--seed", f.seed, "Seed for randomized commands");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    return out;
}

void write_sigma_csv(const std::string& path, const RealVector& sigma) {
    auto out = open_out(path);
    out << "index,sigma\n";
    for (Eigen::Index w = 0; w < sigma.size(); ++w) {
        out << w + 1 << ',' << detail::format_real(sigma(w)) << '\n';
    }
}

void write_report_csv(const std::string& path, const ConvergenceReport& rep) {
    auto out = open_out(path);
    out << "sweep,off,relative_off\n";
    for (std::size_t k = 0; k < rep.off_history.size(); ++k) {
        const double rel = rep.gram_norm > 0.0 ? rep.off_history[k] / rep.gram_norm : 0.0;
        out << k << ',' << detail::format_real(rep.off_history[k]) << ',' << detail::format_real(rel) << '\n';
    }
}

void write_factor(const std::string& path, const QMatrix& a, const std::string& warning) {
    auto out = open_out(path);
    if (!warning.empty()) {
        out << "# WARNING: " << warning << '\n';
    }
    write_qmat(out, a);
}

// --- svd --------------------------------------------------------------------

struct SvdArgs {
    SolverFlags solver;
    std::string input;
    std::string prefix;
};

int cmd_svd(const SvdArgs& args, std::ostream& out, std::ostream& err) {
    const QMatrix a = load_qmat(args.input);
    SvdOutcome res;
    std::string warning;
    int code = kOk;
    try {
        res = svd(a, args.solver.config());
    } catch (const NotConverged& e) {
        res = e.partial();
        warning = e.what();
        code = kNotConverged;
        err << "warning: " << warning << "; factors written anyway\n";
    }
    write_factor(args.prefix + "_U.qmat", res.svd.u, warning);
    write_factor(args.prefix + "_V.qmat", res.svd.v, warning);
    write_sigma_csv(args.prefix + "_sigma.csv", res.svd.sigma);
    write_report_csv(args.prefix + "_report.csv", res.report);
    out << "sweeps=" << res.report.sweeps << " rotations=" << res.report.rotations
        << " converged=" << (res.report.converged ? "yes" : "no") << '\n';
    return code;
}

// --- compress ---------------------------------------------------------------

struct CompressArgs {
    SolverFlags solver;
    std::string image;
    long rank = 1;
    std::string out;
    std::string save_compressed;
};

int cmd_compress(const CompressArgs& args, std::ostream& out) {
    const imaging::ColorImage img = imaging::read_png(args.image);
    const imaging::CompressionResult res = imaging::compress(img, args.rank, args.solver.config());
    imaging::write_png(res.reconstructed, args.out);
    if (!args.save_compressed.empty()) {
        imaging::save_compressed(res.compressed, args.save_compressed);
    }
    out << "PSNR_dB=" << std::setprecision(10) << res.psnr_db << '\n';
    out << "storage_units=" << res.compressed.storage_units() << " original_units=" << 3 * img.height() * img.width()
        << '\n';
    return kOk;
}

// --- singvals ---------------------------------------------------------------

struct SingvalsArgs {
    SolverFlags solver;
    std::string image;
    std::string input;
    std::string csv;
};

int cmd_singvals(const SingvalsArgs& args, std::ostream& out) {
    const QMatrix a = args.image.empty() ? load_qmat(args.input) : imaging::image_to_qmatrix(imaging::read_png(args.image));
    JacobiConfig cfg = args.solver.config();
    cfg.sort = SortOrder::Descending;
    const SvdOutcome res = svd(a, cfg);
    write_sigma_csv(args.csv, res.svd.sigma);
    out << "wrote " << res.svd.sigma.size() << " singular values\n";
    return kOk;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
    SolverFlags solver;
    std::string size = "10,3";
    int trials = 5;
    bool corrupt = false;
    std::string compressed;
    std::string reference;
};

std::pair<long, long> parse_size(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
        throw InvalidInput("--size expects 'm,n', got '" + s + "'");
    }
    const long m = detail::parse_count(s.substr(0, comma), 0);
    const long n = detail::parse_count(s.substr(comma + 1), 0);
    return {m, n};
}

int verify_round_trip(const VerifyArgs& args, std::ostream& out) {
    const imaging::CompressedImage c = imaging::load_compressed(args.compressed);
    const imaging::ColorImage rebuilt = imaging::quantize(imaging::reconstruct(c));
    const imaging::ColorImage reference = imaging::read_png(args.reference);
    const bool same = rebuilt.height() == reference.height() && rebuilt.width() == reference.width() &&
                      rebuilt.r == reference.r && rebuilt.g == reference.g && rebuilt.b == reference.b;
    out << "reconstruction " << (same ? "identical" : "differs") << '\n';
    return same ? kOk : kMismatch;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
    if (!args.compressed.empty() || !args.reference.empty()) {
        if (args.compressed.empty() || args.reference.empty()) {
            throw InvalidInput("--compressed and --reference go together");
        }
        return verify_round_trip(args, out);
    }
    const auto [m, n] = parse_size(args.size);
    Rng rng(args.solver.seed);
    JacobiConfig cfg = args.solver.config();
    cfg.sort = SortOrder::Descending;
    bool all_ok = true;
    out << "trial,m,n,max_rel_diff,status\n";
    for (int t = 0; t < args.trials; ++t) {
        const QMatrix a = random_uniform(m, n, rng);
        RealVector got = svd(a, cfg).svd.sigma;
        if (args.corrupt) {
            got(0) *= 1.0 + 1e-6;
        }
        // Non-tall inputs are checked through A^*, which shares the singular values.
        RealVector want;
        try {
            want = oracle::singular_values_via_counterpart(m >= n ? a : conj_transpose(a));
        } catch (const MultiplicityViolation& e) {
            out << t << ',' << m << ',' << n << ",nan,FAIL (" << e.what() << ")\n";
            all_ok = false;
            continue;
        }
        double worst = 0.0;
        for (Eigen::Index w = 0; w < want.size(); ++w) {
            const double scale = std::max(want(w), 1e-300);
            worst = std::max(worst, std::fabs(got(w) - want(w)) / scale);
        }
        const bool ok = worst <= kOracleTolerance;
        all_ok = all_ok && ok;
        out << t << ',' << m << ',' << n << ',' << std::setprecision(3) << std::scientific << worst
            << std::defaultfloat << ',' << (ok ? "pass" : "FAIL") << '\n';
    }
    return all_ok ? kOk : kMismatch;
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
    SolverFlags solver;
    std::string sizes = "10:100:5";
    std::string csv;
};

std::vector<long> parse_sizes(const std::string& text) {
    std::vector<long> out;
    if (text.find(':') != std::string::npos) {
        std::vector<long> parts;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ':')) {
            parts.push_back(detail::parse_count(tok, 0));
        }
        if (parts.size() != 3) {
            throw InvalidInput("--sizes range expects start:stop:step");
        }
        for (long m = parts[0]; m <= parts[1]; m += parts[2]) {
            out.push_back(m);
        }
    } else {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            out.push_back(detail::parse_count(tok, 0));
        }
    }
    if (out.empty()) {
        throw InvalidInput("--sizes is empty");
    }
    return out;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
    const auto sizes = parse_sizes(args.sizes);
    Rng rng(args.solver.seed);
    auto csv = open_out(args.csv);
    csv << "m,n,sweeps,rotations,seconds,residual,rel_residual\n";
    for (long m : sizes) {
        const long n = std::max(1L, m / 5);
        const QMatrix a = random_uniform(m, n, rng);
        const auto start = std::chrono::steady_clock::now();
        const SvdOutcome res = svd(a, args.solver.config());
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const double residual = svd_residual(a, res.svd);
        csv << m << ',' << n << ',' << res.report.sweeps << ',' << res.report.rotations << ','
            << detail::format_real(secs) << ',' << detail::format_real(residual) << ','
            << detail::format_real(residual / frobenius(a)) << '\n';
        out << m << 'x' << n << ": " << res.report.sweeps << " sweeps, " << secs << " s\n";
    }
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quaternion SVD by structure-preserving one-sided Jacobi rotations", "qsvd"};
    app.require_subcommand(1);

    SvdArgs svd_args;
    auto* svd_cmd = app.add_subcommand("svd", "Decompose a QMAT matrix");
    add_solver_flags(svd_cmd, svd_args.solver);
    svd_cmd->add_option("--input", svd_args.input, "Input QMAT file")->required();
    svd_cmd->add_option("--out-prefix", svd_args.prefix, "Prefix for _U/_V/_sigma/_report outputs")->required();

    CompressArgs comp_args;
    auto* comp_cmd = app.add_subcommand("compress", "Low-rank color image compression");
    add_solver_flags(comp_cmd, comp_args.solver);
    comp_cmd->add_option("--image", comp_args.image, "Input PNG")->required();
    comp_cmd->add_option("--rank", comp_args.rank, "Retained rank S")->required()->check(CLI::PositiveNumber);
    comp_cmd->add_option("--out", comp_args.out, "Reconstructed PNG")->required();
    comp_cmd->add_option("--save-compressed", comp_args.save_compressed, "Write the QSVDC factors");

    SingvalsArgs sv_args;
    auto* sv_cmd = app.add_subcommand("singvals", "Dump singular values as CSV");
    add_solver_flags(sv_cmd, sv_args.solver);
    auto* sv_image = sv_cmd->add_option("--image", sv_args.image, "Input PNG");
    auto* sv_input = sv_cmd->add_option("--input", sv_args.input, "Input QMAT file");
    sv_image->excludes(sv_input);
    sv_cmd->add_option("--csv", sv_args.csv, "Output CSV")->required();

    VerifyArgs ver_args;
    auto* ver_cmd = app.add_subcommand("verify", "Cross-check the solver against the real-counterpart oracle");
    add_solver_flags(ver_cmd, ver_args.solver);
    ver_cmd->add_option("--size", ver_args.size, "Matrix shape m,n");
    ver_cmd->add_option("--trials", ver_args.trials, "Number of random matrices")->check(CLI::PositiveNumber);
    ver_cmd->add_option("--compressed", ver_args.compressed, "QSVDC file to rebuild");
    ver_cmd->add_option("--reference", ver_args.reference, "PNG the rebuilt image must equal");
    ver_cmd->add_flag("--corrupt", ver_args.corrupt, "Perturb the solver output (test hook)")->group("");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Time random m x m/5 decompositions");
    add_solver_flags(bench_cmd, bench_args.solver);
    bench_cmd->add_option("--sizes", bench_args.sizes, "start:stop:step or comma list of m");
    bench_cmd->add_option("--csv", bench_args.csv, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*svd_cmd) {
            return cmd_svd(svd_args, out, err);
        }
        if (*comp_cmd) {
            return cmd_compress(comp_args, out);
        }
        if (*sv_cmd) {
            if (sv_args.image.empty() == sv_args.input.empty()) {
                throw InvalidInput("singvals needs exactly one of --image or --input");
            }
            return cmd_singvals(sv_args, out);
        }
        if (*ver_cmd) {
            return cmd_verify(ver_args, out);
        }
        return cmd_bench(bench_args, out);
    } catch (const NotConverged& e) {
        err << "error: " << e.what() << '\n';
        return kNotConverged;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

} // namespace qjacobi::cli
