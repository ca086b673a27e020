// stp: command-line front end for the semi-tensor algebra library.
//
// Exit status: 0 success, 1 domain error, 2 parse/usage error. Errors are
// reported as one JSON line {"error": code, "message": ...} on stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stp/io.hpp"
#include "stp/stp.hpp"

namespace {

using stp::io::json;

struct Options {
    std::string scalar = "rational";
    std::optional<double> tol;
    std::string out;
    std::string format = "json";
    std::optional<std::string> first;
    std::optional<std::string> second;
    std::vector<std::string> inputs;

    // verb-specific
    bool right = false;
    bool subtract = false;
    std::string kernel = "naive";
    std::string a1 = "[1,2]";
    int nmax = 6;
    std::string sizes = "4,5,5,4;6,7,7,6;8,9,9,8";
    int reps = 5;
    std::uint64_t seed = 1;
    std::string mu = "1/1";
    std::size_t imax = 2;
};

stp::Tolerance tolerance_of(const Options& o)
{
    stp::Tolerance tol;
    if (const char* env = std::getenv("STP_TOL")) {
        try {
            tol.rel = std::stod(env);
        } catch (const std::exception&) {
            throw stp::parse_error("bad_env", std::string("STP_TOL is not a number: ") + env);
        }
    }
    if (o.tol) tol.rel = *o.tol;
    return tol;
}

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw stp::parse_error("io_error", "cannot write '" + o.out + "'");
    f << text;
}

void emit_json(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

bool looks_inline(const std::string& s)
{
    const auto pos = s.find_first_not_of(" \t\n");
    return pos != std::string::npos && (s[pos] == '[' || s[pos] == '{');
}

bool is_csv_path(const std::string& s)
{
    return s.size() >= 4 && s.compare(s.size() - 4, 4, ".csv") == 0;
}

json load_json(const std::string& arg)
{
    return stp::io::parse_json(looks_inline(arg) ? arg : stp::io::read_file(arg));
}

template <stp::Scalar T>
stp::Matrix<T> load_matrix(const std::string& arg)
{
    if (!looks_inline(arg) && is_csv_path(arg)) return stp::io::matrix_from_csv<T>(stp::io::read_file(arg));
    return stp::io::matrix_from_json<T>(load_json(arg));
}

void require_inputs(const Options& o, std::size_t n, const char* verb)
{
    if (o.inputs.size() != n) {
        throw stp::parse_error("usage", std::string(verb) + " expects " + std::to_string(n) + " input(s)");
    }
}

// In float mode a tolerance-dependent peel is reported rather than guessed.
template <stp::Scalar T>
stp::MatrixClass<T> canonical(const stp::Matrix<T>& a, const stp::Tolerance& tol)
{
    auto up = stp::canonicalize(a, tol, stp::PeelOrder::ascending);
    if constexpr (!stp::scalar_traits<T>::exact) {
        auto down = stp::canonicalize(a, tol, stp::PeelOrder::descending);
        if (!(up.rep() == down.rep())) {
            throw stp::domain_error("float_ambiguity", "canonical form depends on peel order at this tolerance");
        }
    }
    return up;
}

template <stp::Scalar T>
void emit_matrix(const Options& o, const stp::Matrix<T>& m)
{
    if (o.format == "csv") {
        emit(o, stp::io::matrix_to_csv(m));
    } else {
        emit_json(o, stp::io::matrix_to_json(m));
    }
}

template <stp::Scalar T>
void emit_class(const Options& o, const stp::MatrixClass<T>& x)
{
    if (o.format == "csv") {
        emit(o, stp::io::matrix_to_csv(x.rep()));
    } else {
        emit_json(o, stp::io::class_to_json(x));
    }
}

stp::MatrixClass<stp::Rational> exact_class(const Options& o, const std::string& arg)
{
    if (o.scalar == "rational") return stp::canonicalize(load_matrix<stp::Rational>(arg));
    const auto tol = tolerance_of(o);
    const auto approx = canonical(load_matrix<double>(arg), tol);
    return stp::canonicalize(stp::rationalize(approx.rep(), tol.rel));
}

template <stp::Scalar T>
int run_typed(const std::string& verb, const Options& o)
{
    const auto tol = tolerance_of(o);
    if (verb == "stp") {
        require_inputs(o, 2, "stp");
        const auto a = load_matrix<T>(o.inputs[0]);
        const auto b = load_matrix<T>(o.inputs[1]);
        if (o.right) {
            emit_matrix(o, stp::rtimes(a, b));
        } else {
            emit_matrix(o, o.kernel == "fast" ? stp::ltimes_fast(a, b) : stp::ltimes(a, b));
        }
    } else if (verb == "sta") {
        require_inputs(o, 2, "sta");
        const auto a = load_matrix<T>(o.inputs[0]);
        const auto b = load_matrix<T>(o.inputs[1]);
        if (o.right) {
            emit_matrix(o, o.subtract ? stp::rminus(a, b) : stp::rplus(a, b));
        } else {
            emit_matrix(o, o.subtract ? stp::lminus(a, b) : stp::lplus(a, b));
        }
    } else if (verb == "canon") {
        require_inputs(o, 1, "canon");
        emit_class(o, canonical(load_matrix<T>(o.inputs[0]), tol));
    } else if (verb == "equiv") {
        require_inputs(o, 2, "equiv");
        const auto x = canonical(load_matrix<T>(o.inputs[0]), tol);
        const auto y = canonical(load_matrix<T>(o.inputs[1]), tol);
        emit_json(o, {{"equivalent", stp::approx_equal(x, y, tol)}});
    } else if (verb == "bracket") {
        require_inputs(o, 2, "bracket");
        const auto x = canonical(load_matrix<T>(o.inputs[0]), tol);
        const auto y = canonical(load_matrix<T>(o.inputs[1]), tol);
        emit_class(o, stp::lie_bracket(x, y, tol));
    } else if (verb == "inner") {
        require_inputs(o, 2, "inner");
        const auto x = canonical(load_matrix<T>(o.inputs[0]), tol);
        const auto y = canonical(load_matrix<T>(o.inputs[1]), tol);
        emit_json(o, {{"inner", stp::io::scalar_to_json(stp::inner(x, y))}});
    } else if (verb == "dist") {
        require_inputs(o, 2, "dist");
        const auto x = canonical(load_matrix<T>(o.inputs[0]), tol);
        const auto y = canonical(load_matrix<T>(o.inputs[1]), tol);
        const T sq = stp::dist_squared(x, y, tol);
        emit_json(o, {{"dist", std::sqrt(stp::scalar_traits<T>::to_double(sq))},
                      {"dist_squared", stp::io::scalar_to_json(sq)}});
    } else if (verb == "bench") {
        stp::BenchConfig cfg;
        cfg.repetitions = o.reps;
        cfg.seed = o.seed;
        std::istringstream groups(o.sizes);
        std::string group;
        while (std::getline(groups, group, ';')) {
            std::istringstream dims(group);
            std::string d;
            std::vector<std::size_t> v;
            while (std::getline(dims, d, ',')) {
                try {
                    v.push_back(std::stoul(d));
                } catch (const std::exception&) {
                    throw stp::parse_error("usage", "bad --sizes entry '" + group + "'");
                }
            }
            if (v.size() != 4 || std::find(v.begin(), v.end(), 0u) != v.end()) {
                throw stp::parse_error("usage", "--sizes entries are m,n,p,q with positive values");
            }
            cfg.sizes.push_back({v[0], v[1], v[2], v[3]});
        }
        emit_json(o, {{"scalar", std::string(stp::scalar_traits<T>::name)},
                      {"repetitions", cfg.repetitions},
                      {"seed", cfg.seed},
                      {"results", stp::io::bench_to_json(stp::bench<T>(cfg))}});
    } else {
        throw stp::parse_error("usage", "unknown command '" + verb + "'");
    }
    return 0;
}

int run_exact_only(const std::string& verb, const Options& o)
{
    if (verb == "decompose") {
        require_inputs(o, 1, "decompose");
        emit_json(o, stp::io::coordinates_to_json(stp::decompose_class(exact_class(o, o.inputs[0]))));
    } else if (verb == "reconstruct") {
        require_inputs(o, 1, "reconstruct");
        emit_class(o, stp::reconstruct(stp::io::coordinates_from_json(load_json(o.inputs[0]))));
    } else if (verb == "basis-list") {
        const auto mu = stp::Ratio::parse(o.mu);
        json elems = json::array();
        for (const auto& e : stp::enumerate_basis(mu, o.imax)) elems.push_back(stp::io::basis_element_to_json(e));
        emit_json(o, {{"mu", stp::to_string(mu)}, {"i_max", o.imax}, {"elements", elems}});
    }
    return 0;
}

int run_cauchy(const Options& o)
{
    stp::CauchyConfig cfg{load_matrix<double>(o.a1), o.nmax};
    const auto seq = stp::cauchy_sequence(cfg);
    emit(o, stp::io::gap_reports_to_csv(stp::gap_reports(seq)));

    std::ostream& summary = o.out.empty() ? std::cerr : std::cout;
    for (int m = 1; static_cast<std::size_t>(m) + 2 <= seq.size(); ++m) {
        const auto probe = stp::nonconvergence_probe(seq, m);
        const double floor = stp::nonconvergence_floor(m);
        bool above = true;
        bool nondecreasing = true;
        for (std::size_t k = 0; k < probe.size(); ++k) {
            above = above && probe[k] > floor;
            if (k) nondecreasing = nondecreasing && probe[k] >= probe[k - 1];
        }
        summary << std::setprecision(12) << "probe m=" << m << " n=" << m + 2 << ".." << seq.size()
                << " floor=" << floor << " min=" << *std::min_element(probe.begin(), probe.end())
                << " above_floor=" << (above ? "true" : "false")
                << " nondecreasing=" << (nondecreasing ? "true" : "false") << "\n";
    }
    return 0;
}

int fail(int status, const std::string& code, const std::string& message)
{
    std::cerr << json{{"error", code}, {"message", message}}.dump() << "\n";
    return status;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Semi-tensor product algebra on identity-equivalence quotient spaces"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool with_inputs) {
        sub->add_option("--scalar", o.scalar, "Scalar kind")->check(CLI::IsMember({"rational", "float64"}));
        sub->add_option("--tol", o.tol, "Relative tolerance for float64 comparisons");
        sub->add_option("--out", o.out, "Output path (default: stdout)");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        if (with_inputs) {
            sub->add_option("first", o.first, "Matrix file (.json/.csv) or inline JSON literal");
            sub->add_option("second", o.second, "Second operand, same forms");
        }
    };

    auto* stp_cmd = app.add_subcommand("stp", "Left (or right) semi-tensor product");
    common(stp_cmd, true);
    stp_cmd->add_flag("--right", o.right, "Right STP");
    stp_cmd->add_option("--kernel", o.kernel, "Evaluation path")->check(CLI::IsMember({"naive", "fast"}));

    auto* sta_cmd = app.add_subcommand("sta", "Left (or right) semi-tensor addition/subtraction");
    common(sta_cmd, true);
    sta_cmd->add_flag("--right", o.right, "Right STA");
    sta_cmd->add_flag("--sub", o.subtract, "Subtract instead of add");

    common(app.add_subcommand("canon", "Canonical irreducible representative"), true);
    common(app.add_subcommand("equiv", "Identity-equivalence test"), true);
    common(app.add_subcommand("decompose", "Coordinates in the D/N basis"), true);
    common(app.add_subcommand("reconstruct", "Class from coordinates"), true);
    common(app.add_subcommand("bracket", "Lie bracket on square classes"), true);
    common(app.add_subcommand("inner", "Quotient inner product"), true);
    common(app.add_subcommand("dist", "Quotient distance"), true);

    auto* cauchy_cmd = app.add_subcommand("cauchy", "Cauchy-sequence gap experiment (float64)");
    common(cauchy_cmd, false);
    cauchy_cmd->add_option("--a1", o.a1, "First term (literal or file), all entries nonzero");
    cauchy_cmd->add_option("--nmax", o.nmax, "Number of terms (1..9)");

    auto* bench_cmd = app.add_subcommand("bench", "Naive vs fast STP benchmark");
    common(bench_cmd, false);
    bench_cmd->add_option("--sizes", o.sizes, "Shape list m,n,p,q;m,n,p,q;...");
    bench_cmd->add_option("--reps", o.reps, "Timed repetitions per size (>= 3)");
    bench_cmd->add_option("--seed", o.seed, "Input seed");

    auto* basis_cmd = app.add_subcommand("basis-list", "Enumerate the truncated basis");
    common(basis_cmd, false);
    basis_cmd->add_option("--mu", o.mu, "Ratio p/q");
    basis_cmd->add_option("--imax", o.imax, "Largest i index")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, "usage", e.what());
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    for (const auto& in : {o.first, o.second}) {
        if (in) o.inputs.push_back(*in);
    }
    try {
        if (verb == "cauchy") return run_cauchy(o);
        if (verb == "decompose" || verb == "reconstruct" || verb == "basis-list") return run_exact_only(verb, o);
        return o.scalar == "float64" ? run_typed<double>(verb, o) : run_typed<stp::Rational>(verb, o);
    } catch (const stp::parse_error& e) {
        return fail(2, e.code(), e.what());
    } catch (const stp::domain_error& e) {
        return fail(1, e.code(), e.what());
    } catch (const json::exception& e) {
        return fail(2, "bad_json", e.what());
    }
}
