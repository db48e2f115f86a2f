#include <fockops/commands.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace fockops;
using cli::Request;

namespace {

// Raw flag strings; converted after parsing so errors can name the field.
struct RawFlags {
    std::string u_poly, u_expo, a, b, f_poly, f_expo, p, q;
    std::string sizes, p_values, q_values;
};

void add_format(CLI::App* sub, Request& r)
{
    sub->add_option("--format", r.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", r.out, "write output to PATH instead of stdout");
}

void add_spec(CLI::App* sub, Request& r, RawFlags& raw)
{
    sub->add_option("--spec", r.spec_file, "JSON spec file {u, psi: {a, b}, n}");
    sub->add_option("--u-poly", raw.u_poly, "polynomial part of u, ascending: c0,c1,... (complex as re:im)");
    sub->add_option("--u-expo", raw.u_expo, "exponent a0,a1,a2 of u (complex as re:im)");
    sub->add_option("--a", raw.a, "psi slope, 're' or 're,im'");
    sub->add_option("--b", raw.b, "psi offset, 're' or 're,im'");
    sub->add_option("--n", r.n, "derivative order");
}

void add_exponents(CLI::App* sub, Request& r, RawFlags& raw)
{
    sub->add_option("--p", raw.p, "source exponent (number or inf)");
    sub->add_option("--q", raw.q, "target exponent (number or inf)");
    sub->add_option("--m", r.m, "growth exponent of the Fock-type weight");
    sub->add_option("--space", r.space, "focktype or classical")->check(CLI::IsMember({"focktype", "classical"}));
}

std::vector<int> int_list(const std::string& s, const char* field)
{
    std::vector<int> out;
    if (s.empty())
        return out;
    for (const auto& item : cli::split(s, ',')) {
        const double v = cli::parse_number(item, field);
        if (v != std::floor(v) || v < 1 || v > 512)
            throw std::invalid_argument(std::string("flag '") + field + "': expected integers in [1, 512]");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::vector<double> real_list(const std::string& s, const char* field)
{
    std::vector<double> out;
    if (s.empty())
        return out;
    for (const auto& item : cli::split(s, ','))
        out.push_back(cli::parse_number(item, field));
    return out;
}

void resolve(Request& r, const RawFlags& raw, CLI::App& app)
{
    if (!raw.u_poly.empty())
        r.u_poly = cli::parse_coeff_flag(raw.u_poly, "u-poly");
    if (!raw.u_expo.empty())
        r.u_expo = cli::parse_coeff_flag(raw.u_expo, "u-expo");
    if (!raw.f_poly.empty())
        r.f_poly = cli::parse_coeff_flag(raw.f_poly, "f-poly");
    if (!raw.f_expo.empty())
        r.f_expo = cli::parse_coeff_flag(raw.f_expo, "f-expo");
    if (!raw.a.empty())
        r.a = cli::parse_complex_flag(raw.a, "a");
    if (!raw.b.empty())
        r.b = cli::parse_complex_flag(raw.b, "b");
    if (!raw.p.empty())
        r.p = cli::parse_number(raw.p, "p");
    if (!raw.q.empty())
        r.q = cli::parse_number(raw.q, "q");
    if (app.got_subcommand("probe") && !raw.sizes.empty())
        r.sizes = int_list(raw.sizes, "sizes");
    if (app.got_subcommand("sweep")) {
        if (app.get_subcommand("sweep")->count("--p-values"))
            r.p_values = real_list(raw.p_values, "p-values");
        if (app.get_subcommand("sweep")->count("--q-values"))
            r.q_values = real_list(raw.q_values, "q-values");
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Operator classification and numerics on Fock and Fock-type spaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cli::kVersion);
    Request r;
    RawFlags raw;

    auto* classify = app.add_subcommand("classify", "classify D on F_(m,p) or D_(u,psi,n) on F_p");
    add_format(classify, r);
    add_spec(classify, r, raw);
    add_exponents(classify, r, raw);

    auto* norm = app.add_subcommand("norm", "norm of an exp-poly function");
    add_format(norm, r);
    norm->add_option("--f-poly", raw.f_poly, "polynomial part of f, ascending (complex as re:im)");
    norm->add_option("--f-expo", raw.f_expo, "exponent a0,a1,a2 of f (complex as re:im)");
    norm->add_option("--p", raw.p, "exponent (number or inf)");
    norm->add_option("--m", r.m, "growth exponent (focktype, paley)");
    norm->add_option("--space", r.space, "focktype or classical")->check(CLI::IsMember({"focktype", "classical"}));
    norm->add_option("--kind", r.norm_kind, "fock, paley or derivative")
        ->check(CLI::IsMember({"fock", "paley", "derivative"}));
    norm->add_option("--n", r.n, "derivative order for --kind derivative");
    norm->add_flag("--oracle", r.with_oracle, "also run the brute-force oracle");

    auto* matrix = app.add_subcommand("matrix", "finite section in the F_2 monomial basis");
    add_format(matrix, r);
    add_spec(matrix, r, raw);
    matrix->add_option("--N", r.N, "number of columns (1..512)");
    matrix->add_option("--offset", r.offset, "lowest column degree");
    matrix->add_option("--buffer", r.buffer, "extra rows below the section");
    matrix->add_option("--block", r.block, "square or tall")->check(CLI::IsMember({"square", "tall"}));

    auto* probe = app.add_subcommand("probe", "sigma_min, power-norm and sampling probes");
    add_format(probe, r);
    add_spec(probe, r, raw);
    probe->add_option("--sizes", raw.sizes, "section sizes, comma separated");
    probe->add_option("--offset", r.offset, "lowest column degree");
    probe->add_option("--buffer", r.buffer, "extra rows below the section");
    probe->add_option("--powers", r.powers, "largest power m for ||T^m||^(1/m)");
    probe->add_option("--epsilon", r.epsilon, "run the sampling probe on G^epsilon");
    probe->add_option("--k", r.k, "derivative order of the sampling probe");
    probe->add_option("--p", raw.p, "exponent of the sampling probe");

    auto* sweep = app.add_subcommand("sweep", "ratio or boundary sweeps as CSV/JSON");
    add_format(sweep, r);
    sweep->add_option("--mode", r.mode, "ratio or boundary")->check(CLI::IsMember({"ratio", "boundary"}));
    sweep->add_option("--m", r.m, "growth exponent (ratio mode)");
    sweep->add_option("--p", raw.p, "source exponent (ratio mode)");
    sweep->add_option("--q", raw.q, "target exponent (ratio mode)");
    sweep->add_option("--k-max", r.k_max, "largest k (0 gives an empty table)");
    sweep->add_option("--m-from", r.m_from, "first m (boundary mode)");
    sweep->add_option("--m-to", r.m_to, "last m (boundary mode)");
    sweep->add_option("--m-steps", r.m_steps, "number of m values (0 gives an empty table)");
    sweep->add_option("--p-values", raw.p_values, "comma separated p values (boundary mode)");
    sweep->add_option("--q-values", raw.q_values, "comma separated q values (boundary mode)");

    auto* verify = app.add_subcommand("verify", "oracle-versus-module suite");
    add_format(verify, r);
    verify->add_option("--only", r.only, "restrict to one category")
        ->check(CLI::IsMember(cli::verify_categories()));
    verify->add_option("--inject-fault", r.inject_fault, "test mode: perturb the module side")
        ->check(CLI::IsMember(cli::verify_faults()));
    verify->add_option("--corpus-size", r.corpus_size, "number of corpus functions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kError;
    }
    r.command = app.get_subcommands().front()->get_name();

    try {
        resolve(r, raw, app);
        const auto outcome = cli::dispatch(r);
        if (r.out.empty()) {
            std::cout << outcome.text;
        } else {
            std::ofstream f(r.out, std::ios::binary);
            if (!f)
                throw std::invalid_argument("cannot write '" + r.out + "'");
            f << outcome.text;
        }
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kError;
    }
}
