#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pforms/suite.hpp"

using namespace pforms;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw ConfigError("cannot write '" + out + "'");
    f << text;
}

int cmd_verify(const SuiteConfig& sc, const std::string& out_path) {
    VerificationReport report = run_suite(sc);
    write_output(out_path, emit_report(report, sc.format));
    return report_ok(report) ? 0 : 1;
}

int cmd_models() {
    std::cout << "maxwell       p-form potential, L = -1/2 dA ^ *dA          (any n, 0 <= p <= n-1)\n"
              << "coframe-gr    quadratic coframe gravity on the 4d chart    (n=4, Lorentz)\n"
              << "premetric-ed  linear-response electrodynamics, L = -1/2 F ^ kappa(F)  (n=4)\n";
    return 0;
}

int cmd_decompose_chi(const std::string& path) {
    // 36 whitespace-separated rationals, row-major over the pair order
    // 01, 02, 03, 23, 31, 12.
    std::istringstream in(read_file(path));
    std::array<std::array<mpq_class, 6>, 6> blk;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            std::string cell;
            if (!(in >> cell)) throw ConfigError("chi file needs 36 rational entries");
            blk[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mpq_class(cell);
        }
    ConstitutiveTensor chi = ConstitutiveTensor::from_block(blk);
    ChiDecomposition d = chi_decompose(chi);
    auto print_block = [](const char* tag, const ConstitutiveTensor& t) {
        std::cout << tag << "\n";
        auto b = t.block();
        for (int i = 0; i < 6; ++i) {
            std::cout << "  ";
            for (int j = 0; j < 6; ++j)
                std::cout << b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get_str()
                          << (j == 5 ? "\n" : " ");
        }
    };
    print_block("principal (1):", d.principal);
    print_block("skewon (2):", d.skewon);
    print_block("axion (3):", d.axion);
    auto ranks = chi_projector_ranks();
    std::cout << "projector ranks: principal=" << ranks[0] << " skewon=" << ranks[1]
              << " axion=" << ranks[2] << "\n";
    bool sums = (d.principal + d.skewon + d.axion) == chi;
    std::cout << "pieces sum to input: " << (sums ? "yes" : "NO") << "\n";
    return sums ? 0 : 1;
}

int cmd_parse(const std::string& path, int n, int p, const std::string& field) {
    FieldDecls decls = {FieldDecl{field, FieldDecl::Kind::Matter, p, Parity::Even},
                        FieldDecl{"theta", FieldDecl::Kind::Coframe, 1, Parity::Even}};
    std::string text = read_file(path);
    ExprPtr ast = parse_lagrangian(text, decls);
    TypeInfo info = typecheck(ast, decls, n);
    std::cout << "ast: " << ast_to_string(ast) << "\n";
    std::cout << "degree: " << info.degree << "\n";
    std::cout << "parity: " << to_string(info.parity) << "\n";
    std::cout << "viable: " << (info.viable ? "VIABLE" : "NONVIABLE") << "\n";
    for (const auto& w : info.warnings) std::cout << "warning: " << w << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pforms: exact exterior-calculus verification engine"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string config_path, out_path = "-";
    std::string model, format;
    int n = -1, p = -1, cases = -1, jobs = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<std::string> modes;
    verify->add_option("--config", config_path, "JSON config file");
    verify->add_option("--model", model, "model name (maxwell | coframe-gr | premetric-ed)");
    verify->add_option("--n", n, "chart dimension");
    verify->add_option("--p", p, "matter field degree");
    verify->add_option("--seed", seed, "suite seed")->each([&](const std::string&) { seed_set = true; });
    verify->add_option("--cases", cases, "number of generated cases");
    verify->add_option("--mode", modes, "mode(s): pure, fixed-background, dynamical");
    verify->add_option("--format", format, "report format: json | text");
    verify->add_option("--out", out_path, "output path ('-' for stdout)");
    verify->add_option("--jobs", jobs, "parallel case workers");

    // models
    auto* models_cmd = app.add_subcommand("models", "list built-in models");

    // decompose-chi
    auto* dchi = app.add_subcommand("decompose-chi", "decompose a 6x6 constitutive block");
    std::string chi_path;
    dchi->add_option("file", chi_path, "file with 36 rational entries")->required();

    // parse
    auto* parse = app.add_subcommand("parse", "parse and typecheck a Lagrangian file");
    std::string lagr_path, field_name = "A";
    int parse_n = 4, parse_p = 1;
    parse->add_option("file", lagr_path, "Lagrangian DSL file")->required();
    parse->add_option("--n", parse_n, "chart dimension");
    parse->add_option("--p", parse_p, "matter field degree");
    parse->add_option("--field", field_name, "matter field name");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            SuiteConfig sc;
            if (!config_path.empty()) sc = suite_config_from_json(read_file(config_path));
            if (!model.empty()) sc.model = model;
            if (n >= 0) sc.n = n;
            if (p >= 0) sc.p = p;
            if (seed_set) sc.seed = seed;
            if (cases >= 0) sc.cases = cases;
            if (jobs >= 0) sc.jobs = jobs;
            if (!format.empty()) sc.format = format;
            if (!modes.empty()) {
                sc.modes.clear();
                for (const auto& m : modes) sc.modes.push_back(mode_from_string(m));
            }
            return cmd_verify(sc, out_path);
        }
        if (models_cmd->parsed()) return cmd_models();
        if (dchi->parsed()) return cmd_decompose_chi(chi_path);
        if (parse->parsed()) return cmd_parse(lagr_path, parse_n, parse_p, field_name);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
