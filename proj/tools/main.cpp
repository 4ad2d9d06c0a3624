#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lhl/commands.hpp"
#include "lhl/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Local hard Lefschetz and Hodge-Riemann checks for Bott-Samelson bimodules"};
    app.require_subcommand(1);

    lhl::RunConfig cfg;
    std::string coweight, out;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--type", cfg.type, "Cartan type, e.g. A2, A3, D4");
        sub->add_option("--coweight", coweight, "comma-separated values of the coweight on simple roots");
        sub->add_flag("--allow-nondominant", cfg.allow_nondominant, "accept a non-dominant coweight");
        sub->add_option("--format", cfg.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
        sub->add_option("--out", out, "write the report here instead of stdout");
    };

    auto* em = app.add_subcommand("em-table", "equivariant multiplicities and the positivity scan");
    common(em);
    em->add_option("--max-length", cfg.max_length, "only y with l(y) <= this");

    auto* local = app.add_subcommand("local-form", "stalk, local intersection form and HL/HR at one point");
    common(local);
    local->add_option("--word", cfg.word, "Bott-Samelson word, e.g. tsut")->required();
    local->add_option("--x", cfg.x, "point of W (default id)");

    auto* verify = app.add_subcommand("verify-hodge", "sweep reduced words, points and P1-sheaves");
    common(verify);
    verify->add_option("--max-length", cfg.max_length, "longest word to sweep");

    auto* p1 = app.add_subcommand("p1", "the P1-sheaf M(B(word), x, xs) on the ample cone");
    common(p1);
    p1->add_option("--word", cfg.word, "Bott-Samelson word")->required();
    p1->add_option("--x", cfg.x, "point of W with x < xs (default id)");
    p1->add_option("--s", cfg.s, "simple reflection letter")->required();
    p1->add_option("--gamma", cfg.gamma, "also check gamma = (cz, z) at this c");

    auto* jantzen = app.add_subcommand("jantzen", "Shapovalov form and Jantzen layers for sl_n");
    common(jantzen);
    jantzen->add_option("--w", cfg.w, "highest weight w.0 (default su)");
    jantzen->add_option("--nu", cfg.nu, "weight drop in simple roots (default 2,3,2)");
    jantzen->add_option("--gamma", cfg.gamma, "rho or comma-separated values on simple coroots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    lhl::CommandResult result;
    try {
        if (!coweight.empty()) cfg.coweight = lhl::parse_rational_list(coweight);
        result = lhl::run_command(app.get_subcommands().front()->get_name(), cfg);
    } catch (const lhl::Error& e) {
        const std::string message = std::string(e.what()).substr(e.kind().size() + 2);
        result.report = {{"schema", "v1"}, {"error", {{"kind", e.kind()}, {"message", message}}}};
        result.exit_code = 2;
    }
    if (result.exit_code == 2 && result.report.contains("error"))
        std::cerr << result.report["error"]["kind"].get<std::string>() << ": "
                  << result.report["error"]["message"].get<std::string>() << "\n";

    const std::string text = lhl::render(result.report, cfg.format);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "cannot write " << out << "\n";
            return 2;
        }
        f << text;
    }
    return result.exit_code;
}
