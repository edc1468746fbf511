#include "pjcalc/frontend.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pj::error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_file(const std::string& path, bool check_mode) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const pj::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    pj::frontend::RunResult r = pj::frontend::run_program(text, check_mode);
    std::cout << r.output;
    return r.exit_code;
}

int repl() {
    pj::frontend::Session session;
    std::string line;
    std::cout << "pjcalc> " << std::flush;
    while (std::getline(std::cin, line)) {
        try {
            pj::frontend::Program prog = pj::frontend::parse_program(line);
            for (const auto& st : prog.statements) {
                pj::frontend::StatementResult r = session.execute(st);
                if (!r.output.empty()) std::cout << r.output << "\n";
            }
        } catch (const pj::error& e) {
            std::cout << "error: " << e.what() << "\n";
        }
        std::cout << "pjcalc> " << std::flush;
    }
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus for homogeneous tensors and their reductions"};
    app.require_subcommand(1);

    std::string run_path, check_path;
    CLI::App* cmd_run = app.add_subcommand("run", "execute a script, print results");
    cmd_run->add_option("file", run_path, "script file")->required();
    CLI::App* cmd_check = app.add_subcommand("check", "execute a script, aggregate check results");
    cmd_check->add_option("file", check_path, "script file")->required();
    CLI::App* cmd_repl = app.add_subcommand("repl", "interactive session");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (cmd_run->parsed()) return run_file(run_path, false);
    if (cmd_check->parsed()) return run_file(check_path, true);
    if (cmd_repl->parsed()) return repl();
    return 2;
}
