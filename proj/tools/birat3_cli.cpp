#include "birat3/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>

int main(int argc, char** argv) {
    CLI::App app{"birat3: weighted blow-ups, depth and links of terminal threefold points"};
    std::string job_path = "-";
    std::optional<std::int64_t> budget;
    std::optional<std::string> format;
    unsigned threads = 1;
    app.add_option("job", job_path, "job document (JSON), - for stdin");
    app.add_option("--budget", budget, "search budget in expanded nodes (overrides BIRAT3_BUDGET)");
    app.add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    app.add_option("--threads", threads, "worker threads for the depth search")->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::string text;
    if (job_path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(job_path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot read " << job_path << "\n";
            return 2;
        }
        text.assign(std::istreambuf_iterator<char>(in), {});
    }

    birat3::RunSettings s;
    s.budget_flag = budget;
    s.format_flag = format;
    s.threads = threads;
    if (const char* env = std::getenv("BIRAT3_BUDGET")) s.budget_env = std::string(env);

    birat3::RunOutput out = birat3::run_text(text, s);
    std::cout << out.text;
    return out.exit_code;
}
