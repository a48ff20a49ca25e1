#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "coringlab/io.hpp"

using namespace coringlab;

namespace {

gf::u32 default_prime() {
    if (const char* env = std::getenv("CORINGLAB_PRIME")) {
        const long p = std::atol(env);
        gf::require_prime(static_cast<gf::u32>(p));
        return static_cast<gf::u32>(p);
    }
    return 2;
}

inst::Instance load_with_level(const std::string& path, int level) {
    inst::Instance in = io::load_file(path);
    if (level > 0) in = io::truncate_levels(in, level);
    return in;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coringlab: exact verification of comatrix coring constructions over F_p"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "materialize a built-in instance");
    std::string gen_name;
    std::vector<int> gen_params;
    std::string out_path;
    gf::u32 prime = 0;
    int cap = inst::kDefaultDimCap;
    gen->add_option("name", gen_name,
                    "sweedler | block | corner | lazy-corner | kgt-directsum")
        ->required();
    gen->add_option("params", gen_params, "integer parameters for the generator");
    gen->add_option("-o,--output", out_path, "output file (default: stdout)");
    gen->add_option("--prime", prime, "field characteristic (default: CORINGLAB_PRIME or 2)");
    gen->add_option("--cap", cap, "dimension budget for the colimit carriers");

    // verify
    auto* ver = app.add_subcommand("verify", "run verification suites on an instance file");
    std::string ver_path;
    std::vector<std::string> suites;
    std::uint64_t seed = 1;
    int level = 0;
    ver->add_option("file", ver_path, "instance file")->required();
    ver->add_option("--suite", suites,
                    "systems | comatrix | coring | adjunction | descent | galois (repeatable)");
    ver->add_option("--seed", seed, "seed for the sampled test modules");
    ver->add_option("--level", level, "re-truncate a lazy instance to this many levels");

    // report
    auto* repc = app.add_subcommand("report", "run all suites and print a report");
    std::string rep_path, format = "text";
    std::uint64_t rep_seed = 1;
    int rep_level = 0;
    repc->add_option("file", rep_path, "instance file")->required();
    repc->add_option("--format", format, "text | machine")
        ->check(CLI::IsMember({"text", "machine"}));
    repc->add_option("--seed", rep_seed, "seed for the sampled test modules");
    repc->add_option("--level", rep_level, "re-truncate a lazy instance to this many levels");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const gf::u32 p = prime ? prime : default_prime();
            inst::Instance in = inst::generate(gen_name, gen_params, p, cap);
            // every generated instance must pass its own structural checks
            if (!check_system(in.sys.rings).pass() || !check_system(in.sys.modules).pass() ||
                !check_compat(in.sys).pass())
                throw Error(ErrorCode::Internal, "generated instance fails its own checks");
            if (out_path.empty())
                std::cout << io::serialize(in);
            else
                io::save_file(in, out_path);
            return 0;
        }
        if (*ver) {
            inst::Instance in = load_with_level(ver_path, level);
            std::set<std::string> chosen(suites.begin(), suites.end());
            if (chosen.empty()) chosen = io::kAllSuites;
            io::VerificationReport rep = io::verify(in, chosen, seed);
            std::cout << io::render_text(rep);
            return rep.pass() ? 0 : 1;
        }
        if (*repc) {
            inst::Instance in = load_with_level(rep_path, rep_level);
            io::VerificationReport rep = io::verify(in, io::kAllSuites, rep_seed);
            std::cout << (format == "machine" ? io::render_machine(rep) : io::render_text(rep));
            return rep.pass() ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
