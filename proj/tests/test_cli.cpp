#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pptrans/io.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

// Runs the installed binary named by PPTRANS_CLI with shell-ready arguments,
// capturing both streams and the exit status.
CliResult run_cli(const std::string& args) {
    const char* cli = std::getenv("PPTRANS_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "PPTRANS_CLI must point at the built binary (ctest sets it)");
    static int counter = 0;
    const std::string tag = std::to_string(++counter);
    const std::string out_path = "cli_capture_" + tag + ".out";
    const std::string err_path = "cli_capture_" + tag + ".err";
    const std::string command = '"' + std::string(cli) + "\" " + args + " > " + out_path + " 2> " + err_path;
    const int raw = std::system(command.c_str());
    CliResult result;
    result.exit_code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::ofstream out(name, std::ios::binary);
    out << content;
    return name;
}

std::vector<double> values_of(const std::string& json_text) {
    return pptrans::parse_distribution_document(json_text).values;
}

bool near_vec(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

}  // namespace

TEST_CASE("cli transform reproduces the binary worked example") {
    const auto file = write_temp("cli_binary.json", "[0.501, 0.499]");
    const auto sym = run_cli("transform " + file + " --method symmetric");
    CHECK(sym.exit_code == 0);
    CHECK(near_vec(values_of(sym.out), {1.0, 0.998}, 1e-12));

    const auto opt = run_cli("transform " + file + " --method optimal");
    CHECK(opt.exit_code == 0);
    CHECK(near_vec(values_of(opt.out), {1.0, 0.499}, 1e-12));

    // the result document declares its kind and re-parses as an input
    const auto doc = pptrans::parse_distribution_document(sym.out);
    REQUIRE(doc.declared_kind.has_value());
    CHECK(*doc.declared_kind == pptrans::DistributionKind::possibility);
    std::remove(file.c_str());
}

TEST_CASE("cli accepts line-format input and singleton arrays") {
    const auto lines = write_temp("cli_lines.txt", "# three outcomes\n0.6\n0.3\n0.1\n");
    const auto res = run_cli("transform " + lines + " --method generalized --n 2");
    CHECK(res.exit_code == 0);
    CHECK(near_vec(values_of(res.out), {1.0, 0.55, 0.15}, 1e-12));
    std::remove(lines.c_str());

    const auto single = write_temp("cli_single.json", "[1.0]");
    const auto opt = run_cli("transform " + single + " --method optimal");
    CHECK(opt.exit_code == 0);
    CHECK(values_of(opt.out) == std::vector<double>{1.0});
    std::remove(single.c_str());
}

TEST_CASE("cli weak-order uses the canonical tie-breaking order") {
    const auto file = write_temp("cli_weak.json", "[0.5, 0.5]");
    const auto res = run_cli("transform " + file + " --method weak-order");
    CHECK(res.exit_code == 0);
    CHECK(near_vec(values_of(res.out), {1.0, 0.5}, 1e-15));
    std::remove(file.c_str());
}

TEST_CASE("cli invert closed forms match the references") {
    const auto file = write_temp("cli_inv1.json", "[1, 0.499]");
    const auto res = run_cli("invert " + file + " --method optimal");
    CHECK(res.exit_code == 0);
    CHECK(near_vec(values_of(res.out), {0.501, 0.499}, 1e-12));
    const auto doc = pptrans::parse_distribution_document(res.out);
    REQUIRE(doc.declared_kind.has_value());
    CHECK(*doc.declared_kind == pptrans::DistributionKind::probability);
    std::remove(file.c_str());

    const auto ties = write_temp("cli_inv2.json", "[1, 1]");
    const auto tied = run_cli("invert " + ties + " --method optimal");
    CHECK(tied.exit_code == 0);
    CHECK(near_vec(values_of(tied.out), {0.5, 0.5}, 1e-15));
    std::remove(ties.c_str());
}

TEST_CASE("cli round-trips a distribution through files end to end") {
    const auto input = write_temp("cli_rt_p.json", "[0.6, 0.3, 0.1]");
    const auto fwd = run_cli("transform " + input + " --method generalized --n 2 --output cli_rt_pi.json");
    REQUIRE(fwd.exit_code == 0);
    const auto back = run_cli("invert cli_rt_pi.json --method generalized --n 2");
    CHECK(back.exit_code == 0);
    CHECK(near_vec(values_of(back.out), {0.6, 0.3, 0.1}, 1e-8));

    const auto report = nlohmann::json::parse(back.out);
    CHECK(report["converged"].get<bool>());
    CHECK(report["iterations"].get<int>() <= 200);
    CHECK(report["final_residual"].get<double>() <= 1e-10);
    std::remove(input.c_str());
    std::remove("cli_rt_pi.json");
}

TEST_CASE("cli specificity emits the scalar") {
    const auto file = write_temp("cli_spec.json", "[0.6, 0.3, 0.1]");
    const auto sym = run_cli("specificity " + file + " --method symmetric");
    CHECK(sym.exit_code == 0);
    CHECK(nlohmann::json::parse(sym.out)["specificity"].get<double>() == doctest::Approx(0.75));

    const auto opt = run_cli("specificity " + file + " --method optimal");
    CHECK(nlohmann::json::parse(opt.out)["specificity"].get<double>() == doctest::Approx(1.0));

    const auto gen = run_cli("specificity " + file + " --method generalized --n 2");
    CHECK(nlohmann::json::parse(gen.out)["specificity"].get<double>() == doctest::Approx(1.5 / 1.7));
    std::remove(file.c_str());
}

TEST_CASE("cli experiment prints a deterministic csv report") {
    const std::string flags = "experiment --outcomes 20 --samples 500 --trials 2 --n-list 1,5 --seed 3";
    const auto a = run_cli(flags);
    const auto b = run_cli(flags);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("# pptrans experiment") == 0);
    CHECK(a.out.find("n,mean_specificity,sd_specificity\n") != std::string::npos);
    CHECK(a.out.find("\n1,") != std::string::npos);
    CHECK(a.out.find("\n5,") != std::string::npos);

    const auto single = run_cli("experiment --outcomes 20 --samples 500 --trials 1 --n-list 2 --seed 5");
    CHECK(single.exit_code == 0);
    CHECK(single.out.find(",0\n") != std::string::npos);  // single trial: zero deviation

    const auto unseeded = run_cli("experiment --outcomes 20 --samples 500 --trials 1");
    CHECK(unseeded.exit_code == 2);  // seeds are mandatory
}

TEST_CASE("cli figure commands emit plot-ready tables") {
    const auto sym = run_cli("figure binary-curve --method symmetric --grid-points 3");
    CHECK(sym.exit_code == 0);
    CHECK(sym.out.find("p,pi\n") != std::string::npos);
    CHECK(sym.out.find("0.25,0.5\n") != std::string::npos);

    const auto gen = run_cli("figure binary-curve --grid-points 3");
    CHECK(gen.exit_code == 0);
    CHECK(gen.out.find("p,pi_n1,pi_n2,pi_n4,pi_n10,pi_n100\n") != std::string::npos);

    const auto tern = run_cli("figure ternary-map --n inf --step 0.5");
    CHECK(tern.exit_code == 0);
    CHECK(tern.out.find("p1,p2,pi_w3\n") != std::string::npos);
    CHECK(tern.out.find("0.5,0,1\n") != std::string::npos);
    CHECK(tern.out.find("1,0.5") == std::string::npos);  // outside the simplex
}

TEST_CASE("cli exit codes separate parse, domain and convergence failures") {
    const auto missing = run_cli("transform no_such_file.json --method symmetric");
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("error:") != std::string::npos);

    const auto junk = write_temp("cli_junk.txt", "hello world\n");
    CHECK(run_cli("transform " + junk + " --method symmetric").exit_code == 2);
    std::remove(junk.c_str());

    const auto lowsum = write_temp("cli_lowsum.json", "[0.6, 0.3]");
    CHECK(run_cli("transform " + lowsum + " --method symmetric").exit_code == 3);
    std::remove(lowsum.c_str());

    const auto good = write_temp("cli_good.json", "[0.6, 0.4]");
    CHECK(run_cli("transform " + good + " --method generalized --n 0").exit_code == 3);
    CHECK(run_cli("transform " + good + " --method generalized --n banana").exit_code == 2);
    CHECK(run_cli("transform " + good + " --method generalized").exit_code == 2);
    CHECK(run_cli("transform " + good + " --method symmetric --n 2").exit_code == 2);
    std::remove(good.c_str());

    const auto pi_file = write_temp("cli_pi.json", "[1, 0.55, 0.15]");
    const auto starved = run_cli("invert " + pi_file + " --method generalized --n 2 --max-iter 1 --tol 1e-15");
    CHECK(starved.exit_code == 4);
    CHECK_FALSE(nlohmann::json::parse(starved.out)["converged"].get<bool>());
    CHECK(starved.err.find("residual") != std::string::npos);
    std::remove(pi_file.c_str());
}

TEST_CASE("cli kind resolution prefers flags over detection") {
    const auto declared = write_temp("cli_kind.json", R"({"kind":"possibility","values":[0.5,0.5]})");
    CHECK(run_cli("transform " + declared + " --method symmetric").exit_code == 3);
    CHECK(run_cli("transform " + declared + " --method symmetric --kind probability").exit_code == 0);
    std::remove(declared.c_str());

    const auto plain = write_temp("cli_plain.json", "[1, 0.5]");
    // detected possibility cannot feed a probability command
    CHECK(run_cli("transform " + plain + " --method symmetric").exit_code == 3);
    CHECK(run_cli("invert " + plain + " --method symmetric").exit_code == 0);
    std::remove(plain.c_str());
}

TEST_CASE("cli renormalize flag widens the accepted sum window") {
    const auto file = write_temp("cli_renorm.json", "[0.5, 0.4995]");
    CHECK(run_cli("transform " + file + " --method symmetric").exit_code == 3);
    const auto ok = run_cli("transform " + file + " --method symmetric --renormalize");
    CHECK(ok.exit_code == 0);
    const auto values = values_of(ok.out);
    CHECK(values[0] == doctest::Approx(1.0));
    std::remove(file.c_str());
}
