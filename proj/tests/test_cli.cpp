// End-to-end checks of the bellalg CLI: exit-code contract, JSON output, and
// determinism under --seed. The binary path arrives as argv[1] from ctest.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

namespace {

std::string g_cli;
int g_failures = 0;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string &args) {
    std::string cmd = g_cli + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult res;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        std::cerr << "popen failed for: " << cmd << "\n";
        std::exit(2);
    }
    while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

void expect_exit(const std::string &args, int want, const char *what) {
    RunResult res = run(args);
    if (res.exit_code != want) {
        ++g_failures;
        std::cerr << "[FAIL] " << what << ": `" << args << "` exited " << res.exit_code
                  << " (want " << want << ")\n"
                  << res.output << "\n";
    } else {
        std::cout << "[ok] " << what << "\n";
    }
}

void expect_contains(const std::string &args, const std::string &needle, const char *what) {
    RunResult res = run(args);
    if (res.output.find(needle) == std::string::npos) {
        ++g_failures;
        std::cerr << "[FAIL] " << what << ": output of `" << args << "` lacks \"" << needle
                  << "\"\n"
                  << res.output << "\n";
    } else {
        std::cout << "[ok] " << what << "\n";
    }
}

} // namespace

int main(int argc, char **argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-bellalg>\n";
        return 2;
    }
    g_cli = argv[1];

    // ybe: pass / fail / usage matrix.
    expect_exit("ybe --builtin bell+", 0, "ybe bell+ passes");
    expect_exit("ybe --builtin bell-", 0, "ybe bell- passes");
    expect_exit("ybe --builtin swap", 0, "ybe swap passes");
    expect_exit("ybe --builtin r_omega-1", 0, "ybe r_omega-1 passes");
    expect_exit("ybe --spectral --builtin bellx+", 0, "spectral ybe passes");
    expect_exit("ybe --builtin nonsense", 64, "unknown builtin is usage error");
    expect_exit("ybe", 64, "ybe without input is usage error");

    // A perturbed matrix file must fail with a witness.
    {
        nlohmann::json j;
        j["rows"] = 4;
        j["cols"] = 4;
        j["params"] = nlohmann::json::array();
        std::vector<std::string> entries(16, "0");
        // Bell+ with the (0,3) entry broken: sqrt2 instead of 1/2*sqrt2.
        const char *half = "1/2*sqrt2";
        entries[0] = half; entries[3] = "sqrt2"; entries[5] = half; entries[6] = half;
        entries[9] = "-1/2*sqrt2"; entries[10] = half; entries[12] = "-1/2*sqrt2"; entries[15] = half;
        j["entries"] = entries;
        std::ofstream("perturbed.json") << j.dump();
        expect_exit("ybe --matrix perturbed.json", 1, "perturbed matrix fails the YBE");
        expect_contains("--json ybe --matrix perturbed.json", "witness", "failure carries witness");
        expect_exit("ybe --matrix missing.json", 64, "missing file is usage error");
    }

    // frt.
    expect_exit("frt --builtin r_omega-1", 0, "frt derivation passes");
    expect_contains("frt --builtin r_omega-1", "E(1,0)", "frt labels source entries");
    expect_contains("frt --builtin identity", "\"count\": 0", "frt identity has no relations");
    expect_exit("frt --builtin bell+ --mixed", 0, "mixed frt derivation passes");

    // ideal: member, inconclusive, usage.
    expect_exit("ideal --target \"a*(a*c - q^-1*d*b)\" --relations A-1-six --bound 3", 0,
                "Eq17 target is a member");
    expect_exit("ideal --target \"0\" --relations A-1-six --bound 2", 0, "zero is a member");
    expect_exit("ideal --target \"a - d\" --relations A-1-six --bound 4", 2,
                "degree-1 target is inconclusive");
    expect_exit("ideal --target \"a*!\" --relations A-1-six --bound 3", 64,
                "unparseable target is usage error");
    expect_exit("ideal --target \"a*a*a\" --relations A-1-six --bound 2", 64,
                "bound below target degree is usage error");
    expect_contains("--json ideal --target \"a*(a*c - q^-1*d*b)\" --relations A-1-six --bound 3",
                    "\"certificate_verified\": true", "certificates are re-verified");

    // rep.
    expect_exit("rep --family fermion --params l1=1,l2=2 --analyze verify", 0,
                "fermion family verifies");
    expect_exit("rep --family pauli_scalar --params l=1,m=2 --analyze verify", 0,
                "compact parameter aliases work");
    expect_exit("rep --family distinct_eigen --params l1=1,l2=2,c2=1,c3=1,eps=3 --analyze verify",
                64, "constraint violation exits 64");
    expect_exit("rep --coproduct fermion:1,2 fermion:1,3 --analyze series", 0,
                "composition series");
    expect_contains("--json rep --coproduct fermion:1,2 fermion:1,3 --analyze series",
                    "alternatives", "series lists the alternative chain");
    expect_exit("rep --coproduct pauli_scalar:1,2 pauli_scalar:1,3 --analyze decompose", 0,
                "decompose");
    expect_contains("--json rep --coproduct pauli_scalar:1,2 pauli_scalar:1,3 --analyze decompose",
                    "\"verdict\": \"decomposable\"", "decompose reports summands");
    expect_exit("rep --coproduct fermion:1,2 fermion:1,3 --analyze ladder --ladder-kind phi --nmax 5",
                0, "phi ladder");
    expect_exit("rep --coproduct pauli_scalar:1,2 pauli_scalar:1,3 --analyze entangle", 0,
                "entanglement analysis");

    // decompose determinism under --seed.
    {
        std::string a =
            run("--json --seed 99 rep --coproduct pauli_scalar:1,2 pauli_scalar:1,3 --analyze decompose")
                .output;
        std::string b =
            run("--json --seed 99 rep --coproduct pauli_scalar:1,2 pauli_scalar:1,3 --analyze decompose")
                .output;
        if (a != b || a.empty()) {
            ++g_failures;
            std::cerr << "[FAIL] decompose output is not byte-identical across runs\n";
        } else {
            std::cout << "[ok] decompose is deterministic under --seed\n";
        }
    }

    // evolve.
    expect_exit("evolve --sign + --theta 0 --phi 0 --ket 00", 0, "evolve passes");
    expect_exit("evolve --theta 0.7853981633974483 --ket 01", 0, "evolve at theta=pi/4");
    expect_exit("evolve --ket 2", 64, "bad ket is usage error");
    expect_contains("--json evolve --sign - --theta 0.3 --phi 1.1 --ket 01",
                    "closed_form_residual", "evolve reports the closed-form residual");

    // bell-table.
    expect_exit("bell-table", 0, "bell-table");
    expect_contains("bell-table", "psi-", "bell-table lists signed states");

    std::remove("perturbed.json");
    if (g_failures) {
        std::cerr << g_failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
